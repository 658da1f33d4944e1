"""Exact bivariate polynomial rings.

Two coefficient domains:

  BivarPoly     -- Z[x, y] with arbitrary-precision integer coefficients
  ModBivarPoly  -- F_p[u, v] for a prime p (variable names configurable,
                   so the same type serves F_p[x,y], F_p[A,B] and F_p[T])

A polynomial is a sparse map from exponent pairs (e_x, e_y) to nonzero
coefficients.  All values are immutable after construction and every
operation returns a new canonical polynomial (no stored zero terms).

Printing and JSON use graded lexicographic order, x before y, descending:
higher total degree first, ties broken by higher x-exponent, e.g.
``-2*x^3 - x + y``.  The zero polynomial prints as ``0`` and reports
degree ``NEG_INF``.

Multiplication dispatches between a naive sparse product and Kronecker
substitution (terms packed into one big integer per operand so CPython's
subquadratic integer multiply does the work).  Iterated-map expansions
reach ~1e5 terms with 80-digit coefficients, where the packed path is
orders of magnitude faster.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Tuple

from .errors import NotPrimeError, RingMismatchError

try:  # GMP multiplication is ~50x faster than CPython's at 1e7 bits
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

ExponentPair = Tuple[int, int]

#: Degree reported for the zero polynomial ("a polynomial with negative
#: degree"): compares below every integer.
NEG_INF = float("-inf")

# Products with at most this many coefficient multiplications use the
# naive sparse path; bigger ones get packed.  Crossover measured on
# CPython 3.10 (see tests/test_exactpoly.py::test_mul_paths_agree).
_KRONECKER_CUTOFF = 20_000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sort_key(item):
    (ex, ey), _ = item
    return (-(ex + ey), -ex)


def _mul_naive(ta: Mapping[ExponentPair, int], tb: Mapping[ExponentPair, int]) -> dict:
    out: dict = {}
    get = out.get
    for (ax, ay), ca in ta.items():
        for (bx, by), cb in tb.items():
            key = (ax + bx, ay + by)
            v = get(key, 0) + ca * cb
            out[key] = v
    return {k: v for k, v in out.items() if v}


def _mul_kronecker(ta: Mapping[ExponentPair, int], tb: Mapping[ExponentPair, int]) -> dict:
    """Multiply sparse term maps via packing into big integers.

    Each monomial x^a y^b occupies slot a*W + b with W wide enough that
    y-exponents of the product never collide across x-slots.  Slots are
    byte-aligned signed digits large enough to hold any coefficient of
    the product, so one integer multiplication computes the whole
    convolution without carries between slots.
    """
    dxa = max(e[0] for e in ta)
    dya = max(e[1] for e in ta)
    dxb = max(e[0] for e in tb)
    dyb = max(e[1] for e in tb)
    width = dya + dyb + 1

    a_inf = max(abs(c) for c in ta.values())
    b_inf = max(abs(c) for c in tb.values())
    a_one = sum(abs(c) for c in ta.values())
    b_one = sum(abs(c) for c in tb.values())
    coeff_bound = min(a_one * b_inf, a_inf * b_one)
    bits = coeff_bound.bit_length() + 2
    nbytes = (bits + 7) // 8
    bits = nbytes * 8

    def pack(terms, nslots):
        pos = bytearray(nslots * nbytes)
        neg = bytearray(nslots * nbytes)
        for (ex, ey), c in terms.items():
            off = (ex * width + ey) * nbytes
            if c > 0:
                pos[off:off + nbytes] = c.to_bytes(nbytes, "little")
            else:
                neg[off:off + nbytes] = (-c).to_bytes(nbytes, "little")
        return _mpz(int.from_bytes(pos, "little")) - _mpz(int.from_bytes(neg, "little"))

    nslots_out = (dxa + dxb) * width + dya + dyb + 1
    prod = pack(ta, dxa * width + dya + 1) * pack(tb, dxb * width + dyb + 1)

    # Shift every signed digit into [0, 2^bits) so the byte dump splits
    # cleanly, then undo the shift per slot.
    half = 1 << (bits - 1)
    offset = _mpz(int.from_bytes(half.to_bytes(nbytes, "little") * nslots_out, "little"))
    raw = int(prod + offset).to_bytes(nslots_out * nbytes, "little")

    out = {}
    for s in range(nslots_out):
        c = int.from_bytes(raw[s * nbytes:(s + 1) * nbytes], "little") - half
        if c:
            out[divmod(s, width)] = c
    return out


class BivarPoly:
    """Polynomial in Z[x, y], sparse canonical representation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ExponentPair, int] | Iterable[tuple[ExponentPair, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        canon = {}
        for (ex, ey), c in items:
            if ex < 0 or ey < 0:
                raise ValueError(f"negative exponent in monomial ({ex}, {ey})")
            if c:
                key = (ex, ey)
                v = canon.get(key, 0) + c
                if v:
                    canon[key] = v
                elif key in canon:
                    del canon[key]
        self._terms = canon

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "BivarPoly":
        return cls({(0, 0): int(c)})

    @classmethod
    def monomial(cls, ex: int, ey: int, c: int = 1) -> "BivarPoly":
        return cls({(ex, ey): int(c)})

    # -- basic queries ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> dict:
        """Copy of the underlying exponent-pair -> coefficient map."""
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, ex: int, ey: int) -> int:
        return self._terms.get((ex, ey), 0)

    @property
    def deg_x(self):
        return max((e[0] for e in self._terms), default=NEG_INF)

    @property
    def deg_y(self):
        return max((e[1] for e in self._terms), default=NEG_INF)

    @property
    def total_degree(self):
        return max((e[0] + e[1] for e in self._terms), default=NEG_INF)

    def weighted_degree(self, w_x: int, w_y: int):
        return max((w_x * e[0] + w_y * e[1] for e in self._terms), default=NEG_INF)

    def sorted_terms(self):
        """Terms in graded-lex descending order (the canonical order)."""
        return sorted(self._terms.items(), key=_sort_key)

    # -- ring operations --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == BivarPoly.const(other)._terms
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "BivarPoly":
        out = BivarPoly()
        out._terms = {k: -v for k, v in self._terms.items()}
        return out

    def __add__(self, other) -> "BivarPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        res = BivarPoly()
        res._terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other) -> "BivarPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BivarPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "BivarPoly":
        other = self._coerce(other)
        ta, tb = self._terms, other._terms
        if not ta or not tb:
            return BivarPoly()
        res = BivarPoly()
        if len(ta) * len(tb) <= _KRONECKER_CUTOFF:
            res._terms = _mul_naive(ta, tb)
        else:
            res._terms = _mul_kronecker(ta, tb)
        return res

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BivarPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    @staticmethod
    def _coerce(other) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, int):
            return BivarPoly.const(other)
        if isinstance(other, ModBivarPoly):
            raise RingMismatchError("cannot mix Z[x,y] with a mod-p polynomial")
        raise TypeError(f"cannot combine BivarPoly with {type(other).__name__}")

    # -- calculus / structure ---------------------------------------------

    def substitute(self, var: str, replacement: "BivarPoly") -> "BivarPoly":
        """Exact composition: replace ``var`` ('x' or 'y') by a polynomial."""
        idx = _var_index(var)
        replacement = self._coerce(replacement)
        if not self._terms:
            return self
        # Single-term replacement maps monomials directly.
        if len(replacement._terms) == 1:
            ((rx, ry), rc), = replacement._terms.items()
            out = {}
            for (ex, ey), c in self._terms.items():
                e = (ex, ey)[idx]
                keep = (ex, ey)[1 - idx]
                scaled = c * rc ** e
                if idx == 0:
                    key = (rx * e, ry * e + keep)
                else:
                    key = (rx * e + keep, ry * e)
                v = out.get(key, 0) + scaled
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
            res = BivarPoly()
            res._terms = out
            return res
        # General case: Horner in the substituted variable.
        layers: dict[int, dict] = {}
        for (ex, ey), c in self._terms.items():
            e = (ex, ey)[idx]
            rest = (ex, ey)[1 - idx]
            key = (0, rest) if idx == 0 else (rest, 0)
            layers.setdefault(e, {})[key] = c
        top = max(layers)
        acc = BivarPoly()
        for e in range(top, -1, -1):
            acc = acc * replacement
            layer = layers.get(e)
            if layer:
                lp = BivarPoly()
                lp._terms = layer
                acc = acc + lp
        return acc

    def partial_derivative(self, var: str) -> "BivarPoly":
        idx = _var_index(var)
        out = {}
        for (ex, ey), c in self._terms.items():
            e = (ex, ey)[idx]
            if e == 0:
                continue
            key = (ex - 1, ey) if idx == 0 else (ex, ey - 1)
            out[key] = c * e
        res = BivarPoly()
        res._terms = out
        return res

    def reduce_mod(self, q: int) -> "ModBivarPoly":
        """Coefficientwise reduction, a ring homomorphism Z[x,y] -> F_q[x,y]."""
        if not is_prime(q):
            raise NotPrimeError(f"modulus {q} is not prime")
        out = {}
        for k, c in self._terms.items():
            r = c % q
            if r:
                out[k] = r
        return ModBivarPoly(q, out)

    def coefficient_in_x(self, e: int) -> "BivarPoly":
        """The y-polynomial multiplying x^e (zero if absent)."""
        out = {(0, ey): c for (ex, ey), c in self._terms.items() if ex == e}
        res = BivarPoly()
        res._terms = out
        return res

    def evaluate(self, x_val, y_val):
        """Horner evaluation; exact for int/Fraction, floating for complex."""
        by_ex: dict[int, list] = {}
        for (ex, ey), c in self._terms.items():
            by_ex.setdefault(ex, []).append((ey, c))
        if not by_ex:
            return 0
        acc = 0
        prev_ex = None
        for ex in sorted(by_ex, reverse=True):
            if prev_ex is not None:
                acc = acc * x_val ** (prev_ex - ex)
            inner = 0
            prev_ey = None
            for ey, c in sorted(by_ex[ex], reverse=True):
                if prev_ey is not None:
                    inner = inner * y_val ** (prev_ey - ey)
                inner = inner + c
                prev_ey = ey
            if prev_ey:
                inner = inner * y_val ** prev_ey
            acc = acc + inner
            prev_ex = ex
        if prev_ex:
            acc = acc * x_val ** prev_ex
        return acc

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        return _format_terms(self.sorted_terms(), ("x", "y"))

    def __repr__(self) -> str:
        return f"BivarPoly({self})"

    def to_json_terms(self) -> list:
        """JSON-ready term list, coefficients as decimal strings."""
        return [
            {"ex": ex, "ey": ey, "coeff": str(c)}
            for (ex, ey), c in self.sorted_terms()
        ]

    @classmethod
    def from_json_terms(cls, items: list) -> "BivarPoly":
        return cls({(int(t["ex"]), int(t["ey"])): int(t["coeff"]) for t in items})


class ModBivarPoly:
    """Polynomial over F_p in two variables (second one may be unused)."""

    __slots__ = ("p", "_terms", "names")

    def __init__(self, p: int, terms: Mapping[ExponentPair, int] | Iterable = (),
                 names: tuple[str, str] = ("x", "y")):
        if not is_prime(p):
            raise NotPrimeError(f"modulus {p} is not prime")
        self.p = p
        self.names = names
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        canon = {}
        for (ex, ey), c in items:
            if ex < 0 or ey < 0:
                raise ValueError(f"negative exponent in monomial ({ex}, {ey})")
            r = c % p
            if r:
                key = (ex, ey)
                v = (canon.get(key, 0) + r) % p
                if v:
                    canon[key] = v
                elif key in canon:
                    del canon[key]
        self._terms = canon

    @classmethod
    def zero(cls, p: int, names=("x", "y")) -> "ModBivarPoly":
        return cls(p, (), names)

    @classmethod
    def const(cls, p: int, c: int, names=("x", "y")) -> "ModBivarPoly":
        return cls(p, {(0, 0): c}, names)

    @classmethod
    def monomial(cls, p: int, ex: int, ey: int, c: int = 1, names=("x", "y")) -> "ModBivarPoly":
        return cls(p, {(ex, ey): c}, names)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, ex: int, ey: int) -> int:
        return self._terms.get((ex, ey), 0)

    @property
    def deg_x(self):
        return max((e[0] for e in self._terms), default=NEG_INF)

    @property
    def deg_y(self):
        return max((e[1] for e in self._terms), default=NEG_INF)

    @property
    def total_degree(self):
        return max((e[0] + e[1] for e in self._terms), default=NEG_INF)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=_sort_key)

    def _check(self, other) -> "ModBivarPoly":
        if isinstance(other, int):
            return ModBivarPoly.const(self.p, other, self.names)
        if isinstance(other, BivarPoly):
            raise RingMismatchError("cannot mix a mod-p polynomial with Z[x,y]")
        if not isinstance(other, ModBivarPoly):
            raise TypeError(f"cannot combine ModBivarPoly with {type(other).__name__}")
        if other.p != self.p:
            raise RingMismatchError(f"mixed moduli {self.p} and {other.p}")
        return other

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ModBivarPoly.const(self.p, other).terms()
        if not isinstance(other, ModBivarPoly):
            return NotImplemented
        return self.p == other.p and self._terms == other._terms

    def __hash__(self):
        return hash((self.p, frozenset(self._terms.items())))

    def __neg__(self) -> "ModBivarPoly":
        out = ModBivarPoly.zero(self.p, self.names)
        out._terms = {k: self.p - v for k, v in self._terms.items()}
        return out

    def __add__(self, other) -> "ModBivarPoly":
        other = self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = (out.get(k, 0) + v) % self.p
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        res = ModBivarPoly.zero(self.p, self.names)
        res._terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other) -> "ModBivarPoly":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "ModBivarPoly":
        return self._check(other) + (-self)

    def __mul__(self, other) -> "ModBivarPoly":
        other = self._check(other)
        p = self.p
        out: dict = {}
        get = out.get
        for (ax, ay), ca in self._terms.items():
            for (bx, by), cb in other._terms.items():
                key = (ax + bx, ay + by)
                out[key] = (get(key, 0) + ca * cb) % p
        res = ModBivarPoly.zero(p, self.names)
        res._terms = {k: v for k, v in out.items() if v}
        return res

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ModBivarPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = ModBivarPoly.const(self.p, 1, self.names)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def partial_derivative(self, var: str) -> "ModBivarPoly":
        idx = _var_index(var, self.names)
        out = {}
        for (ex, ey), c in self._terms.items():
            e = (ex, ey)[idx]
            r = c * e % self.p
            if e == 0 or r == 0:
                continue
            key = (ex - 1, ey) if idx == 0 else (ex, ey - 1)
            out[key] = r
        res = ModBivarPoly.zero(self.p, self.names)
        res._terms = out
        return res

    def frobenius_shift(self, i: int = 1) -> "ModBivarPoly":
        """Raise to the p^i power (exponent scaling: char-p freshman's dream)."""
        q = self.p ** i
        res = ModBivarPoly.zero(self.p, self.names)
        res._terms = {(ex * q, ey * q): c for (ex, ey), c in self._terms.items()}
        return res

    def substitute(self, var: str, replacement: "ModBivarPoly") -> "ModBivarPoly":
        idx = _var_index(var, self.names)
        replacement = self._check(replacement)
        layers: dict[int, dict] = {}
        for (ex, ey), c in self._terms.items():
            e = (ex, ey)[idx]
            rest = (ex, ey)[1 - idx]
            key = (0, rest) if idx == 0 else (rest, 0)
            layers.setdefault(e, {})[key] = c
        if not layers:
            return self
        acc = ModBivarPoly.zero(self.p, self.names)
        for e in range(max(layers), -1, -1):
            acc = acc * replacement
            layer = layers.get(e)
            if layer:
                lp = ModBivarPoly.zero(self.p, self.names)
                lp._terms = layer
                acc = acc + lp
        return acc

    def evaluate(self, x_val: int, y_val: int) -> int:
        """Value in F_p at integer arguments."""
        p = self.p
        total = 0
        for (ex, ey), c in self._terms.items():
            total += c * pow(x_val, ex, p) * pow(y_val, ey, p)
        return total % p

    def __str__(self) -> str:
        return _format_terms(self.sorted_terms(), self.names)

    def __repr__(self) -> str:
        return f"ModBivarPoly(p={self.p}, {self})"

    def to_json_terms(self) -> list:
        return [
            {"ex": ex, "ey": ey, "coeff": str(c)}
            for (ex, ey), c in self.sorted_terms()
        ]


def _var_index(var: str, names: tuple[str, str] = ("x", "y")) -> int:
    if var == names[0] or var == "x":
        return 0
    if var == names[1] or var == "y":
        return 1
    raise ValueError(f"unknown variable {var!r}, expected one of {names}")


def _format_terms(sorted_terms, names) -> str:
    if not sorted_terms:
        return "0"
    pieces = []
    for (ex, ey), c in sorted_terms:
        mono = []
        if ex == 1:
            mono.append(names[0])
        elif ex > 1:
            mono.append(f"{names[0]}^{ex}")
        if ey == 1:
            mono.append(names[1])
        elif ey > 1:
            mono.append(f"{names[1]}^{ey}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(mag)] + mono)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


#: Convenience generators for building polynomials in tests and callers.
X = BivarPoly.monomial(1, 0)
Y = BivarPoly.monomial(0, 1)
ONE = BivarPoly.const(1)
