"""Frobenius-operator calculus over prime fields, with brute-force oracles.

The p-power map tau acts on F_p[T] by tau(f) = f^p.  Integer polynomials
in tau form a commutative ring acting additively on polynomials:

    (sum c_i tau^i)(f) = sum c_i f^(p^i).

Two closed-form identities are implemented on top of this action:

  * sum_product_closed: the product of (T - u - v) over u in F_{p^n},
    v in F_{p^m} equals (tau^d (tau^n - 1)(tau^m - 1) / (tau^d - 1))(T)
    with d = gcd(n, m); verified by literal enumeration inside the
    composite field F_{p^lcm(n,m)}.

  * artin_schreier_resultant_closed: Res_x(x^(p^n)-x-A, x^(p^m)-x-B)
    equals  sum_{i=1}^{m/d} A^(p^(i d)) - sum_{i=1}^{n/d} B^(p^(i d));
    verified (up to a global sign that is recorded, not adjudicated)
    against a literal Sylvester-determinant expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product

from .errors import (InexactDivisionError, NotPrimeError, ResourceLimitError)
from .exactpoly import ModBivarPoly, is_prime
from .sylvester import bareiss_det_int, eval_points, interpolate_integer_poly

#: Enumeration cap for the brute-force product oracle (p^(n+m) factors).
ENUM_BUDGET_DEFAULT = 100_000

#: Sylvester size cap for the resultant oracle (p^n + p^m rows).
ORACLE_SIZE_BUDGET = 200


# ---------------------------------------------------------------------------
# Z[tau]: integer polynomials in the Frobenius operator
# ---------------------------------------------------------------------------

def _strip(seq) -> tuple:
    n = len(seq)
    while n and not seq[n - 1]:
        n -= 1
    return tuple(seq[:n])


@dataclass(frozen=True)
class FrobeniusOperator:
    """Element of Z[tau]: coefficients (c_0, ..., c_r), trailing nonzero."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _strip(self.coefficients))

    @classmethod
    def zero(cls) -> "FrobeniusOperator":
        return cls(())

    @classmethod
    def one(cls) -> "FrobeniusOperator":
        return cls((1,))

    @classmethod
    def tau_power(cls, i: int, coeff: int = 1) -> "FrobeniusOperator":
        return cls((0,) * i + (coeff,))

    @classmethod
    def tau_pow_minus_one(cls, n: int) -> "FrobeniusOperator":
        """tau^n - 1."""
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            if i > 0 and abs(c) == 1:
                body = mono
            elif i == 0:
                body = str(abs(c))
            else:
                body = f"{abs(c)}*{mono}"
            parts.append((f"- {body}" if c < 0 else f"+ {body}") if parts
                         else (f"-{body}" if c < 0 else body))
        return " ".join(parts)


def op_multiply(a: FrobeniusOperator, b: FrobeniusOperator) -> FrobeniusOperator:
    """Composition of operators = coefficient convolution (tau is central)."""
    ca, cb = a.coefficients, b.coefficients
    if not ca or not cb:
        return FrobeniusOperator.zero()
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                out[i + j] += x * y
    return FrobeniusOperator(tuple(out))


def op_divide_exact(a: FrobeniusOperator, b: FrobeniusOperator) -> FrobeniusOperator:
    """Quotient q with q*b == a in Z[tau]; anything inexact is an error."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero operator")
    rem = list(a.coefficients)
    div = b.coefficients
    lead = div[-1]
    qlen = len(rem) - len(div) + 1
    if a.is_zero:
        return FrobeniusOperator.zero()
    if qlen <= 0:
        raise InexactDivisionError(f"{a} is not divisible by {b}")
    quot = [0] * qlen
    for i in range(qlen - 1, -1, -1):
        top = rem[i + len(div) - 1]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise InexactDivisionError(f"{a} is not divisible by {b}")
        quot[i] = c
        for j, cb in enumerate(div):
            rem[i + j] -= c * cb
    if any(rem):
        raise InexactDivisionError(f"{a} is not divisible by {b}")
    return FrobeniusOperator(tuple(quot))


def apply_operator(op: FrobeniusOperator, f: ModBivarPoly) -> ModBivarPoly:
    """(sum c_i tau^i)(f) = sum c_i f^(p^i), reduced mod p."""
    acc = ModBivarPoly.zero(f.p, f.names)
    for i, c in enumerate(op.coefficients):
        if c % f.p:
            acc = acc + (c % f.p) * f.frobenius_shift(i)
    return acc


# ---------------------------------------------------------------------------
# Finite field towers F_p[t]/(mu)
# ---------------------------------------------------------------------------

def _u_mod(a: tuple, mod: tuple, p: int) -> tuple:
    """Reduce a modulo the monic polynomial mod, over F_p."""
    rem = list(a)
    dm = len(mod) - 1
    for i in range(len(rem) - 1, dm - 1, -1):
        c = rem[i] % p
        if c:
            for j in range(dm + 1):
                rem[i - dm + j] = (rem[i - dm + j] - c * mod[j]) % p
    return _strip([c % p for c in rem[:dm]])


def _u_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _strip(out)


def _u_mulmod(a, b, mod, p):
    return _u_mod(_u_mul(a, b, p), mod, p)


def _u_powmod(a, e, mod, p):
    result = (1,)
    base = _u_mod(a, mod, p)
    while e:
        if e & 1:
            result = _u_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _u_mulmod(base, base, mod, p)
    return result


def _u_gcd(a, b, p):
    while b:
        a, b = b, _u_rem(a, b, p)
    return _monic(a, p)


def _u_rem(a, b, p):
    """Remainder of a by b over F_p (b need not be monic)."""
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    db = len(b) - 1
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] * inv % p
        if c:
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
    return _strip(rem[:db] if db else [])


def _monic(a, p):
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple(c * inv % p for c in a)


def _is_irreducible(mu: tuple, p: int) -> bool:
    """Distinct-degree criterion for a monic polynomial of degree k:
    t^(p^k) == t mod mu, and t^(p^(k/ell)) - t coprime to mu for every
    prime ell dividing k."""
    k = len(mu) - 1
    t_red = _u_mod((0, 1), mu, p)

    def frob_iterate(count):
        x = t_red
        for _ in range(count):
            x = _u_powmod(x, p, mu, p)
        return x

    if frob_iterate(k) != t_red:
        return False
    for ell in (q for q in range(2, k + 1) if k % q == 0 and is_prime(q)):
        x = frob_iterate(k // ell)
        width = max(len(x), len(t_red))
        diff = _strip([((x[i] if i < len(x) else 0) -
                        (t_red[i] if i < len(t_red) else 0)) % p
                       for i in range(width)])
        g = _u_gcd(diff, mu, p) if diff else mu
        if len(g) > 1:
            return False
    return True


class FieldTower:
    """F_{p^k} realized as F_p[t]/(mu), mu the lexicographically smallest
    monic irreducible of degree k (deterministic, so towers are
    reproducible across runs).

    Elements are coefficient tuples of length <= k (stripped, ascending).
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.modulus = self._smallest_irreducible()
        self._elements = None

    def _smallest_irreducible(self) -> tuple:
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)  # t itself
        for tail in iter_product(range(p), repeat=k):
            mu = tuple(tail) + (1,)
            if _is_irreducible(mu, p):
                return mu
        raise RuntimeError("no irreducible polynomial found (unreachable)")

    @property
    def size(self) -> int:
        return self.p ** self.k

    def elements(self) -> list:
        if self._elements is None:
            self._elements = [_strip(t) for t in
                              iter_product(range(self.p), repeat=self.k)]
        return self._elements

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return _strip(out)

    def neg(self, a: tuple) -> tuple:
        return tuple((-c) % self.p for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        return _u_mod(_u_mul(a, b, self.p), self.modulus, self.p)

    def pow(self, a: tuple, e: int) -> tuple:
        return _u_powmod(a, e, self.modulus, self.p)

    def frobenius(self, a: tuple, i: int = 1) -> tuple:
        return self.pow(a, self.p ** i)

    def scalar(self, c: int) -> tuple:
        return _strip((c % self.p,))

    def fixed_field(self, d: int) -> list:
        """Elements fixed by tau^d, i.e. the subfield F_{p^gcd(d,k)}."""
        q = self.p ** d
        return [e for e in self.elements() if self.pow(e, q) == e]


# ---------------------------------------------------------------------------
# Product of (T - u - v) over two subfields
# ---------------------------------------------------------------------------

def _sum_product_operator(n: int, m: int) -> FrobeniusOperator:
    d = math.gcd(n, m)
    num = op_multiply(FrobeniusOperator.tau_power(d),
                      op_multiply(FrobeniusOperator.tau_pow_minus_one(n),
                                  FrobeniusOperator.tau_pow_minus_one(m)))
    return op_divide_exact(num, FrobeniusOperator.tau_pow_minus_one(d))


def sum_product_closed(p: int, n: int, m: int) -> ModBivarPoly:
    """Operator form of prod (T - u - v): monic of degree p^(n+m) in T."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    t_mono = ModBivarPoly.monomial(p, 1, 0, names=("T", "y"))
    return apply_operator(_sum_product_operator(n, m), t_mono)


def brute_force_sum_product(p: int, n: int, m: int,
                            budget: int = ENUM_BUDGET_DEFAULT) -> ModBivarPoly:
    """Literal expansion of prod over u in F_{p^n}, v in F_{p^m} of (T - u - v).

    Both subfields are realized inside F_{p^lcm(n,m)} as the fixed sets
    of the appropriate Frobenius powers (the subfield of given order is
    unique, so no embedding choice arises).  The expanded product must
    have prime-field coefficients, which is asserted.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    count = p ** (n + m)
    if count > budget:
        raise ResourceLimitError(
            f"enumeration of {count} factors exceeds the budget {budget}",
            limit=budget)
    tower = FieldTower(p, (n * m) // math.gcd(n, m))
    us = tower.fixed_field(n)
    vs = tower.fixed_field(m)
    # coefficients of the expanding product, ascending in T
    coeffs = [tower.scalar(1)]
    for u in us:
        for v in vs:
            s = tower.add(u, v)
            nxt = [()] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = tower.add(nxt[i + 1], c)
                nxt[i] = tower.sub(nxt[i], tower.mul(s, c))
            coeffs = nxt
    terms = {}
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if len(c) > 1:
            raise InexactDivisionError(
                "product has a coefficient outside the prime field (bug)")
        terms[(e, 0)] = c[0]
    return ModBivarPoly(p, terms, names=("T", "y"))


# ---------------------------------------------------------------------------
# Resultant of two Artin-Schreier-shaped polynomials
# ---------------------------------------------------------------------------

def artin_schreier_resultant_closed(p: int, n: int, m: int) -> ModBivarPoly:
    """sum_{i=1}^{m/d} A^(p^(i d)) - sum_{i=1}^{n/d} B^(p^(i d)), d = gcd(n,m)."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    d = math.gcd(n, m)
    a_mono = ModBivarPoly.monomial(p, 1, 0, names=("A", "B"))
    b_mono = ModBivarPoly.monomial(p, 0, 1, names=("A", "B"))
    acc = ModBivarPoly.zero(p, names=("A", "B"))
    for i in range(1, m // d + 1):
        acc = acc + a_mono.frobenius_shift(i * d)
    for i in range(1, n // d + 1):
        acc = acc - b_mono.frobenius_shift(i * d)
    return acc


def _artin_schreier_rows(big_n: int, big_m: int, a_val: int, b_val: int) -> list:
    """Integer Sylvester matrix of x^N - x - a and x^M - x - b."""
    size = big_n + big_m
    f_desc = [1] + [0] * (big_n - 2) + [-1, -a_val]
    g_desc = [1] + [0] * (big_m - 2) + [-1, -b_val]
    rows = []
    for i in range(big_m):
        row = [0] * size
        row[i:i + big_n + 1] = f_desc
        rows.append(row)
    for i in range(big_n):
        row = [0] * size
        row[i:i + big_m + 1] = g_desc
        rows.append(row)
    return rows


def artin_schreier_resultant_oracle(p: int, n: int, m: int,
                                    budget: int = ORACLE_SIZE_BUDGET) -> ModBivarPoly:
    """Sylvester-determinant expansion of Res(x^(p^n)-x-A, x^(p^m)-x-B).

    The determinant of the integer lift is expanded exactly (fraction-free
    elimination at integer evaluation points of (A, B), then bivariate
    interpolation with an integrality assertion) and reduced mod p at the
    end.  Must equal the closed form up to one global sign, which callers
    record per case.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    big_n, big_m = p ** n, p ** m
    size = big_n + big_m
    if size > budget:
        raise ResourceLimitError(
            f"Sylvester size {size} exceeds the oracle budget {budget}",
            limit=budget)
    deg_a, deg_b = big_m, big_n  # A sits in the M rows of f-coefficients
    a_pts = eval_points(deg_a + 1)
    b_pts = eval_points(deg_b + 1)
    # determinants on the grid, then interpolate B first, then A
    per_a = []
    for a_val in a_pts:
        vals = [bareiss_det_int(_artin_schreier_rows(big_n, big_m, a_val, b_val))
                for b_val in b_pts]
        per_a.append(interpolate_integer_poly(b_pts, vals))
    terms = {}
    max_b = max((len(c) for c in per_a), default=0)
    for eb in range(max_b):
        col = [c[eb] if eb < len(c) else 0 for c in per_a]
        for ea, coeff in enumerate(interpolate_integer_poly(a_pts, col)):
            if coeff:
                terms[(ea, eb)] = coeff
    lifted = {k: v % p for k, v in terms.items() if v % p}
    return ModBivarPoly(p, lifted, names=("A", "B"))


def match_sign(candidate: ModBivarPoly, reference: ModBivarPoly) -> int | None:
    """+1 or -1 if candidate == +-reference, else None."""
    if candidate == reference:
        return +1
    if candidate == -reference:
        return -1
    return None
