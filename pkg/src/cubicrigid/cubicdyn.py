"""Critical-orbit polynomials of the marked cubic family z^3 - 3x^2 z + y.

The map has critical points at +x and -x.  Iterating it at a critical
point gives an exact polynomial in Z[x, y]; the curve builders subtract
or add back the critical point to express "returns after n steps"
(periodic) and "lands on the other critical value after one extra step"
(tail length 1) conditions:

    F(n)      = f^n(x)  - x        (period-n condition at +x)
    G(m)      = f^m(-x) + x        (period-m condition at -x)
    F_tail(n) = f^n(x)  + 2x       (tail-1 condition at +x)
    G_tail(m) = f^m(-x) - 2x       (tail-1 condition at -x)

Everything here is exact; the mod-3 closed forms are built directly
(without iterating) and cross-checked against reductions in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .errors import InvariantViolationError, ResourceLimitError
from .exactpoly import BivarPoly, ModBivarPoly, NEG_INF, X, Y

#: Default cap on the iterate count.  Term counts grow like 9^n/6 and the
#: top coefficient like 2^(3^(n-1)), so n=8 is already ~1e6 terms.
DEFAULT_MAX_ITERATE = 7

_ONE_STEP_AT = {
    +1: X,
    -1: -X,
}

# Cache of f^n at each critical point, keyed by (n, sign).  Values are
# immutable BivarPoly, safe to share.
_iterate_cache: dict[tuple[int, int], BivarPoly] = {}


def _check_limit(n: int, max_n: int | None) -> None:
    limit = DEFAULT_MAX_ITERATE if max_n is None else max_n
    if n > limit:
        raise ResourceLimitError(
            f"iterate count {n} exceeds the configured limit {limit}", limit=limit)


def _one_step(p: BivarPoly) -> BivarPoly:
    # Substitute z = p into z^3 - 3x^2 z + y.
    return p * p * p - 3 * (X * X) * p + Y


def _raw_iterate(n: int, sign: int) -> BivarPoly:
    key = (n, sign)
    if key in _iterate_cache:
        return _iterate_cache[key]
    start = max((k for (k, s) in _iterate_cache if s == sign and k <= n), default=0)
    p = _iterate_cache.get((start, sign), _ONE_STEP_AT[sign])
    for k in range(start, n):
        p = _one_step(p)
        _iterate_cache[(k + 1, sign)] = p
    return p


@dataclass(frozen=True)
class CriticalOrbitPoly:
    """f^n evaluated at the critical point sign*x, with checked shape."""

    n: int
    sign: int
    poly: BivarPoly

    def __post_init__(self):
        if self.n >= 1:
            nx, ny = 3 ** self.n, 3 ** (self.n - 1)
            lead = self.poly.coefficient(nx, 0)
            expect = (-2) ** ny * (self.sign ** nx)
            if self.poly.deg_x != nx or self.poly.deg_y != ny or lead != expect:
                raise InvariantViolationError(
                    f"iterate shape check failed at n={self.n}, sign={self.sign:+d}: "
                    f"deg_x={self.poly.deg_x}, deg_y={self.poly.deg_y}, lead={lead}")


def iterate_critical(n: int, sign: int = +1, max_n: int | None = None) -> CriticalOrbitPoly:
    """Exact n-fold iterate of the map at the critical point sign*x."""
    if n < 0:
        raise ValueError("iterate count must be nonnegative")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_limit(n, max_n)
    return CriticalOrbitPoly(n, sign, _raw_iterate(n, sign))


def build_F(n: int, max_n: int | None = None) -> BivarPoly:
    """Period-n curve for the critical point +x: f^n(x) - x."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return iterate_critical(n, +1, max_n).poly - X


def build_G(m: int, max_n: int | None = None) -> BivarPoly:
    """Period-m curve for the critical point -x: f^m(-x) + x."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return iterate_critical(m, -1, max_n).poly + X


def build_F_tail(n: int, max_n: int | None = None) -> BivarPoly:
    """Tail-1 curve at +x: f^n(x) + 2x."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return iterate_critical(n, +1, max_n).poly + 2 * X


def build_G_tail(m: int, max_n: int | None = None) -> BivarPoly:
    """Tail-1 curve at -x: f^m(-x) - 2x."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return iterate_critical(m, -1, max_n).poly - 2 * X


@dataclass(frozen=True)
class IdentityVerdict:
    ok: bool
    n: int
    lhs_terms: int
    rhs_terms: int
    difference: BivarPoly

    def __bool__(self):
        return self.ok


def verify_factor_identity(n: int, max_n: int | None = None) -> IdentityVerdict:
    """Check f^(n+1)(x) - f(x) == (f^n(x) - x)^2 * (f^n(x) + 2x) exactly.

    The factorization reflects that the one-step difference through a
    critical point is a double root; it is what makes the tail-1 curve a
    polynomial rather than a rational function.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_limit(n + 1, max_n)
    fn = _raw_iterate(n, +1)
    lhs = _raw_iterate(n + 1, +1) - _raw_iterate(1, +1)
    rhs = (fn - X) * (fn - X) * (fn + 2 * X)
    diff = lhs - rhs
    return IdentityVerdict(diff.is_zero, n, len(lhs), len(rhs), diff)


# ---------------------------------------------------------------------------
# Odd symmetry of the full iterate in three variables
# ---------------------------------------------------------------------------

def _tri_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for (ax, ay, az), ca in a.items():
        for (bx, by, bz), cb in b.items():
            k = (ax + bx, ay + by, az + bz)
            v = get(k, 0) + ca * cb
            out[k] = v
    return {k: v for k, v in out.items() if v}


def _tri_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


@dataclass(frozen=True)
class SymmetryVerdict:
    ok: bool
    n: int
    term_count: int
    asymmetric_terms: int

    def __bool__(self):
        return self.ok


def verify_odd_symmetry(n: int, max_n: int | None = None) -> SymmetryVerdict:
    """Check that f^n as a polynomial in x, y, z is invariant under x -> -x.

    Works with z adjoined as a third variable internally; the public
    polynomial type stays bivariate.  Equivalent statement: every term
    has even x-exponent.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_limit(n, max_n)
    q = {(0, 0, 1): 1}  # z
    for _ in range(n):
        cube = _tri_mul(_tri_mul(q, q), q)
        shear = _tri_mul({(2, 0, 0): -3}, q)
        q = _tri_add(_tri_add(cube, shear), {(0, 1, 0): 1})
    odd = sum(1 for k in q if k[0] % 2)
    return SymmetryVerdict(odd == 0, n, len(q), odd)


# ---------------------------------------------------------------------------
# Coefficient profile of f^n(x) as a polynomial in x over Z[y]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileEntry:
    k: int
    poly: BivarPoly            # the y-polynomial on x^(3^n - k)
    bound: int                 # 4*floor(k/3) - k
    actual_degree: object      # int, or NEG_INF for the zero polynomial
    ok: bool                   # actual_degree <= bound
    meets_bound_exactly: bool  # raw equality of degree and bound
    matches_conjecture: bool   # observational pattern; never asserted

    def json_row(self, n: int) -> dict:
        deg = self.actual_degree
        return {
            "n": n,
            "k": self.k,
            "bound": self.bound,
            "actual_degree": None if deg == NEG_INF else int(deg),
            "ok": self.ok,
        }


@dataclass(frozen=True)
class CoefficientProfile:
    n: int
    entries: tuple
    ok: bool
    failures: tuple = field(default=())

    def json_rows(self) -> list:
        return [e.json_row(self.n) for e in self.entries]


def coefficient_profile(n: int, max_n: int | None = None) -> CoefficientProfile:
    """Degree profile of the coefficients a_k(y) of f^n(x) = sum a_k x^(3^n - k).

    Checks the three structural facts: deg a_k <= 4*floor(k/3) - k, the
    top coefficient a_0 = (-2)^(3^(n-1)), and the constant-in-x
    coefficient monic in y of degree 3^(n-1).  Whether the bound is met
    with equality is recorded but never asserted (it is an experimental
    observation, except that a_(3^n - 1) vanishes).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_limit(n, max_n)
    p = _raw_iterate(n, +1)
    nx, ny = 3 ** n, 3 ** (n - 1)
    entries = []
    failures = []
    for k in range(nx + 1):
        a_k = p.coefficient_in_x(nx - k)
        bound = 4 * (k // 3) - k
        deg = a_k.deg_y
        ok = deg <= bound if not a_k.is_zero else True
        if k == 0:
            ok = ok and a_k == BivarPoly.const((-2) ** ny)
        if k == nx:
            ok = ok and deg == ny and a_k.coefficient(0, ny) == 1
        if not ok:
            failures.append(k)
        # Observed pattern: degree equals the bound everywhere except
        # k = 3^n - 1 (zero there); a negative bound also means zero.
        if k == nx - 1 or bound < 0:
            conjectured = a_k.is_zero
        else:
            conjectured = deg == bound
        entries.append(ProfileEntry(
            k=k, poly=a_k, bound=bound, actual_degree=deg, ok=ok,
            meets_bound_exactly=(deg == bound), matches_conjecture=conjectured))
    return CoefficientProfile(n=n, entries=tuple(entries),
                              ok=not failures, failures=tuple(failures))


# ---------------------------------------------------------------------------
# Mod-3 closed forms (built directly, no iteration)
# ---------------------------------------------------------------------------

Mod3Kind = Literal["iterate", "F", "G", "F_tail", "G_tail"]


def mod3_closed_form(kind: Mod3Kind, n: int) -> ModBivarPoly:
    """The reduction mod 3, written down in closed form.

    iterate: x^(3^n) + Y_n  where  Y_n = y + y^3 + ... + y^(3^(n-1));
    F and F_tail: add 2x; G and G_tail: flip the leading sign and add x.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    terms = {(0, 3 ** i): 1 for i in range(n)}  # Y_n
    if kind == "iterate":
        terms[(3 ** n, 0)] = 1
    elif kind in ("F", "F_tail"):
        terms[(3 ** n, 0)] = 1
        terms[(1, 0)] = 2
    elif kind in ("G", "G_tail"):
        terms[(3 ** n, 0)] = 2
        terms[(1, 0)] = 1
    else:
        raise ValueError(f"unknown closed-form kind {kind!r}")
    return ModBivarPoly(3, terms)
