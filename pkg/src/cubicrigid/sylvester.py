"""Resultants with respect to x for polynomials over Z[y].

The resultant is computed as the determinant of the Sylvester matrix
laid out with the first polynomial's coefficients in the top rows.
With deg_x f = N and deg_x g = M, the matrix is (M+N)-square, the top M
rows carry f's coefficients and the bottom N rows carry g's, each band
shifted one column per row.  Under this layout

    det S = Res_x(f, g) = lc_x(f)^M * prod over x-roots a of f of g(a),

which is the sign convention used everywhere in this package.

Two independent determinant algorithms are provided and cross-checked:

  * fraction-free (Bareiss) elimination directly over Z[y], every
    intermediate division exact by construction;
  * evaluation-interpolation: evaluate y at small symmetric integers,
    take exact integer determinants, interpolate over the rationals and
    insist the result is integral.

Determinants are the most bug-prone computation in the package, hence
the redundancy.  Mod-p variants of both algorithms support larger sizes
and a third layer of cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (BoundViolationError, DegeneracyError,
                     InvariantViolationError, NotPrimeError)
from .exactpoly import BivarPoly, ModBivarPoly, is_prime

# ---------------------------------------------------------------------------
# Dense univariate polynomials in y (ascending coefficient tuples)
# ---------------------------------------------------------------------------

YPoly = tuple  # tuple of ints, ascending powers, no trailing zeros; () is zero


def yp_from_bivar(p: BivarPoly) -> YPoly:
    if p.deg_x not in (0, float("-inf")):
        raise ValueError("expected a polynomial in y only")
    if p.is_zero:
        return ()
    out = [0] * (p.deg_y + 1)
    for (_, ey), c in p.terms().items():
        out[ey] = c
    return tuple(out)


def yp_to_bivar(t: YPoly) -> BivarPoly:
    return BivarPoly({(0, e): c for e, c in enumerate(t) if c})


def _yp_strip(lst) -> YPoly:
    n = len(lst)
    while n and not lst[n - 1]:
        n -= 1
    return tuple(lst[:n])


def _yp_add(a: YPoly, b: YPoly) -> YPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _yp_strip(out)


def _yp_neg(a: YPoly) -> YPoly:
    return tuple(-c for c in a)


def _yp_sub(a: YPoly, b: YPoly) -> YPoly:
    return _yp_add(a, _yp_neg(b))


def _yp_mul(a: YPoly, b: YPoly) -> YPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _yp_exquo(a: YPoly, b: YPoly) -> YPoly:
    """Exact division in Z[y]; inexactness means a broken invariant."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ()
    if len(a) < len(b):
        raise InvariantViolationError("inexact polynomial division (degree)")
    rem = list(a)
    lead = b[-1]
    qlen = len(a) - len(b) + 1
    quot = [0] * qlen
    for i in range(qlen - 1, -1, -1):
        top = rem[i + len(b) - 1]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise InvariantViolationError("inexact polynomial division (coefficient)")
        quot[i] = c
        for j, cb in enumerate(b):
            rem[i + j] -= c * cb
    if any(rem):
        raise InvariantViolationError("inexact polynomial division (remainder)")
    return _yp_strip(quot)


def _yp_eval(a: YPoly, y0: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * y0 + c
    return acc


def _coerce_entry(v) -> YPoly:
    if isinstance(v, tuple):
        return v
    if isinstance(v, int):
        return (v,) if v else ()
    if isinstance(v, BivarPoly):
        return yp_from_bivar(v)
    raise TypeError(f"cannot use {type(v).__name__} as a matrix entry")


# ---------------------------------------------------------------------------
# Sylvester matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SylvesterMatrix:
    """Banded (M+N)-square matrix eliminating x from f and g.

    deg_f (N) and deg_g (M) are the x-degrees; f_coeffs and g_coeffs are
    the coefficient sequences in descending x-powers, each entry a dense
    y-polynomial tuple.
    """

    deg_f: int
    deg_g: int
    f_coeffs: tuple
    g_coeffs: tuple

    @property
    def size(self) -> int:
        return self.deg_f + self.deg_g

    @property
    def meta(self) -> tuple:
        return (self.deg_f, self.deg_g)

    def entry(self, i: int, j: int) -> YPoly:
        if i < self.deg_g:
            k = j - i
            return self.f_coeffs[k] if 0 <= k <= self.deg_f else ()
        k = j - (i - self.deg_g)
        return self.g_coeffs[k] if 0 <= k <= self.deg_g else ()

    def rows(self) -> list:
        n = self.size
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def eval_rows(self, y0: int) -> list:
        """Integer matrix at y = y0 (each distinct band entry evaluated once)."""
        fv = [_yp_eval(c, y0) for c in self.f_coeffs]
        gv = [_yp_eval(c, y0) for c in self.g_coeffs]
        n = self.size
        rows = []
        for i in range(self.deg_g):
            row = [0] * n
            row[i:i + self.deg_f + 1] = fv
            rows.append(row)
        for i in range(self.deg_f):
            row = [0] * n
            row[i:i + self.deg_g + 1] = gv
            rows.append(row)
        return rows

    def max_y_degree(self) -> int:
        return max((len(c) - 1 for c in self.f_coeffs + self.g_coeffs if c), default=0)


def build_sylvester(f: BivarPoly, g: BivarPoly) -> SylvesterMatrix:
    """Sylvester matrix of f and g as polynomials in x over Z[y]."""
    nf, ng = f.deg_x, g.deg_x
    if not isinstance(nf, int) or nf < 1 or not isinstance(ng, int) or ng < 1:
        raise DegeneracyError("both inputs must be nonconstant in x")
    f_coeffs = tuple(yp_from_bivar(f.coefficient_in_x(nf - k)) for k in range(nf + 1))
    g_coeffs = tuple(yp_from_bivar(g.coefficient_in_x(ng - k)) for k in range(ng + 1))
    return SylvesterMatrix(deg_f=nf, deg_g=ng, f_coeffs=f_coeffs, g_coeffs=g_coeffs)


# ---------------------------------------------------------------------------
# Fraction-free (Bareiss) elimination
# ---------------------------------------------------------------------------

def _bareiss(rows: list, zero, one, mul: Callable, sub: Callable,
             exquo: Callable, is_zero: Callable, neg: Callable):
    """Generic Bareiss elimination over an integral domain.

    Intermediate entries are (k+1)-minors of the input, so every
    division by the previous pivot is exact; a failed division is an
    implementation bug, not a data error.  Row swaps (with sign
    tracking) handle vanishing pivots.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = exquo(sub(mul(pivot, row_i[j]), mul(factor, row_k[j])), prev)
            row_i[k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else neg(det)


def bareiss_det_int(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        tail_k = row_k[k + 1:]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            if factor:
                m[i] = [0] * (k + 1) + [
                    (pivot * a - factor * b) // prev
                    for a, b in zip(row_i[k + 1:], tail_k)]
            elif prev == 1 and pivot == 1:
                pass
            else:
                m[i] = [0] * (k + 1) + [pivot * a // prev for a in row_i[k + 1:]]
        prev = pivot
    return sign * m[n - 1][n - 1]


def determinant_fraction_free(matrix) -> BivarPoly:
    """Exact determinant over Z[y] by Bareiss elimination.

    Accepts a SylvesterMatrix or any square matrix whose entries are
    y-polynomials (BivarPoly in y, ints, or dense coefficient tuples).
    """
    if isinstance(matrix, SylvesterMatrix):
        rows = matrix.rows()
    else:
        rows = [[_coerce_entry(v) for v in row] for row in matrix]
    det = _bareiss(rows, zero=(), one=(1,), mul=_yp_mul, sub=_yp_sub,
                   exquo=_yp_exquo, is_zero=lambda t: not t, neg=_yp_neg)
    return yp_to_bivar(det)


# ---------------------------------------------------------------------------
# Evaluation-interpolation over Z
# ---------------------------------------------------------------------------

def eval_points(count: int) -> list:
    """0, 1, -1, 2, -2, ...: small symmetric integers."""
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts[:count]


def interpolate_integer_poly(xs: Sequence[int], ys: Sequence[int]) -> YPoly:
    """Unique interpolating polynomial through (xs, ys), required integral.

    Newton divided differences over exact rationals; a non-integer
    coefficient in the final expansion means the caller's degree bound
    was violated and is reported, never rounded.
    """
    n = len(xs)
    coef = [Fraction(v) for v in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    cur = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        nxt = [Fraction(0)] * (len(cur) + 1)
        for d, c in enumerate(cur):
            nxt[d + 1] += c
            nxt[d] -= c * xs[i]
        nxt[0] += coef[i]
        cur = nxt
    out = []
    for d, c in enumerate(cur):
        if c.denominator != 1:
            raise BoundViolationError(
                f"interpolation produced non-integer coefficient {c} at degree {d}")
        out.append(int(c))
    return _yp_strip(out)


def _matrix_rows_at(matrix, y0: int) -> list:
    if isinstance(matrix, SylvesterMatrix):
        return matrix.eval_rows(y0)
    return [[_yp_eval(_coerce_entry(v), y0) for v in row] for row in matrix]


def determinant_eval_interp(matrix, degree_bound: int, jobs: int = 1,
                            guard_points: int = 2) -> BivarPoly:
    """Exact determinant over Z[y] by evaluation and interpolation.

    Requires degree_bound >= deg of the true determinant; interpolation
    then needs exactly degree_bound+1 symmetric integer points, with
    exact integer determinants at each and an integrality assertion on
    the result.  guard_points extra evaluations are checked against the
    interpolant afterwards so that an undersized bound surfaces as a
    BoundViolationError instead of a silently aliased polynomial.
    Points are independent and fan out across processes when jobs > 1
    (deterministic merge by point index).
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    pts = eval_points(degree_bound + 1 + guard_points)
    if jobs > 1 and len(pts) > 3:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            vals = list(pool.map(bareiss_det_int,
                                 (_matrix_rows_at(matrix, y0) for y0 in pts),
                                 chunksize=max(1, len(pts) // (4 * jobs))))
    else:
        vals = [bareiss_det_int(_matrix_rows_at(matrix, y0)) for y0 in pts]
    cut = degree_bound + 1
    det = interpolate_integer_poly(pts[:cut], vals[:cut])
    for y0, val in zip(pts[cut:], vals[cut:]):
        if _yp_eval(det, y0) != val:
            raise BoundViolationError(
                f"determinant disagrees with the degree-{degree_bound} "
                f"interpolant at y={y0}: the supplied bound is too small")
    return yp_to_bivar(det)


# ---------------------------------------------------------------------------
# Mod-p variants (third route for cross-checks and large sizes)
# ---------------------------------------------------------------------------

def _mp_strip(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def _make_mod_domain(q: int):
    empty = np.zeros(0, dtype=np.int64)
    one = np.ones(1, dtype=np.int64)

    def mul(a, b):
        if not len(a) or not len(b):
            return empty
        return np.convolve(a, b) % q

    def sub(a, b):
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=np.int64)
        out[:len(a)] = a
        out[:len(b)] -= b
        return _mp_strip(out % q)

    def neg(a):
        return (-a) % q

    def exquo(a, b):
        if not len(b):
            raise ZeroDivisionError("division by zero polynomial")
        if not len(a):
            return empty
        inv = pow(int(b[-1]), q - 2, q)
        rem = a.copy()
        qlen = len(a) - len(b) + 1
        if qlen <= 0:
            raise InvariantViolationError("inexact polynomial division (degree)")
        quot = np.zeros(qlen, dtype=np.int64)
        for i in range(qlen - 1, -1, -1):
            c = rem[i + len(b) - 1] * inv % q
            if c:
                quot[i] = c
                rem[i:i + len(b)] = (rem[i:i + len(b)] - c * b) % q
        if rem.any():
            raise InvariantViolationError("inexact polynomial division (remainder)")
        return _mp_strip(quot)

    return empty, one, mul, sub, exquo, neg


def determinant_fraction_free_mod(matrix, q: int) -> ModBivarPoly:
    """Bareiss elimination with all coefficient arithmetic done mod prime q.

    Returns the determinant of the entrywise-reduced matrix over F_q.
    Used to cross-check the exact paths: determinants commute with
    coefficient reduction.
    """
    if not is_prime(q):
        raise NotPrimeError(f"modulus {q} is not prime")
    if q.bit_length() > 25:
        raise ValueError("modulus too large for int64 convolution safety")
    if isinstance(matrix, SylvesterMatrix):
        rows = matrix.rows()
    else:
        rows = [[_coerce_entry(v) for v in row] for row in matrix]
    empty, one, mul, sub, exquo, neg = _make_mod_domain(q)
    np_rows = [[np.array([c % q for c in ent], dtype=np.int64) if ent else empty
                for ent in row] for row in rows]
    np_rows = [[_mp_strip(ent) for ent in row] for row in np_rows]
    det = _bareiss(np_rows, zero=empty, one=one, mul=mul, sub=sub,
                   exquo=exquo, is_zero=lambda t: not len(t), neg=neg)
    return ModBivarPoly(q, {(0, e): int(c) for e, c in enumerate(det) if c})


def _gauss_det_mod(mat: np.ndarray, q: int) -> int:
    """Determinant of an int64 matrix over F_q by ordinary elimination."""
    m = mat % q
    n = len(m)
    det = 1
    for k in range(n):
        piv = k
        while piv < n and m[piv, k] == 0:
            piv += 1
        if piv == n:
            return 0
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
            det = -det
        pivot = int(m[k, k])
        det = det * pivot % q
        inv = pow(pivot, q - 2, q)
        if k + 1 < n:
            factors = m[k + 1:, k] * inv % q
            m[k + 1:, k:] = (m[k + 1:, k:] - np.outer(factors, m[k, k:])) % q
    return det % q


def determinant_eval_interp_mod(matrix, q: int, degree_bound: int,
                                guard_points: int = 2) -> ModBivarPoly:
    """Evaluation-interpolation determinant with all arithmetic over F_q.

    Needs q > degree_bound+1+guard_points distinct evaluation points;
    practical for sizes where the exact integer path is too expensive.
    As in the exact variant, guard evaluations catch an undersized bound.
    """
    if not is_prime(q):
        raise NotPrimeError(f"modulus {q} is not prime")
    if q.bit_length() > 25:
        raise ValueError("modulus too large for int64 safety")
    if degree_bound + 1 + guard_points > q:
        raise ValueError("not enough evaluation points in F_q for the bound")

    def det_at(y0):
        rows = _matrix_rows_at(matrix, y0)
        mat = np.array([[v % q for v in row] for row in rows], dtype=np.int64)
        return _gauss_det_mod(mat, q)

    pts = list(range(degree_bound + 1))
    vals = [det_at(y0) for y0 in pts]
    # Newton interpolation over F_q.
    coef = list(vals)
    n = len(pts)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(pts[i] - pts[i - j], q - 2, q) % q
    cur = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        nxt = [0] * (len(cur) + 1)
        for d, c in enumerate(cur):
            nxt[d + 1] = (nxt[d + 1] + c) % q
            nxt[d] = (nxt[d] - c * pts[i]) % q
        nxt[0] = (nxt[0] + coef[i]) % q
        cur = nxt
    for y0 in range(degree_bound + 1, degree_bound + 1 + guard_points):
        fit = 0
        for c in reversed(cur):
            fit = (fit * y0 + c) % q
        if fit != det_at(y0):
            raise BoundViolationError(
                f"mod-{q} determinant disagrees with the degree-{degree_bound} "
                f"interpolant at y={y0}: the supplied bound is too small")
    return ModBivarPoly(q, {(0, e): int(c) for e, c in enumerate(cur) if c})


# ---------------------------------------------------------------------------
# Front door
# ---------------------------------------------------------------------------

#: Above this matrix size the symbolic Bareiss path is dispatched away
#: from in favor of evaluation-interpolation.
FRACTION_FREE_SIZE_LIMIT = 20


def resultant_x(f: BivarPoly, g: BivarPoly, degree_bound: int | None = None,
                method: str = "auto", jobs: int = 1) -> BivarPoly:
    """Res_x(f, g) in Z[y] under the declared sign convention.

    method: 'ff' (fraction-free), 'ei' (evaluation-interpolation),
    'both' (run both, insist they agree), or 'auto' (ff up to size
    FRACTION_FREE_SIZE_LIMIT, ei beyond).  ei needs a degree bound; if
    none is supplied the generic Sylvester bound
    deg_g*deg_y(f) + deg_f*deg_y(g) is used.
    """
    s = build_sylvester(f, g)
    if degree_bound is None:
        dyf = f.deg_y if f.deg_y != float("-inf") else 0
        dyg = g.deg_y if g.deg_y != float("-inf") else 0
        degree_bound = s.deg_g * int(dyf) + s.deg_f * int(dyg)
    if method == "auto":
        method = "ff" if s.size <= FRACTION_FREE_SIZE_LIMIT else "ei"
    if method == "ff":
        return determinant_fraction_free(s)
    if method == "ei":
        return determinant_eval_interp(s, degree_bound, jobs=jobs)
    if method == "both":
        r_ff = determinant_fraction_free(s)
        r_ei = determinant_eval_interp(s, degree_bound, jobs=jobs)
        if r_ff != r_ei:
            raise InvariantViolationError(
                "fraction-free and evaluation-interpolation determinants disagree")
        return r_ff
    raise ValueError(f"unknown method {method!r}")


def ord_p(value: int, p: int) -> int:
    """Largest e with p^e dividing value (value must be nonzero)."""
    if value == 0:
        raise DegeneracyError("valuation of zero is undefined")
    e = 0
    while value % p == 0:
        value //= p
        e += 1
    return e


@dataclass(frozen=True)
class LeadingData:
    degree: int
    lead_coeff: int
    ord3: int


def leading_data(r: BivarPoly) -> LeadingData:
    """Degree, leading coefficient and its 3-adic valuation, for r in Z[y]."""
    if r.is_zero:
        raise DegeneracyError("zero polynomial has no leading data")
    deg = int(r.deg_y)
    if r.deg_x not in (0, float("-inf")):
        raise ValueError("expected a polynomial in y only")
    lead = r.coefficient(0, deg)
    return LeadingData(degree=deg, lead_coeff=lead, ord3=ord_p(lead, 3))
