"""Resultants, integer roots, interpolation and exact linear solving."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, lcm

from .poly import QQ, Poly, poly_gcd


@dataclass(frozen=True)
class PolyCore:
    gcd: Poly
    resultant: object


def resultant(a, b):
    """Resultant by the subresultant PRS.  Zero if either input is zero."""
    field = a.field
    if not a or not b:
        return field.zero
    sign = 1
    if a.degree() < b.degree():
        a, b = b, a
        if a.degree() % 2 and b.degree() % 2:
            sign = -sign
    if b.degree() == 0:
        return sign * b.lc() ** a.degree()
    g = h = field.one
    while True:
        da, db = a.degree(), b.degree()
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = a.divmod(b)[1] * b.lc() ** (delta + 1)
        if not r:
            return field.zero
        a = b
        b = r * (field.one / (g * h ** delta))
        g = a.lc()
        h = g ** delta / h ** (delta - 1) if delta else h
        if b.degree() == 0:
            break
    da = a.degree()
    h = b.lc() ** da / h ** (da - 1)
    return sign * h


def poly_core(p, q):
    """Monic gcd together with the resultant of two polynomials over one field."""
    return PolyCore(poly_gcd(p, q), resultant(p, q))


def _ceil_root(x, i):
    """Smallest integer t >= 0 with t**i >= x."""
    if x <= 0:
        return 0
    lo, hi = 0, 1
    while hi ** i < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** i >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _integer_coeffs(p):
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _eval_int(cs, x):
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def integer_roots_qq(p):
    """Sorted integer roots of a nonzero polynomial with rational coefficients."""
    if not p:
        raise ValueError("integer_roots of the zero polynomial")
    cs = _integer_coeffs(p)
    roots = set()
    if cs[0] == 0:
        roots.add(0)
        while cs[0] == 0:
            cs = cs[1:]
    d = len(cs) - 1
    if d == 0:
        return sorted(roots)
    ad = abs(cs[-1])
    # Fujiwara bound on root moduli
    bound = 0
    for i in range(1, d + 1):
        a = abs(cs[d - i])
        if a:
            bound = max(bound, _ceil_root(-(-a // ad), i))
    bound *= 2
    a0 = abs(cs[0])
    for r in range(1, min(bound, a0) + 1):
        if a0 % r:
            continue
        if _eval_int(cs, r) == 0:
            roots.add(r)
        if _eval_int(cs, -r) == 0:
            roots.add(-r)
    return sorted(roots)


_SPECIALIZE_SEED = 0x5EED


def specialization_points(seed=_SPECIALIZE_SEED):
    rng = random.Random(seed)
    while True:
        yield rng.randrange(11, 10007)


def integer_roots(p):
    """Integers j with p(j) = 0 exactly.

    Over QQ(n) the polynomial is specialized at a pseudo-random integer that
    keeps the leading coefficient alive; integer roots of the specialization
    are only candidates and each is confirmed by exact substitution.
    """
    if p.field is QQ:
        return integer_roots_qq(p)
    if not p:
        raise ValueError("integer_roots of the zero polynomial")
    if p.degree() == 0:
        return []
    for point in specialization_points():
        try:
            spec = [c(point) for c in p.coeffs]
        except ZeroDivisionError:
            continue
        if spec[-1] == 0:
            continue
        cands = integer_roots_qq(Poly(spec, QQ, p.var))
        return [j for j in cands if not p(p.field.convert(j))]
    raise AssertionError("unreachable")


def interpolate(xs, ys, field=QQ, var="x"):
    """Newton interpolation through the points (xs[i], ys[i])."""
    coef = list(ys)
    m = len(xs)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (field.convert(xs[i] - xs[i - j]))
    x = Poly.gen(field, var)
    result = Poly((), field, var)
    for i in range(m - 1, -1, -1):
        result = result * (x - xs[i]) + coef[i]
    return result


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution set: ``particular + span(nullspace)``; particular is None if inconsistent."""

    particular: tuple | None
    nullspace: tuple

    @property
    def consistent(self):
        return self.particular is not None


def solve_linear(matrix, rhs, field=QQ):
    """Solve ``matrix @ v = rhs`` exactly.

    Forward elimination is fraction-free (Bareiss); divisions by the previous
    pivot are exact, so polynomial entries stay polynomial.  Back substitution
    then works in the field.
    """
    rows = [[field.convert(x) for x in row] + [field.convert(b)] for row, b in zip(matrix, rhs)]
    if len(rows) != len(rhs) or len(matrix) != len(rhs):
        raise ValueError("matrix and right-hand side have inconsistent sizes")
    ncols = len(matrix[0]) if matrix else 0
    if any(len(r) != ncols + 1 for r in rows):
        raise ValueError("ragged matrix")
    m = len(rows)
    zero = field.zero
    prev = field.one
    pivots = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][col]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[col]
            for j in range(col + 1, ncols + 1):
                v = piv * row[j]
                if f and prow[j]:
                    v = v - f * prow[j]
                row[j] = v / prev if v else zero
            row[col] = zero
        prev = piv
        pivots.append(col)
        r += 1
    rank = r
    consistent = all(not rows[i][ncols] for i in range(rank, m))

    def back(free_vals, rhs_on):
        v = [zero] * ncols
        for f, val in free_vals.items():
            v[f] = val
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            acc = rows[i][ncols] if rhs_on else zero
            for j in range(pc + 1, ncols):
                if v[j] and rows[i][j]:
                    acc = acc - rows[i][j] * v[j]
            v[pc] = acc / rows[i][pc] if acc else zero
        return tuple(v)

    free = [c for c in range(ncols) if c not in set(pivots)]
    nullspace = tuple(back({f: field.one}, False) for f in free)
    particular = back({}, True) if consistent else None
    return LinearSolution(particular, nullspace)
