"""Gosper's algorithm over an arbitrary coefficient field (QQ or QQ(n)).

The parametrized variant used by Zeilberger's algorithm shares the same
linear-system builder: unknown coefficients of x(k) and extra parameters are
solved for jointly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QQ, Poly, RatFunc, integer_roots_qq, interpolate, poly_gcd, resultant, solve_linear
from .exact.algebra import specialization_points


@dataclass(frozen=True)
class GosperForm:
    """r(k) = a(k)/b(k) * c(k+1)/c(k) with gcd(a(k), b(k+h)) = 1 for all h >= 0."""

    a: Poly
    b: Poly
    c: Poly


@dataclass(frozen=True)
class GosperCertificate:
    """y with y(k+1) r(k) - y(k) = 1, i.e. T = y t telescopes t."""

    y: RatFunc


def _specialize(p, point):
    """Map a polynomial over QQ(n) to QQ at n = point (QQ polys pass through)."""
    if p.field is QQ:
        return p
    return Poly([c(point) for c in p.coeffs], QQ, p.var)


def _resultant_in_shift(a, b):
    """Res_k(a(k), b(k+h)) as a polynomial in h over QQ, by interpolation in h."""
    deg = a.degree() * b.degree()
    hs = list(range(deg + 1))
    vals = [resultant(a, b.shift(Fraction(h))) for h in hs]
    return interpolate(hs, vals, QQ, "h")


def dispersion_set(a, b):
    """Nonnegative integers h with deg gcd(a(k), b(k+h)) >= 1.

    Over QQ(n) the resultant is taken after specializing n at a point that
    keeps both leading coefficients alive, which can only add candidates;
    every candidate is then confirmed with an exact gcd over the full field.
    """
    if a.degree() <= 0 or b.degree() <= 0:
        return []
    if a.field is QQ:
        sa, sb = a, b
    else:
        for point in specialization_points():
            try:
                sa, sb = _specialize(a, point), _specialize(b, point)
            except ZeroDivisionError:
                continue
            if sa.degree() == a.degree() and sb.degree() == b.degree():
                break
    res = _resultant_in_shift(sa, sb)
    if not res:
        raise ArithmeticError("specialized resultant vanished identically")
    cands = [h for h in integer_roots_qq(res) if h >= 0]
    one = a.field.one
    return [h for h in cands if poly_gcd(a, b.shift(one * h)).degree() > 0]


def gosper_form(r):
    """Gosper-Petkovsek normal form of a nonzero rational function in k."""
    if not r:
        raise ValueError("gosper_form of zero")
    a, b = r.num, r.den
    c = a.one()
    field = a.field
    for h in dispersion_set(a, b):
        g = poly_gcd(a, b.shift(field.one * h))
        if g.degree() <= 0:
            continue
        a = a.exquo(g)
        b = b.exquo(g.shift(-field.one * h))
        for i in range(1, h + 1):
            c = c * g.shift(-field.one * i)
    return GosperForm(a, b, c)


def degree_candidates(a, bm1, rhs_degree):
    """Possible degrees of polynomial x with a(k) x(k+1) - b(k-1) x(k) of degree rhs_degree."""
    da, db = a.degree(), bm1.degree()
    out = []
    if da != db or a.lc() != bm1.lc():
        out.append(rhs_degree - max(da, db))
    else:
        out.append(rhs_degree - da + 1)
        diff = bm1[da - 1] - a[da - 1] if da > 0 else a.field.zero
        d0 = diff / a.lc()
        d0 = _as_integer(d0)
        if d0 is not None:
            out.append(d0)
    return sorted({d for d in out if d >= 0})


def _as_integer(x):
    """Integer value of a field element, or None if it is not a rational integer."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, RatFunc):
        if x.num.degree() <= 0 and x.den.degree() == 0:
            return _as_integer(x.num.lc() / x.den.lc() if x.num else Fraction(0))
        return None
    return None


def gosper_system(a, bm1, rhs_parts, degree):
    """Linear system for a(k) x(k+1) - b(k-1) x(k) = sum_j s_j * rhs_parts[j].

    Unknowns are x_0..x_degree followed by s_j; all equations are homogeneous.
    """
    field = a.field
    k = Poly.gen(field, a.var)
    cols = []
    for i in range(degree + 1):
        mono = k ** i
        cols.append(a * mono.shift(field.one) - bm1 * mono)
    cols.extend(-p for p in rhs_parts)
    nrows = max([col.degree() for col in cols] + [0]) + 1
    matrix = [[col[i] for col in cols] for i in range(nrows)]
    return matrix


def gosper(r):
    """Indefinite summation certificate for a hypergeometric term with ratio r, or None."""
    form = gosper_form(r)
    a, b, c = form.a, form.b, form.c
    field = a.field
    bm1 = b.shift(-field.one)
    degrees = degree_candidates(a, bm1, c.degree())
    if not degrees:
        return None
    matrix = gosper_system(a, bm1, [c], degrees[-1])
    sol = solve_linear(matrix, [field.zero] * len(matrix), field)
    for vec in sol.nullspace:
        s = vec[-1]
        if s:
            x = Poly([v / s for v in vec[:-1]], field, a.var)
            return GosperCertificate(RatFunc(bm1 * x, c))
    return None


def check_certificate(r, cert):
    """y(k+1) r(k) - y(k) == 1 as an exact rational identity."""
    y = cert.y
    return y.shift(r.base.one) * r - y == 1
