"""Continuous creative telescoping for integrands c(x) f(x)^n.

Find L = sum sigma_j(n) N^j and R(n, x) with L F = D_x(R F).  Dividing by F,

    sum_j sigma_j f^j = R' + R * (c'/c + n f'/f).

With the ansatz R = X(x) / W(x), W = f^m den(c), and l = c'/c + n f'/f - W'/W = ln/ld,
this becomes the polynomial identity ld W sum_j sigma_j f^j = ld X' + ln X,
linear in sigma and in the coefficients of X.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .exact import QQn, Poly, RatFunc, integer_roots_qq, solve_linear, sum_is_zero
from .ore import ClosedForm, HyperTermN, OreOp, simplify_closed_form
from .telescope import DEFAULT_MAX_ORDER, normalize_pair

log = logging.getLogger(__name__)

DEGREE_ESCALATION = 3


class AZError(ValueError):
    pass


@dataclass(frozen=True)
class ContCTPair:
    operator: OreOp
    certificate: RatFunc  # in x over QQ(n)

    @property
    def order(self):
        return self.operator.order

    @property
    def sigma(self):
        return self.operator.coeffs


def _lift(p):
    return p.map_coeffs(QQn.convert, QQn)


def _xpoly_system(ld_w_fpowers, ld, ln, deg_x):
    """Columns for unknowns x_0..x_deg followed by sigma_j; rows are x-coefficients."""
    x = Poly.gen(QQn, "x")
    cols = []
    for i in range(deg_x + 1):
        mono = x ** i
        cols.append(ld * mono.derivative() + ln * mono)
    cols.extend(-p for p in ld_w_fpowers)
    nrows = max(c.degree() for c in cols) + 1
    return [[c[r] for c in cols] for r in range(nrows)]


def az(term, max_order=DEFAULT_MAX_ORDER):
    """Minimal-order continuous telescoping pair for a HyperexpTerm."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    f = _lift(term.base)
    cden = _lift(term.prefactor.den)
    logd = term.log_derivative()
    for order in range(max_order + 1):
        for m in range(order + 1):
            w = f ** m * cden
            ell = logd - RatFunc(w.derivative(), w)
            ld, ln = ell.den, ell.num
            parts = [ld * w * f ** j for j in range(order + 1)]
            lhs_deg = max(p.degree() for p in parts)
            slope = max(ld.degree() - 1, ln.degree())
            base_deg = max(lhs_deg - slope, 0)
            top_deg = max(base_deg, f.degree() * (order + 1)) + DEGREE_ESCALATION
            for deg_x in range(base_deg, top_deg + 1):
                matrix = _xpoly_system(parts, ld, ln, deg_x)
                sol = solve_linear(matrix, [QQn.zero] * len(matrix), QQn)
                for vec in sol.nullspace:
                    sigma = list(vec[deg_x + 1:])
                    if any(sigma):
                        X = Poly(vec[: deg_x + 1], QQn, "x")
                        cert = RatFunc(X, w)
                        op, cert = normalize_pair(sigma, cert)
                        log.debug("order %d (m=%d, deg X=%d): %s", order, m, deg_x, op)
                        return ContCTPair(op, cert)
    raise AZError(f"no-operator-found: no telescoper of order <= {max_order}")


def verify_az(term, pair):
    """Exact identity sum sigma_j f^j == R' + R (c'/c + n f'/f) in QQ(n)(x)."""
    f = _lift(term.base)
    fj = Poly((QQn.one,), QQn, "x")
    lhs = Poly((), QQn, "x")
    for s in pair.operator.coeffs:
        if s:
            lhs = lhs + fj * QQn.convert(s)
        fj = fj * f
    R = pair.certificate
    return sum_is_zero([RatFunc(lhs), -R.derivative(), -(R * term.log_derivative())])


def certificate_at(R, x0):
    """R(n, x0) as a rational function of n."""
    x0 = QQn.convert(Fraction(x0))
    den = R.den(x0)
    if not den:
        raise AZError(f"pole-at-endpoint: certificate singular at x = {x0}")
    return R.num(x0) / den


def _endpoint_term(term, R, x0):
    """The sequence n -> R(n, x0) c(x0) f(x0)^n."""
    x0 = Fraction(x0)
    try:
        cval = term.prefactor(x0)
    except ZeroDivisionError:
        raise AZError(f"pole-at-endpoint: prefactor singular at x = {x0}") from None
    r = certificate_at(R, x0) * QQn.convert(cval)
    fval = term.base(x0)
    if not r:
        return None
    if not fval:
        # 0^n: only n = 0 survives
        try:
            v0 = r(Fraction(0))
        except ZeroDivisionError:
            raise AZError("pole-at-integer: certificate singular at n = 0") from None
        return HyperTermN(1, Fraction(0), QQn.zero, ((0, v0),) if v0 else ((0, Fraction(0)),))
    geo = HyperTermN(0, Fraction(1), QQn.convert(fval))
    poles = [p for p in integer_roots_qq(r.den) if p >= 0] if r.den.degree() > 0 else []
    if poles:
        log.warning("pole-at-integer: boundary term undefined at n in %s", poles)
    return geo.times_ratfunc(r)


def az_definite(term, pair, a, b):
    """RHS(n) = G(n, b) - G(n, a) with G = R c f^n, as a ClosedForm."""
    R = pair.certificate
    terms = []
    up = _endpoint_term(term, R, b)
    lo = _endpoint_term(term, R, a)
    if up is not None:
        terms.append(up)
    if lo is not None:
        terms.append(-lo)
    rhs = ClosedForm(tuple(terms))
    if rhs.is_zero():
        return ClosedForm.zero()
    return simplify_closed_form(rhs)


# -- pointwise check through forward-mode differentiation ----------------------------

@dataclass(frozen=True)
class Dual:
    """a + b*eps with eps^2 = 0; b carries the x-derivative."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __add__(self, o):
        o = _dual(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _dual(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        o = _dual(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _dual(o)
        if not o.a:
            raise ZeroDivisionError("dual division by zero")
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __pow__(self, e):
        if e == 0:
            return Dual(Fraction(1))
        if not self.a:
            return Dual(Fraction(0), self.b if e == 1 else Fraction(0))
        return Dual(self.a ** e, e * self.a ** (e - 1) * self.b)


def _dual(v):
    return v if isinstance(v, Dual) else Dual(Fraction(v))


def _horner(coeffs, x):
    acc = Dual(Fraction(0))
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def check_at_point(term, pair, n0, x0):
    """sum_j sigma_j(n0) F(n0+j, x0) == d/dx (R F)(n0, x0); None at a singular point."""
    x = Dual(Fraction(x0), Fraction(1))
    try:
        c = _horner(term.prefactor.num.coeffs, x) / _horner(term.prefactor.den.coeffs, x)
        f = _horner(term.base.coeffs, x)
        R = pair.certificate
        rn = _horner([v(Fraction(n0)) for v in R.num.coeffs], x)
        rd = _horner([v(Fraction(n0)) for v in R.den.coeffs], x)
        g = rn / rd * c * f ** n0
        lhs = sum((s(Fraction(n0)) * c.a * f.a ** (n0 + j)
                   for j, s in enumerate(pair.operator.coeffs)), Fraction(0))
    except ZeroDivisionError:
        return None
    return lhs == g.b
