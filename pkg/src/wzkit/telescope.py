"""Zeilberger's creative telescoping for definite sums of proper terms.

For F(n, k) find L = sum sigma_j(n) N^j and a rational R(n, k) with

    sum_j sigma_j(n) F(n+j, k) = G(n, k+1) - G(n, k),    G = R F,

then sum over k to get L S(n) = (boundary terms).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .exact import QQ, QQn, Poly, RatFunc, integer_roots, poly_gcd, solve_linear, sum_is_zero
from .gosper import degree_candidates, gosper_form, gosper_system
from .oracle import SumRange, SumSpec, eval_sum
from .ore import ClosedForm, HyperTermN, OreOp, apply, simplify_closed_form
from .termlib import TermError, eval_term, shift_ratio, specialize_line, support_analysis

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 6
VERIFY_EXTRA = 20

__all__ = [
    "CTPair", "SumRange", "TelescopeError", "boundary_rhs", "verify_ct", "zeilberger",
]


class TelescopeError(ValueError):
    pass


@dataclass(frozen=True)
class CTPair:
    """Telescoper (canonical OreOp) and certificate R as a rational function in k over QQ(n)."""

    operator: OreOp
    certificate: RatFunc

    @property
    def order(self):
        return self.operator.order

    @property
    def sigma(self):
        return self.operator.coeffs


def _lcm(a, b):
    return a * b.exquo(poly_gcd(a, b))


def normalize_pair(sigma, cert):
    """Scale (sigma, R) by one unit of QQ(n) so sigma becomes the canonical operator."""
    den = Poly((Fraction(1),), QQ, "n")
    for s in sigma:
        den = _lcm(den, s.den)
    op = OreOp([s.num * den.exquo(s.den) for s in sigma])
    canon = op.canonical()
    top = max(i for i, s in enumerate(sigma) if s)
    unit = QQn.convert(canon.coeffs[top]) / sigma[top]
    return canon, cert * unit


def zeilberger(term, max_order=DEFAULT_MAX_ORDER):
    """Minimal-order creative-telescoping pair for ``term`` (order escalation 0..max_order)."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    r_k = shift_ratio(term, 0, 1)
    one = QQn.one
    for order in range(max_order + 1):
        ratios = [shift_ratio(term, j, 0) for j in range(order + 1)]
        common = ratios[0].den
        for p in ratios[1:]:
            common = _lcm(common, p.den)
        parts = [p.num * common.exquo(p.den) for p in ratios]
        # u = F / common; t = u * sum sigma_j parts_j
        r_u = r_k * RatFunc(common, common.shift(one))
        form = gosper_form(r_u)
        a, b, c = form.a, form.b, form.c
        bm1 = b.shift(-one)
        rhs_parts = [c * p for p in parts]
        rhs_deg = max(p.degree() for p in rhs_parts)
        degrees = degree_candidates(a, bm1, rhs_deg)
        if not degrees:
            log.debug("order %d: empty degree bound", order)
            continue
        d = degrees[-1]
        matrix = gosper_system(a, bm1, rhs_parts, d)
        sol = solve_linear(matrix, [QQn.zero] * len(matrix), QQn)
        for vec in sol.nullspace:
            sigma = list(vec[d + 1:])
            if any(sigma):
                x = Poly(vec[: d + 1], QQn, "k")
                cert = RatFunc(bm1 * x, c * common)
                op, cert = normalize_pair(sigma, cert)
                log.debug("order %d: found %s", order, op)
                return CTPair(op, cert)
        log.debug("order %d: no telescoper with deg x <= %d", order, d)
    raise TelescopeError(f"no-operator-found: no telescoper of order <= {max_order}")


def verify_ct(term, pair):
    """Exact check of sum_j sigma_j F(n+j,k)/F(n,k) = R(n,k+1) F(n,k+1)/F(n,k) - R(n,k)."""
    R = pair.certificate
    terms = [shift_ratio(term, j, 0) * QQn.convert(s) for j, s in enumerate(pair.operator.coeffs) if s]
    terms += [-(R.shift(QQn.one) * shift_ratio(term, 0, 1)), R]
    return sum_is_zero(terms)


# -- boundary terms -------------------------------------------------------------

def _cleared(R):
    """(P, Q) in QQ[n][k] (as polys over QQ(n) with polynomial coefficients) with R = P/Q."""
    den = Poly((Fraction(1),), QQ, "n")
    for c in R.num.coeffs + R.den.coeffs:
        den = _lcm(den, c.den)
    lift = QQn.convert(den)
    return R.num * lift, R.den * lift


def eval_certificate(R, n0, k0):
    """R(n0, k0) from the cleared bivariate form; ZeroDivisionError at poles."""
    P, Q = _cleared(R)
    ev = lambda p: sum((c.num(Fraction(n0)) * Fraction(k0) ** i for i, c in enumerate(p.coeffs)),
                       Fraction(0))
    q = ev(Q)
    if not q:
        raise ZeroDivisionError(f"certificate pole at n={n0}, k={k0}")
    return ev(P) / q


def certificate_on_line(R, beta, gamma):
    """R(n, beta*n + gamma) as a rational function of n."""
    kval = QQn.convert(Poly((gamma, beta), QQ, "n"))
    den = R.den(kval)
    if not den:
        raise TelescopeError(f"pole-on-boundary: certificate singular on k = {beta}*n{gamma:+d}")
    return R.num(kval) / den


def _g_value(term, R, n0, k0):
    f = eval_term(term, n0, k0)
    if not f:
        try:
            eval_certificate(R, n0, k0)
        except ZeroDivisionError:
            raise
        return Fraction(0)
    return eval_certificate(R, n0, k0) * f


def _threshold(slope, const):
    """Least n0 >= 0 with slope*n + const >= 0 for all n >= n0, or None."""
    if slope < 0:
        return None
    if slope == 0:
        return 0 if const >= 0 else None
    return max(0, -(const // slope))


def _window_start(info, rng, order, top):
    """First n from which F(n+j, k) = 0 for b(n+j) < k <= top(n), all j <= order."""
    beta, gamma = rng.beta, rng.gamma
    n0 = 0
    for j in range(order + 1):
        # window empty when top(n) <= b(n+j) for all n
        if top[0] == beta and top[1] <= beta * j + gamma:
            continue
        best = None
        for reg in info.regions:
            cands = []
            if reg.lo is not None:
                # lo(n+j) <= b(n+j)
                cands.append(_threshold(beta - reg.lo[0], (beta - reg.lo[0]) * j + gamma - reg.lo[1]))
            if reg.hi is not None:
                # hi(n+j) >= top(n)
                cands.append(_threshold(reg.hi[0] - top[0], reg.hi[0] * j + reg.hi[1] - top[1]))
            if any(c is None for c in cands):
                continue
            start = max(cands, default=0)
            best = start if best is None else min(best, start)
        if best is None:
            return None
        n0 = max(n0, best)
    return n0


def _lower_start(info, rng, order, depth):
    """First n from which F(n+j, k) = 0 for lower-depth <= k < lower, all j."""
    if depth == 0:
        return 0
    n0 = 0
    lo_k = rng.lower - depth
    for _ in range(order + 1):
        best = None
        for reg in info.regions:
            # need lo(m) < lo_k and hi(m) >= lower - 1 for every m >= n0
            cands = []
            if reg.lo is not None:
                cands.append(_threshold(-reg.lo[0], lo_k - 1 - reg.lo[1]))
            if reg.hi is not None:
                cands.append(_threshold(reg.hi[0], reg.hi[1] - (rng.lower - 1)))
            if any(c is None for c in cands):
                continue
            start = max(cands, default=0)
            best = start if best is None else min(best, start)
        if best is None:
            return None
        n0 = max(n0, best)
    return n0


def _symbolic_boundary(term, R, beta, gamma):
    """G(n, beta*n + gamma) as a HyperTermN (starting wherever it is regular)."""
    r = certificate_on_line(R, beta, gamma)
    if not r:
        return HyperTermN(0, Fraction(0), QQn.one)
    f = specialize_line(term, beta, gamma)
    return f.times_ratfunc(r)


def _concrete_rhs(term, pair, rng, n):
    """Boundary value at one concrete n, with explicit corrections for the extension."""
    sig = [c(Fraction(n)) for c in pair.operator.coeffs]
    order = pair.order
    tops = [rng.upper(n + j) for j in range(order + 1)]
    kmax = max(tops + [rng.lower - 1])
    R = pair.certificate
    for extra in range(4):
        for depth in range(4):
            hi_k, lo_k = kmax + extra, rng.lower - depth
            try:
                g = _g_value(term, R, n, hi_k + 1) - _g_value(term, R, n, lo_k)
            except ZeroDivisionError:
                continue
            corr = Fraction(0)
            for j, s in enumerate(sig):
                if not s:
                    continue
                tail = range(max(tops[j] + 1, rng.lower), hi_k + 1)
                head = range(lo_k, rng.lower)
                corr += s * sum((eval_term(term, n + j, k) for k in (*tail, *head)), Fraction(0))
            return g - corr
    raise TelescopeError(f"pole-on-boundary: no regular boundary points at n={n}")


def certificate_pole_audit(R, lower):
    """Constant integer k-poles of R at or above ``lower``."""
    P, Q = _cleared(R)
    if Q.degree() <= 0:
        return []
    return [k for k in integer_roots(Q) if k >= lower]


def boundary_rhs(term, pair, rng, verify=True):
    """Right-hand side of L S(n) = RHS(n) for S(n) = sum_{k=lower}^{beta n + gamma} F(n, k)."""
    order = pair.order
    R = pair.certificate
    beta, gamma = rng.beta, rng.gamma
    info = support_analysis(term, order)
    poles = certificate_pole_audit(R, rng.lower)
    if poles:
        log.info("certificate has constant k-poles %s inside the summation range", poles)
    best = None
    for extra in range(4):
        top = (beta, beta * order + gamma + extra)
        n_up = _window_start(info, rng, order, top)
        if n_up is None:
            continue
        for depth in range(4):
            n_lo = _lower_start(info, rng, order, depth)
            if n_lo is None:
                continue
            try:
                up = _symbolic_boundary(term, R, top[0], top[1] + 1)
                lo = _symbolic_boundary(term, R, 0, rng.lower - depth)
            except (TelescopeError, TermError):
                continue
            start = max(n_up, n_lo, up.start, lo.start, rng.start)
            if best is None or start < best[0]:
                best = (start, up, lo)
        if best is not None and best[0] <= rng.start:
            break
    if best is None:
        raise TelescopeError("unsupported-range: no certified extension line for the upper bound")
    start, up, lo = best
    prefix = {n: _concrete_rhs(term, pair, rng, n) for n in range(rng.start, start)}
    up = up.restart(start, prefix)
    lo = lo.restart(start, {n: Fraction(0) for n in prefix})
    rhs = ClosedForm(tuple(t for t in (up, -lo) if not t.is_zero()))
    if rhs.is_zero():
        rhs = ClosedForm.zero()
    if verify:
        spec = SumSpec(term, rng)
        hi = start + order + VERIFY_EXTRA
        values = {n: eval_sum(spec, n) for n in range(rng.start, hi + order + 1)}
        for n in range(rng.start, hi + 1):
            if apply(pair.operator, values, n) != rhs.eval(n):
                raise TelescopeError(f"verification-failed: recurrence disagrees with direct sums at n={n}")
    return simplify_closed_form(rhs)
