"""Proof artifacts: JSON serialization and independent re-verification.

An artifact stores the input text, the operator, the right-hand side and the
cleared certificate P/Q with P, Q in QQ[n][k] (or QQ[n][x]).  Checking it uses
only parsing, exact arithmetic, term evaluation and brute-force oracles; no
discovery code runs.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from . import __version__
from .azint import ContCTPair, check_at_point
from .exact import QQ, QQn, Poly, RatFunc, poly_gcd, sum_is_zero
from .oracle import PolyIntegralSpec, SumSpec, eval_integral, eval_sum
from .ore import ClosedForm, HyperTermN, OreError, OreOp, apply
from .reader import parse_bounds, parse_range, parse_term, print_operator
from .termlib import HyperexpTerm, TermError, eval_term, shift_ratio

SCHEMA = "wzkit-proof/1"
SUM_WINDOW = 30
INTEGRAL_WINDOW = 20


class ArtifactError(ValueError):
    pass


# -- encoding ---------------------------------------------------------------------

def enc_q(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def dec_q(s):
    if not isinstance(s, str):
        raise ArtifactError(f"expected a 'p/q' string, got {s!r}")
    return Fraction(s)


def enc_npoly(p):
    return [enc_q(c) for c in p.coeffs]


def dec_npoly(cs, var="n"):
    return Poly([dec_q(c) for c in cs], QQ, var)


def enc_ratfunc_n(r):
    r = QQn.convert(r)
    return {"num": enc_npoly(r.num), "den": enc_npoly(r.den)}


def dec_ratfunc_n(d):
    return RatFunc(dec_npoly(d["num"]), dec_npoly(d["den"]))


def enc_closed_form(cf):
    return [{
        "start": t.start,
        "value": enc_q(t.value),
        "quotient": enc_ratfunc_n(t.quotient),
        "prefix": [[m, enc_q(v)] for m, v in t.prefix],
    } for t in cf.terms]


def dec_closed_form(items):
    return ClosedForm(tuple(
        HyperTermN(d["start"], dec_q(d["value"]), dec_ratfunc_n(d["quotient"]),
                   tuple((m, dec_q(v)) for m, v in d["prefix"]))
        for d in items))


def cleared(R):
    """(P, Q) as lists (by power of the main variable) of integer-coefficient n-polynomials."""
    coeffs = R.num.coeffs + R.den.coeffs
    big = Poly((Fraction(1),), QQ, "n")
    for c in coeffs:
        big = big * c.den.exquo(poly_gcd(big, c.den))
    rows = [[c.num * big.exquo(c.den) for c in p.coeffs] for p in (R.num, R.den)]
    den = lcm(*(Fraction(q).denominator for row in rows for p in row for q in p.coeffs))
    return [[p * Fraction(den) for p in row] for row in rows]


def enc_certificate(R):
    P, Q = cleared(R)
    return {
        "var": R.num.var,
        "num": [enc_npoly(p) for p in P],
        "den": [enc_npoly(p) for p in Q],
        "text": str(R),
    }


def dec_certificate(d):
    var = d["var"]
    num = Poly([QQn.convert(dec_npoly(c)) for c in d["num"]], QQn, var)
    den = Poly([QQn.convert(dec_npoly(c)) for c in d["den"]], QQn, var)
    if not den:
        raise ArtifactError("certificate denominator is zero")
    return RatFunc(num, den)


def enc_operator(op, rhs):
    return {
        "coefficients": [enc_npoly(c) for c in op.coeffs],
        "canonical": print_operator(op),
        "paper": print_operator(op, rhs, "paper"),
    }


def dec_operator(d):
    return OreOp([dec_npoly(c) for c in d["coefficients"]])


def dumps(artifact):
    return json.dumps(artifact, indent=2, sort_keys=True) + "\n"


def build(kind, text, where, op, rhs, certificate, report, seconds):
    """Artifact dictionary; ``where`` is the range text (sums) or the bounds text (integrals)."""
    inp = {"term": text}
    inp["range" if kind == "sum" else "bounds"] = where
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "kind": kind,
        "input": inp,
        "operator": enc_operator(op, rhs),
        "rhs": enc_closed_form(rhs),
        "certificate": enc_certificate(certificate),
        "verification": report,
        "timing": {"seconds": round(seconds, 6)},
    }


# -- checks -----------------------------------------------------------------------

def sum_identity(term, op, R):
    """Symbolic check: sum_j sigma_j F(n+j,k)/F(n,k) == R(k+1) F(n,k+1)/F(n,k) - R(k)."""
    terms = [shift_ratio(term, j, 0) * QQn.convert(s) for j, s in enumerate(op.coeffs) if s]
    return sum_is_zero(terms + [-(R.shift(QQn.one) * shift_ratio(term, 0, 1)), R])


def _r_value(R, n0, k0):
    num = R.num.map_coeffs(lambda c: c(Fraction(n0)), QQ)
    den = R.den.map_coeffs(lambda c: c(Fraction(n0)), QQ)
    d = den(Fraction(k0))
    if not d:
        raise ZeroDivisionError
    return num(Fraction(k0)) / d


def sum_points(term, op, R, n_max=6, k_lo=-2, k_hi=10):
    """Concrete check of sum_j sigma_j F(n+j,k) = G(n,k+1) - G(n,k); returns (checked, failures)."""
    checked, failures = 0, []
    for n0 in range(n_max + 1):
        for k0 in range(k_lo, k_hi + 1):
            try:
                sig = [c(Fraction(n0)) for c in op.coeffs]
                lhs = sum((s * eval_term(term, n0 + j, k0) for j, s in enumerate(sig)), Fraction(0))
                g1 = _r_value(R, n0, k0 + 1) * eval_term(term, n0, k0 + 1)
                g0 = _r_value(R, n0, k0) * eval_term(term, n0, k0)
            except (ZeroDivisionError, TermError):
                continue
            checked += 1
            if lhs != g1 - g0:
                failures.append((n0, k0))
    return checked, failures


def integral_identity(term, op, R):
    """Symbolic check: sum_j sigma_j f^j == R' + R (c'/c + n f'/f)."""
    f = term.base.map_coeffs(QQn.convert, QQn)
    fj = Poly((QQn.one,), QQn, "x")
    lhs = Poly((), QQn, "x")
    for s in op.coeffs:
        if s:
            lhs = lhs + fj * QQn.convert(s)
        fj = fj * f
    return sum_is_zero([RatFunc(lhs), -R.derivative(), -(R * term.log_derivative())])


def integral_spec(term, a, b):
    """Oracle spec for a polynomial-times-power integrand, or None."""
    c = term.prefactor
    if c.den.degree() > 0:
        return None
    scale = 1 / c.den[0]
    weight = None if c.num.degree() == 0 else c.num
    if weight is None:
        scale *= c.num[0]
    return PolyIntegralSpec(scale, term.base, a, b, weight)


def oracle_check(values, op, rhs, lo, hi):
    for n in range(lo, hi + 1):
        try:
            if apply(op, values, n) != rhs.eval(n):
                return False
        except OreError:
            return False
    return True


def sum_oracle(term, rng, op, rhs, window=SUM_WINDOW):
    spec = SumSpec(term, rng)
    lo, hi = rng.start, window
    values = {n: eval_sum(spec, n) for n in range(lo, hi + op.order + 1)}
    return [lo, hi], oracle_check(values, op, rhs, lo, hi)


def integral_oracle(term, a, b, op, rhs, window=INTEGRAL_WINDOW):
    spec = integral_spec(term, a, b)
    if spec is None:
        return None, None
    values = {n: eval_integral(spec, n) for n in range(0, window + op.order + 1)}
    return [0, window], oracle_check(values, op, rhs, 0, window)


def verify_artifact(art):
    """List of failure descriptions (empty when the artifact checks out)."""
    failures = []
    if art.get("schema") != SCHEMA:
        return [f"unknown schema {art.get('schema')!r}"]
    try:
        term = parse_term(art["input"]["term"])
        op = dec_operator(art["operator"])
        rhs = dec_closed_form(art["rhs"])
        R = dec_certificate(art["certificate"])
    except (KeyError, TypeError, ValueError) as exc:
        return [f"malformed artifact: {exc}"]
    if not op:
        return ["operator is zero"]
    if art["operator"].get("canonical") != print_operator(op):
        failures.append("canonical operator text does not match the coefficients")
    if art["kind"] == "sum":
        if isinstance(term, HyperexpTerm):
            return ["sum artifact holds an integrand"]
        rng = parse_range(art["input"]["range"])
        if not sum_identity(term, op, R):
            failures.append("certificate identity fails")
        checked, bad = sum_points(term, op, R)
        if bad or not checked:
            failures.append(f"pointwise telescoping fails at {bad[:5]}" if bad
                            else "no regular points for the pointwise check")
        window, ok = sum_oracle(term, rng, op, rhs)
        if not ok:
            failures.append(f"recurrence disagrees with direct sums on n in {window}")
    elif art["kind"] == "integral":
        if not isinstance(term, HyperexpTerm):
            return ["integral artifact holds a summand"]
        a, b = parse_bounds(art["input"]["bounds"])
        if not integral_identity(term, op, R):
            failures.append("certificate identity fails")
        pair = ContCTPair(op, R)
        pts = [(n0, Fraction(i, 7)) for n0 in range(0, 6) for i in range(-9, 12, 4)]
        res = [check_at_point(term, pair, n0, x0) for n0, x0 in pts]
        if False in res or not any(res):
            failures.append("pointwise derivative check fails")
        window, ok = integral_oracle(term, a, b, op, rhs)
        if ok is False:
            failures.append(f"recurrence disagrees with exact integrals on n in {window}")
    else:
        failures.append(f"unknown kind {art['kind']!r}")
    return failures
