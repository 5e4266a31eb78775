"""Brute-force ground truth: exact sums, exact polynomial integrals, recurrence checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QQ, Poly
from .ore import OreError, apply
from .termlib import binom, eval_term


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class SumRange:
    """k runs from ``lower`` to ``beta*n + gamma``; meaningful for n >= start."""

    lower: int
    beta: int
    gamma: int
    start: int = 0

    def upper(self, n):
        return self.beta * n + self.gamma

    def __str__(self):
        up = {0: "", 1: "n", -1: "-n"}.get(self.beta, f"{self.beta}*n")
        if self.gamma or not up:
            up += f"{self.gamma:+d}" if up else str(self.gamma)
        return f"{self.lower}..{up}"


@dataclass(frozen=True)
class SumSpec:
    term: object
    range: SumRange


@dataclass(frozen=True)
class PolyIntegralSpec:
    """scale * integral_a^b weight(x) * base(x)^n dx."""

    scale: Fraction
    base: Poly
    a: Fraction
    b: Fraction
    weight: Poly | None = None


def eval_sum(spec, n):
    if n < 0:
        raise OracleError("sums are evaluated for n >= 0 only")
    rng = spec.range
    return sum((eval_term(spec.term, n, k) for k in range(rng.lower, rng.upper(n) + 1)),
               Fraction(0))


def sum_values(spec, lo, hi):
    return {n: eval_sum(spec, n) for n in range(lo, hi + 1)}


def _antiderivative(p):
    return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p.coeffs)], QQ, p.var)


def _binomial_shape(base):
    """(m, alpha, beta) with base = x^m (alpha + beta x), or None."""
    cs = base.coeffs
    m = next(i for i, c in enumerate(cs) if c)
    rest = cs[m:]
    if len(rest) != 2:
        return None
    return m, rest[0], rest[1]


def eval_integral(spec, n, strategy="expand"):
    """Exact scale * integral of weight * base^n over [a, b]."""
    if n < 0:
        raise OracleError("integrals are evaluated for n >= 0 only")
    a, b = Fraction(spec.a), Fraction(spec.b)
    if strategy == "expand":
        integrand = spec.base ** n
        if spec.weight is not None:
            integrand = integrand * spec.weight
        prim = _antiderivative(integrand)
        return spec.scale * (prim(b) - prim(a))
    if strategy == "binomial":
        shape = _binomial_shape(spec.base)
        if shape is None or (spec.weight is not None and spec.weight.degree() > 0):
            raise OracleError("strategy-unavailable: base is not x^m times a linear polynomial")
        m, alpha, beta = shape
        w = spec.weight.lc() if spec.weight is not None else Fraction(1)
        total = Fraction(0)
        for j in range(n + 1):
            e = m * n + j + 1
            total += binom(n, j) * alpha ** (n - j) * beta ** j * (b ** e - a ** e) / e
        return spec.scale * w * total
    raise OracleError(f"unknown strategy {strategy!r}")


def integral_values(spec, lo, hi, strategy="expand"):
    return {n: eval_integral(spec, n, strategy) for n in range(lo, hi + 1)}


def check_recurrence(values, op, rhs, n_lo, n_hi):
    """True iff (op values)(n) == rhs(n) for every n in [n_lo, n_hi]."""
    for n in range(n_lo, n_hi + 1):
        try:
            lhs = apply(op, values, n)
        except OreError as exc:
            raise OracleError(str(exc)) from None
        if lhs != rhs.eval(n):
            return False
    return True
