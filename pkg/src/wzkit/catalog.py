"""The worked inputs: four equal binomial sums, the A006256 sum, two equal integrals.

Everything here is stored as parser text so the same strings drive the CLI,
the regression suite and the tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QQ, Poly, RatFunc
from .oracle import PolyIntegralSpec, SumSpec
from .ore import ClosedForm, HyperTermN, OreOp
from .reader import parse_bounds, parse_range, parse_term


@dataclass(frozen=True)
class SumEntry:
    name: str
    text: str
    range_text: str

    def spec(self):
        return SumSpec(parse_term(self.text), parse_range(self.range_text))


@dataclass(frozen=True)
class IntegralEntry:
    name: str
    text: str
    bounds_text: str

    def term(self):
        return parse_term(self.text)

    def spec(self):
        """Oracle view: scale * integral of base^n (the prefactor must be constant)."""
        t = self.term()
        c = t.prefactor
        if c.num.degree() > 0 or c.den.degree() > 0:
            raise ValueError("oracle integrals need a constant prefactor")
        a, b = parse_bounds(self.bounds_text)
        return PolyIntegralSpec(c.num[0] / c.den[0], t.base, a, b)


FOUR_SUMS = (
    SumEntry("pow3_binom_3n-k_2n", "3**j*binomial(3*n-j,2*n)", "0..n"),
    SumEntry("powm3_binom_3n-k_n", "(-3)**j*binomial(3*n-j,n)", "0..2*n"),
    SumEntry("pow2_binom_3n+1_n-k", "2**j*binomial(3*n+1,n-j)", "0..n"),
    SumEntry("powm4_binom_3n+1_n+k+1", "(-4)**j*binomial(3*n+1,n+j+1)", "0..2*n"),
)

A006256_SUM = SumEntry("a006256", "binomial(3*k,k)*binomial(3*n-3*k,n-k)", "0..n")

INTEGRALS = (
    IntegralEntry("cubic_wide", "(3*x^2-2*x^3)^n", "-1/2..3/2"),
    IntegralEntry("cubic_unit", "2*(3*x^2-2*x^3)^n", "0..1"),
)


def _np(*cs):
    return Poly([Fraction(c) for c in cs], QQ, "n")


# Expected results, transcribed as data.
FOUR_SUM_OPERATOR = OreOp([_np(-27), _np(4)])
# -3 (3n+1)! / ((2n+1)! (n+1)!): value -3 at n = 0, ratio 3(3n+2)(3n+4) / (2(2n+3)(n+2))
FOUR_SUM_RHS = ClosedForm((HyperTermN(
    0, Fraction(-3),
    RatFunc(_np(24, 54, 27), _np(12, 14, 4)),
),))
A006256_OPERATOR = OreOp([
    _np(-648, -1458, -729),    # -81 (3n+2)(3n+4)
    _np(420, 594, 216),
    _np(-48, -56, -16),        # -8 (2n+3)(n+2)
])
INTEGRAL_PAPER_OUTPUT = "[9*(n+1)*(2*n+1) - 2*(3*n+4)*(3*n+2)*N, 2]"
INTEGRAL_OPERATOR = OreOp([_np(9, 27, 18), _np(-16, -36, -18)])
INTEGRAL_RHS = ClosedForm.constant(2)
INTEGRAL_AT_ZERO = Fraction(2)
