import random
from fractions import Fraction

import pytest

from wzkit import catalog
from wzkit.azint import AZError, ContCTPair, az, az_definite, certificate_at, check_at_point, verify_az
from wzkit.exact import QQ, QQn, Poly, RatFunc
from wzkit.oracle import PolyIntegralSpec, check_recurrence, eval_integral, integral_values
from wzkit.ore import ClosedForm, OreOp, closed_form_equal, equal_up_to_unit
from wzkit.reader import parse_bounds, parse_term
from wzkit.termlib import HyperexpTerm


def xpoly(*cs):
    return Poly([QQn.convert(c) for c in cs], QQn, "x")


def npoly(*cs):
    return Poly([Fraction(c) for c in cs], QQ, "n")


@pytest.fixture(scope="module")
def cubic_pairs():
    return {e.name: (e, e.term(), az(e.term())) for e in catalog.INTEGRALS}


def test_cubic_operator(cubic_pairs):
    for entry, term, pair in cubic_pairs.values():
        assert pair.order == 1
        assert equal_up_to_unit(pair.operator, catalog.INTEGRAL_OPERATOR)
        assert verify_az(term, pair)


def test_cubic_rhs_and_shared_output(cubic_pairs):
    outs = []
    for entry, term, pair in cubic_pairs.values():
        a, b = parse_bounds(entry.bounds_text)
        rhs = az_definite(term, pair, a, b)
        # operator normalized with a positive leading coefficient, so the printed 2 appears as -2
        assert closed_form_equal(rhs, ClosedForm.constant(-2))
        outs.append((pair.operator, rhs))
    assert outs[0][0] == outs[1][0] and closed_form_equal(outs[0][1], outs[1][1])


@pytest.mark.parametrize("entry", catalog.INTEGRALS, ids=lambda e: e.name)
def test_recurrence_against_exact_integrals(entry):
    term = entry.term()
    pair = az(term)
    a, b = parse_bounds(entry.bounds_text)
    rhs = az_definite(term, pair, a, b)
    values = integral_values(entry.spec(), 0, 21)
    assert check_recurrence(values, pair.operator, rhs, 0, 20)
    assert values[0] == catalog.INTEGRAL_AT_ZERO


def test_power_of_x_has_order_zero():
    term = parse_term("x^n")
    pair = az(term)
    assert pair.order == 0
    assert equal_up_to_unit(pair.operator, OreOp([npoly(1, 1)]))
    assert verify_az(term, pair)
    # normalized to L = 1, the right side is the integral itself
    rhs = az_definite(term, pair, 0, 1)
    assert [rhs.eval(m) for m in range(8)] == [Fraction(1, m + 1) for m in range(8)]


def test_hand_built_pair_for_power_of_x():
    term = parse_term("x^n")
    pair = ContCTPair(OreOp([npoly(1, 1)]), RatFunc(xpoly(0, 1)))
    assert verify_az(term, pair)
    rhs = az_definite(term, pair, 0, 1)
    assert [rhs.eval(m) for m in range(6)] == [1] * 6


def test_constant_base():
    term = HyperexpTerm(RatFunc(Poly((Fraction(1),), QQ, "x")), Poly((Fraction(1),), QQ, "x"))
    pair = az(term)
    # F does not depend on n, and d/dx (x * 1) = 1 gives an order-0 telescoper
    assert pair.order == 0
    assert verify_az(term, pair)
    # the first-order pair N - 1 with R = 0 is also sound
    assert verify_az(term, ContCTPair(OreOp([-1, 1]), RatFunc(xpoly())))


def test_perturbed_certificate_fails(cubic_pairs):
    for entry, term, pair in cubic_pairs.values():
        bumped = ContCTPair(pair.operator, pair.certificate + RatFunc(xpoly(0, 1)))
        assert not verify_az(term, bumped)
        assert not verify_az(term, ContCTPair(pair.operator.lmul(npoly(2)), pair.certificate))


def test_dual_number_check_at_random_points(cubic_pairs):
    rng = random.Random(20240917)
    for entry, term, pair in cubic_pairs.values():
        checked = 0
        while checked < 30:
            n0 = rng.randint(0, 12)
            x0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            res = check_at_point(term, pair, n0, x0)
            if res is None:
                continue
            assert res
            checked += 1
        bumped = ContCTPair(pair.operator, pair.certificate + RatFunc(xpoly(0, 1)))
        assert check_at_point(term, bumped, 3, Fraction(1, 3)) is False


def test_rational_prefactor():
    # I(n) = int_0^1 x^n/(1+x) dx satisfies I(n+1) + I(n) = 1/(n+1)
    term = parse_term("x^n/(1+x)")
    pair = az(term)
    assert verify_az(term, pair)
    assert pair.operator == OreOp([1, 1])
    rhs = az_definite(term, pair, 0, 1)
    assert [rhs.eval(m) for m in range(8)] == [Fraction(1, m + 1) for m in range(8)]


def test_pole_at_endpoint():
    term = parse_term("x^n")
    pair = ContCTPair(OreOp([npoly(1, 1)]), RatFunc(xpoly(0, 1), xpoly(-1, 1)))
    with pytest.raises(AZError, match="pole-at-endpoint"):
        certificate_at(pair.certificate, 1)
    with pytest.raises(AZError, match="pole-at-endpoint"):
        az_definite(term, pair, 0, 1)


def test_max_order_zero_fails_for_cubic():
    with pytest.raises(AZError, match="no-operator-found"):
        az(catalog.INTEGRALS[0].term(), max_order=0)


def test_integral_oracle_strategies_agree():
    spec = PolyIntegralSpec(Fraction(1), Poly([Fraction(0), Fraction(0), Fraction(3), Fraction(-2)], QQ, "x"),
                            Fraction(-1, 2), Fraction(3, 2))
    for m in range(15):
        assert eval_integral(spec, m) == eval_integral(spec, m, "binomial")
