from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wzkit import catalog
from wzkit.exact import QQ, QQn, Poly
from wzkit.oracle import sum_values
from wzkit.ore import (
    ClosedForm, HyperTermN, OreError, OreOp, apply, closed_form_equal, equal_up_to_unit, gcrd,
    homogenize, ore_mul, simplify_closed_form,
)


def npoly(*cs):
    return Poly([Fraction(c) for c in cs], QQ, "n")


N = OreOp.shift(1)
ONE = OreOp([1])


def op(*coeffs):
    return OreOp([npoly(*c) if isinstance(c, tuple) else c for c in coeffs])


# -- ore_mul ----------------------------------------------------------------------

def test_ore_mul_examples():
    assert ore_mul(N, op((0, 1))) == op(0, (1, 1))
    assert ore_mul(N - ONE, N + ONE) == op(-1, 0, 1)
    assert ore_mul(N, op((1, 3))) == op(0, (4, 3))


small_coeff = st.lists(st.integers(-3, 3), min_size=0, max_size=3).map(lambda cs: npoly(*cs))
small_op = st.lists(small_coeff, min_size=1, max_size=3).map(OreOp)


@given(small_op, small_op, small_op)
def test_ore_mul_associative(a, b, c):
    assert ore_mul(ore_mul(a, b), c) == ore_mul(a, ore_mul(b, c))


@given(small_op, small_op, st.lists(st.integers(-20, 20), min_size=12, max_size=12), st.integers(0, 4))
def test_action_compatibility(a, b, seq, n0):
    values = dict(enumerate(Fraction(v) for v in seq))
    b_seq = {m: apply(b, values, m) for m in range(0, len(seq) - b.order)}
    if n0 + a.order + b.order >= len(seq):
        return
    assert apply(ore_mul(a, b), values, n0) == apply(a, b_seq, n0)


# -- apply ------------------------------------------------------------------------

def test_apply_examples():
    assert apply(N - ONE, {m: 5 for m in range(10)}, 3) == 0
    assert apply(catalog.FOUR_SUM_OPERATOR, {0: 1, 1: 6}, 0) == -3
    assert apply(catalog.A006256_OPERATOR, {0: 1, 1: 6, 2: 39}, 0) == 0


def test_apply_missing_values():
    with pytest.raises(OreError, match="missing-values"):
        apply(N, {0: 1}, 0)


# -- homogenize, equal_up_to_unit, gcrd ---------------------------------------------

def test_homogenize_four_sum_pair():
    hom = homogenize(catalog.FOUR_SUM_OPERATOR, catalog.FOUR_SUM_RHS)
    assert equal_up_to_unit(hom, catalog.A006256_OPERATOR)
    assert hom == hom.canonical()


def test_homogenize_small_examples():
    assert homogenize(N - ONE, ClosedForm.constant(1)) == op(1, -2, 1)
    two_pow = HyperTermN(0, 1, QQn.convert(2))
    assert homogenize(op(-2, 1), two_pow) == op(4, -4, 1)


def test_homogenize_zero_rhs():
    with pytest.raises(OreError, match="zero-rhs"):
        homogenize(N, ClosedForm((HyperTermN(0, 0, QQn.one),)))


def test_homogenize_soundness_on_sums():
    hom = homogenize(catalog.FOUR_SUM_OPERATOR, catalog.FOUR_SUM_RHS)
    values = sum_values(catalog.FOUR_SUMS[0].spec(), 0, 40)
    assert all(apply(hom, values, m) == 0 for m in range(39))


def test_equal_up_to_unit_examples():
    L = catalog.FOUR_SUM_OPERATOR
    assert equal_up_to_unit(L, L.lmul(npoly(1, 1)))
    assert not equal_up_to_unit(L, op(-2, 1))
    assert equal_up_to_unit(L, L.lmul(npoly(Fraction(-3, 7))))


def test_canonical_form():
    c = op((Fraction(-1, 2), Fraction(-1, 2)), (0, Fraction(-3, 2))).canonical()
    assert c == op((1, 1), (0, 3))


def test_gcrd_examples():
    A = catalog.A006256_OPERATOR
    assert gcrd(A, A) == A.canonical()
    hom = homogenize(catalog.FOUR_SUM_OPERATOR, catalog.FOUR_SUM_RHS)
    assert equal_up_to_unit(gcrd(hom, catalog.FOUR_SUM_OPERATOR), catalog.FOUR_SUM_OPERATOR)
    g = gcrd(N - ONE, op(-2, 1))
    assert g.order == 0


@given(small_op, small_op)
def test_gcrd_right_divides_products(a, b):
    if not a or not b or b.order == 0:
        return
    g = gcrd(ore_mul(a, b), b)
    assert equal_up_to_unit(g, b)


# -- closed forms -----------------------------------------------------------------

def factorial_rhs(m):
    from math import factorial
    return Fraction(-3 * factorial(3 * m + 1), factorial(2 * m + 1) * factorial(m + 1))


def test_closed_form_examples():
    two = ClosedForm.constant(2)
    assert closed_form_equal(two, ClosedForm.constant(2))
    assert not closed_form_equal(two, ClosedForm.zero())
    assert all(catalog.FOUR_SUM_RHS.eval(m) == factorial_rhs(m) for m in range(30))


def test_closed_form_merges_quotients():
    a = HyperTermN(0, 1, QQn.convert(2))
    b = HyperTermN(0, 3, QQn.convert(2))
    assert closed_form_equal(ClosedForm((a, b)), ClosedForm((HyperTermN(0, 4, QQn.convert(2)),)))
    assert closed_form_equal(ClosedForm((a, -a)), ClosedForm.zero())


def test_closed_form_quotient_disagreement():
    n = QQn.gen()
    fact = ClosedForm((HyperTermN(0, 1, n + 1),))
    cancelled = HyperTermN(0, 1, (n + 1) * (2 * n + 3) / (2 * n + 3))
    assert closed_form_equal(fact, ClosedForm((cancelled,)))
    different = HyperTermN(0, 1, (n + 1) * (n + 7) / (n + 6))
    assert not closed_form_equal(fact, ClosedForm((different,)))


def test_closed_form_prefix_disagreement():
    a = ClosedForm((HyperTermN(1, 1, QQn.one, ((0, Fraction(5)),)),))
    b = ClosedForm((HyperTermN(1, 1, QQn.one, ((0, Fraction(4)),)),))
    assert not closed_form_equal(a, b)
    assert closed_form_equal(a, a)


hyper = st.builds(
    lambda start, v, c, r: HyperTermN(start, Fraction(v), QQn.convert(Fraction(c)) * QQn.convert(
        Poly([Fraction(r), Fraction(1)], QQ, "n")) / QQn.convert(Poly([Fraction(r + 1), Fraction(1)], QQ, "n"))),
    st.integers(0, 2), st.integers(-5, 5), st.sampled_from([1, 2, -1, 3]), st.integers(0, 3))
forms = st.lists(hyper, min_size=0, max_size=3).map(lambda ts: ClosedForm(tuple(ts)))


@given(forms, forms)
def test_closed_form_equal_reflexive_symmetric(a, b):
    assert closed_form_equal(a, a)
    assert closed_form_equal(a, b) == closed_form_equal(b, a)
    lo = max([t.start for t in a.terms + b.terms], default=0)
    if any(a.eval(m) != b.eval(m) for m in range(lo, lo + 8)):
        assert not closed_form_equal(a, b)


@given(forms)
def test_simplify_preserves_values(a):
    s = simplify_closed_form(a)
    assert closed_form_equal(a, s)
    assert len(s.terms) <= max(len(a.terms), 1)


def test_simplify_collapses_similar_terms():
    n = QQn.gen()
    # n! + n * n! = (n+1)!
    a = HyperTermN(0, 1, n + 1)
    b = HyperTermN(1, 1, (n + 1) * (n + 1) / n, ((0, Fraction(0)),))
    s = simplify_closed_form(ClosedForm((a, b)))
    assert len(s.terms) == 1
    assert [s.eval(m) for m in range(6)] == [1, 2, 6, 24, 120, 720]


def test_hyperterm_rejects_poles():
    n = QQn.gen()
    with pytest.raises(OreError):
        HyperTermN(0, 1, 1 / (n - 3))
    assert HyperTermN(4, 1, 1 / (n - 3)).eval(5) == Fraction(1, 1)
