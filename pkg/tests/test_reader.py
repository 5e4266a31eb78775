import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wzkit import catalog
from wzkit.exact import QQ, Poly
from wzkit.oracle import SumRange
from wzkit.ore import ClosedForm, OreOp
from wzkit.reader import (
    ReaderError, eval_ast, parse, parse_bounds, parse_operator, parse_pair, parse_range, parse_term,
    print_operator, term_to_text,
)
from wzkit.termlib import HyperexpTerm, Lin, ProperTerm, TermError, eval_term


def npoly(*cs):
    return Poly([Fraction(c) for c in cs], QQ, "n")


WORKED_TERMS = [e.text for e in catalog.FOUR_SUMS] + [catalog.A006256_SUM.text] + [e.text for e in catalog.INTEGRALS]


# -- parse_term examples ------------------------------------------------------------

def test_first_summand():
    t = parse_term("3^j*binomial(3*n-j,2*n)")
    assert isinstance(t, ProperTerm)
    assert t.powers == ((Fraction(3), Lin(0, 1, 0)),)
    assert t.binomials == (((Lin(3, -1, 0), Lin(2, 0, 0)), 1),)
    assert t.constant == 1 and not t.factorials


def test_integrand():
    t = parse_term("(3*x^2-2*x^3)^n")
    assert isinstance(t, HyperexpTerm)
    assert t.prefactor == 1
    assert t.base == Poly([Fraction(0), Fraction(0), Fraction(3), Fraction(-2)], QQ, "x")
    t2 = parse_term("2*(3*x^2-2*x^3)^n")
    assert t2.prefactor == 2 and t2.base == t.base


def test_single_binomial():
    t = parse_term("binomial(n,k)")
    assert t.binomials == (((Lin(1, 0, 0), Lin(0, 1, 0)), 1),)
    assert not t.powers and not t.factorials


def test_exponent_spellings_and_alias():
    for a, b in [("3**j*binomial(3*n-j,2*n)", "3^k*binomial(3*n-k,2*n)"),
                 ("(-3)**k*binomial(3*n-k,n)", "(-3)^j*binomial(3*n-j,n)"),
                 ("(3*x**2-2*x**3)**n", "(3*x^2-2*x^3)^n")]:
        assert parse_term(a) == parse_term(b)


def test_precedence():
    env = {"n": 2, "k": 1, "x": 0}
    assert eval_ast(parse("-2^2"), env) == -4
    assert eval_ast(parse("2^3^2"), env) == 512
    assert eval_ast(parse("2*3+4/2-1"), env) == 7
    assert eval_ast(parse("(n+k)^2"), env) == 9


@pytest.mark.parametrize("text, pos", [
    ("3^j*binomial(3*n-j,2*n", 22),
    ("binomial(n,,k)", 11),
    ("n $ k", 2),
    ("", 0),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ReaderError) as err:
        parse_term(text)
    assert err.value.pos == pos


def test_recognition_errors():
    with pytest.raises(ReaderError, match="not-proper"):
        parse_term("binomial(n^2,k)")
    with pytest.raises(ReaderError, match="not-hyperexponential"):
        parse_term("(x+n)^2")
    with pytest.raises(ReaderError, match="not-hyperexponential"):
        parse_term("x^k")
    with pytest.raises(ReaderError):
        parse_term("sin(n)")


# -- AST evaluation against recognized terms ------------------------------------------

def _agree(text, rng, count=20):
    node = parse(text)
    term = parse_term(text)
    checked = 0
    tries = 0
    while checked < count and tries < 2000:
        tries += 1
        m, k = rng.randint(0, 12), rng.randint(-3, 15)
        try:
            direct = eval_ast(node, {"n": m, "k": k})
        except (ReaderError, ZeroDivisionError):
            direct = None
        try:
            via = eval_term(term, m, k)
        except (TermError, ZeroDivisionError):
            via = None
        if direct is None or via is None:
            continue
        assert direct == via, (text, m, k)
        checked += 1
    return checked


@pytest.mark.parametrize("text", [e.text for e in catalog.FOUR_SUMS] + [catalog.A006256_SUM.text])
def test_ast_agrees_with_term(text):
    assert _agree(text, random.Random(text)) == 20


def test_integrand_agrees_with_ast():
    rng = random.Random(7)
    for e in catalog.INTEGRALS:
        node, term = parse(e.text), e.term()
        for _ in range(20):
            m, x = rng.randint(0, 8), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            assert eval_ast(node, {"n": m, "x": x}) == term.eval(m, x)


# -- round trips -------------------------------------------------------------------

@pytest.mark.parametrize("text", WORKED_TERMS)
def test_worked_terms_round_trip(text):
    t = parse_term(text)
    assert parse_term(term_to_text(t)) == t


def _lin_text(rng):
    a, b, c = rng.randint(-3, 3), rng.choice([-1, 0, 1, 2]), rng.randint(-2, 4)
    return f"({a}*n+{b}*k+{c})"


def random_term_text(rng):
    parts = [str(rng.choice([1, 2, -3, Fraction(5, 2)])).join("()")]
    for _ in range(rng.randint(0, 2)):
        parts.append(f"({rng.choice([-4, -3, 2, 3, Fraction(1, 2)])})^({rng.randint(-1, 2)}*k+{rng.randint(0, 2)}*n)")
    for _ in range(rng.randint(0, 2)):
        parts.append(f"binomial({_lin_text(rng)},{_lin_text(rng)})" + rng.choice(["", "^2", "^-1"]))
    for _ in range(rng.randint(0, 2)):
        parts.append(f"factorial({_lin_text(rng)})" + rng.choice(["", "^-1"]))
    if rng.random() < 0.5:
        parts.append(f"(n^2+{rng.randint(1, 4)}*k*n+{rng.randint(-2, 2)})")
    rng.shuffle(parts)
    return "*".join(parts)


def test_random_terms_round_trip():
    rng = random.Random(4242)
    for _ in range(100):
        text = random_term_text(rng)
        t = parse_term(text)
        printed = term_to_text(t)
        assert parse_term(printed) == t, (text, printed)
        assert term_to_text(parse_term(printed)) == printed
        _agree(text, rng, count=5)


# -- operators ---------------------------------------------------------------------

def test_print_operator_examples():
    assert print_operator(catalog.FOUR_SUM_OPERATOR) == "(4)*N^1 + (-27)*N^0"
    assert print_operator(catalog.INTEGRAL_OPERATOR, catalog.INTEGRAL_RHS, "paper") == catalog.INTEGRAL_PAPER_OUTPUT
    negated = catalog.INTEGRAL_OPERATOR.lmul(npoly(-1))
    assert print_operator(negated, ClosedForm.constant(-2), "paper") == catalog.INTEGRAL_PAPER_OUTPUT
    assert print_operator(catalog.A006256_OPERATOR, ClosedForm.zero(), "canonical").endswith(", 0]")
    assert print_operator(catalog.A006256_OPERATOR, ClosedForm.zero(), "paper").endswith(", 0]")


def test_print_is_deterministic():
    a = print_operator(catalog.A006256_OPERATOR)
    b = print_operator(catalog.A006256_OPERATOR.lmul(npoly(Fraction(-2, 3))))
    assert a == b


@pytest.mark.parametrize("op", [catalog.FOUR_SUM_OPERATOR, catalog.A006256_OPERATOR, catalog.INTEGRAL_OPERATOR,
                                OreOp([npoly(0, 1), npoly(1, 0, 1), npoly(-7)])])
def test_operator_round_trip(op):
    for style in ("canonical", "paper"):
        assert parse_operator(print_operator(op, None, style)).canonical() == op.canonical()


def test_parse_pair():
    op, rhs = parse_pair(catalog.INTEGRAL_PAPER_OUTPUT)
    assert op == catalog.INTEGRAL_OPERATOR
    assert rhs.strip() == "2"


coeff = st.lists(st.integers(-9, 9), min_size=1, max_size=3).map(lambda cs: npoly(*cs))


@given(st.lists(coeff, min_size=1, max_size=4))
def test_operator_round_trip_property(cs):
    op = OreOp(cs)
    if not op:
        return
    for style in ("canonical", "paper"):
        assert parse_operator(print_operator(op, None, style)).canonical() == op.canonical()


# -- ranges and bounds -------------------------------------------------------------

def test_ranges():
    assert parse_range("0..n") == SumRange(0, 1, 0)
    assert parse_range("0..2n") == parse_range("0..2*n") == SumRange(0, 2, 0)
    assert parse_range("1..3*n-1", 2) == SumRange(1, 3, -1, 2)
    assert parse_range("0..-1") == SumRange(0, 0, -1)
    assert parse_range("0..5") == SumRange(0, 0, 5)
    for bad in ("0..x", "0..", "a..n", "0-n", "0..2n5"):
        with pytest.raises(ReaderError):
            parse_range(bad)


def test_bounds():
    assert parse_bounds("-1/2..3/2") == (Fraction(-1, 2), Fraction(3, 2))
    assert parse_bounds("0..1") == (0, 1)
    with pytest.raises(ReaderError):
        parse_bounds("0..y")
