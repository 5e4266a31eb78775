"""Regression suite over the worked examples in :mod:`wzkit.catalog`."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import catalog
from .azint import az, az_definite, verify_az
from .oracle import check_recurrence, eval_integral, eval_sum, integral_values, sum_values
from .ore import closed_form_equal, equal_up_to_unit, homogenize
from .reader import parse_bounds, print_operator
from .telescope import boundary_rhs, verify_ct, zeilberger

SUM_N = 50
INTEGRAL_N = 30
SUM_WINDOW = 30
INTEGRAL_WINDOW = 20


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _normalize_ws(s):
    return " ".join(s.split())


def _guard(name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def check_integrals():
    """Both integrands give the printed pair, sound certificates and oracle agreement."""
    out = []
    for entry in catalog.INTEGRALS:
        def run(entry=entry):
            term = entry.term()
            pair = az(term)
            a, b = parse_bounds(entry.bounds_text)
            rhs = az_definite(term, pair, a, b)
            text = print_operator(pair.operator, rhs, "paper")
            values = integral_values(entry.spec(), 0, INTEGRAL_WINDOW + pair.order)
            ok = (_normalize_ws(text) == _normalize_ws(catalog.INTEGRAL_PAPER_OUTPUT)
                  and verify_az(term, pair)
                  and check_recurrence(values, pair.operator, rhs, 0, INTEGRAL_WINDOW))
            return ok, text
        out.append(_guard(f"integral recurrence [{entry.name}]", run))
    return out


def check_four_sums():
    out = []
    for entry in catalog.FOUR_SUMS:
        def run(entry=entry):
            spec = entry.spec()
            pair = zeilberger(spec.term)
            rhs = boundary_rhs(spec.term, pair, spec.range)
            values = sum_values(spec, 0, SUM_WINDOW + pair.order)
            ok = (pair.operator == catalog.FOUR_SUM_OPERATOR.canonical()
                  and closed_form_equal(rhs, catalog.FOUR_SUM_RHS)
                  and verify_ct(spec.term, pair)
                  and check_recurrence(values, pair.operator, rhs, 0, SUM_WINDOW))
            return ok, print_operator(pair.operator)
        out.append(_guard(f"four-sum recurrence [{entry.name}]", run))
    return out


def check_a006256():
    def run():
        spec = catalog.A006256_SUM.spec()
        pair = zeilberger(spec.term)
        rhs = boundary_rhs(spec.term, pair, spec.range)
        values = sum_values(spec, 0, SUM_WINDOW + pair.order)
        ok = (pair.order == 2 and rhs.is_zero()
              and equal_up_to_unit(pair.operator, catalog.A006256_OPERATOR)
              and verify_ct(spec.term, pair)
              and check_recurrence(values, pair.operator, rhs, 0, SUM_WINDOW))
        return ok, print_operator(pair.operator)
    return [_guard("A006256 recurrence", run)]


def check_equivalence():
    def run():
        hom = homogenize(catalog.FOUR_SUM_OPERATOR, catalog.FOUR_SUM_RHS)
        return equal_up_to_unit(hom, catalog.A006256_OPERATOR), print_operator(hom)
    return [_guard("first-order recurrence homogenizes to the A006256 operator", run)]


def check_oracles():
    def sums():
        specs = [e.spec() for e in catalog.FOUR_SUMS] + [catalog.A006256_SUM.spec()]
        rows = [[eval_sum(s, n) for n in range(SUM_N + 1)] for s in specs]
        ok = all(r == rows[0] for r in rows) and rows[0][:3] == [1, 6, 39]
        return ok, f"n <= {SUM_N}"

    def integrals():
        specs = [e.spec() for e in catalog.INTEGRALS]
        rows = [[eval_integral(s, n) for n in range(INTEGRAL_N + 1)] for s in specs]
        strategies = all(eval_integral(s, n, "binomial") == rows[i][n]
                         for i, s in enumerate(specs) for n in range(INTEGRAL_N + 1))
        firsts = rows[0][:3] == [catalog.INTEGRAL_AT_ZERO, Fraction(1), Fraction(26, 35)]
        return rows[0] == rows[1] and strategies and firsts, f"n <= {INTEGRAL_N}"

    return [_guard("four sums equal each other and the A006256 sum", sums),
            _guard("the two integrals agree", integrals)]


def paper_suite():
    return (check_integrals() + check_four_sums() + check_a006256()
            + check_equivalence() + check_oracles())
