import time

import pytest

from schwinger.symbolic import CommutatorTable, Num, Poly, coefficient_of, parse_expression
from schwinger.symbolic.iteration import (
    CONCLUSION_COMMUTE, compare_terms, solve_vanishing, uniqueness_iteration,
)

C, CS, D = Poly.symbol("c"), Poly.symbol("c^*"), Poly.symbol("d")


def _families(step):
    return {c.family for c in step.extracted_constraints}


def test_symbolic_run_fixes_c_then_d():
    start = time.perf_counter()
    report = uniqueness_iteration()
    assert time.perf_counter() - start < 1.0
    assert report.status == "converged"
    assert _families(report.steps[0]) == {"c"}
    assert _families(report.steps[1]) == {"d"}
    assert report.final_constraints == ["c = 0", "d = 0"]
    assert report.conclusion == CONCLUSION_COMMUTE


def test_first_step_hopping_coefficient():
    step = uniqueness_iteration().steps[0]
    coeff = coefficient_of(step.expressions["J_+'"], ("a^+", "b"))
    assert coeff == Poly.const(Num(1)) - C * CS


def test_c_sources_at_step_one():
    sources = {c.source for c in uniqueness_iteration().steps[0].extracted_constraints}
    assert sources == {"J_z' coefficient of a b", "J_z' coefficient of a^+ b^+", "J_+' coefficient of a^+ b"}


def test_printed_comparison_itemizes_divergence():
    comparisons = uniqueness_iteration().comparisons
    assert comparisons["step1.J_z' (2 x computed)"]["identical"]
    diffs = comparisons["step1.J_+'"]["differences"]
    assert [(r["monomial"], r["computed"], r["printed"]) for r in diffs] == [("a b", "1/2 c^* d", "-1/2 c^* d")]
    step2 = comparisons["step2.J_+''"]
    assert {r["monomial"] for r in step2["differences"]} == {"a^+ a", "b^+ b"}


def test_normalization_readings():
    summary = uniqueness_iteration().normalization["summary"]
    assert summary["printed J_z' reproduced by"] == ["raw: J_z' = [J_+, J_-]"]
    assert summary["printed a^+ b coefficient of J_+' reproduced by"] == ["am: J_z' = [J_+, J_-]/2"]


def test_undeformed_table_converges_at_once():
    report = uniqueness_iteration(CommutatorTable.canonical())
    assert report.status == "converged"
    assert len(report.steps) == 1
    assert report.final_constraints == []


def test_preset_c_still_fixes_d_at_step_two():
    report = uniqueness_iteration(CommutatorTable(Poly(), D))
    assert _families(report.steps[0]) == set()
    assert _families(report.steps[1]) == {"d"}
    assert report.status == "converged"


def test_numeric_deformation_is_inconsistent():
    report = uniqueness_iteration(CommutatorTable(Poly.const(Num(1)), Poly()))
    assert report.status == "inconsistent"


def test_zero_steps():
    report = uniqueness_iteration(max_steps=0)
    assert report.status == "not run" and report.steps == []


def test_solve_vanishing_rules():
    assert solve_vanishing(Poly(), "x") is None
    assert solve_vanishing(C * CS, "x").family == "c"
    mixed = solve_vanishing(C + D, "x")
    assert mixed.family is None


def test_compare_terms_lists_every_monomial():
    x = parse_expression("a^+ b + 2 a")
    y = parse_expression("a^+ b - b")
    out = compare_terms(x, y)
    assert not out["identical"]
    assert {r["monomial"] for r in out["terms"]} == {"a^+ b", "a", "b"}
    assert len(out["differences"]) == 2
