import warnings

import pytest

from chainavoid.sequences import (
    FORMULAS,
    FormulaRangeWarning,
    SequenceSpec,
    closed_form,
    fibonacci,
    gf_coefficients,
    knacci,
    linear_recurrence,
    partial_sum_tribonacci,
    table1_2143,
    tetranacci,
    tribonacci,
)
from oracles import naive_compositions


def test_knacci_initial_terms():
    assert [fibonacci(i) for i in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    assert [tribonacci(i) for i in range(8)] == [0, 0, 1, 1, 2, 4, 7, 13]
    assert [tetranacci(i) for i in range(9)] == [0, 0, 0, 1, 1, 2, 4, 8, 15]
    assert knacci(1, 10) == 1
    assert knacci(3, -2) == 0
    with pytest.raises(ValueError):
        knacci(0, 3)


def test_big_values_are_exact():
    assert fibonacci(300) == fibonacci(299) + fibonacci(298)
    assert len(str(fibonacci(300))) == 63


def test_gf_coefficients_match_recurrences():
    a = gf_coefficients((1,), (1, -1, -1, -2, -3, -2), 30)
    for n in range(5, 31):
        assert a[n] == a[n - 1] + a[n - 2] + 2 * a[n - 3] + 3 * a[n - 4] + 2 * a[n - 5]
    b = gf_coefficients((1, -1), (1, -2, 0, -1, 0, 1), 30)
    for n in range(6, 31):
        assert b[n] == 2 * b[n - 1] + b[n - 3] - b[n - 5]
    # 1/(1-x-x^2) are Fibonacci numbers
    assert gf_coefficients((1,), (1, -1, -1), 10) == [fibonacci(n + 1) for n in range(11)]


def test_gf_rejects_non_unit_constant():
    with pytest.raises(ValueError):
        gf_coefficients((1,), (2, -1), 5)


def test_linear_recurrence():
    assert linear_recurrence((1, 1), (0, 1), 10) == [fibonacci(n) for n in range(11)]


def test_sequence_spec_kinds():
    rec = SequenceSpec.recurrence("fib", (1, 1), (0, 1))
    gf = SequenceSpec.rational("fib1", (1,), (1, -1, -1))
    cl = SequenceSpec.closed("fib", fibonacci, offset=2)
    assert rec[10] == 55
    assert gf.terms(5) == {n: fibonacci(n + 1) for n in range(6)}
    assert min(cl.terms(5)) == 2
    with pytest.raises(ValueError):
        SequenceSpec("bad", "magic")


def test_tribonacci_partial_sums():
    assert [partial_sum_tribonacci(n) for n in range(6)] == [0, 1, 2, 4, 8, 15]


def test_table1_2143_against_composition_count():
    # compositions of n with at most one part >= 3
    expected = [sum(1 for d in naive_compositions(n) if sum(x >= 3 for x in d) < 2)
                for n in range(2, 14)]
    assert [table1_2143(n) for n in range(2, 14)] == expected


def test_formula_range_warning():
    with pytest.warns(FormulaRangeWarning):
        closed_form("Table1-123", 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert closed_form("Table1-123", 5) == 0
    with pytest.raises(KeyError, match="known"):
        closed_form("Table9-1", 3)


def test_registry_is_complete():
    assert sum(1 for k in FORMULAS if k.startswith("Table1-")) == 16
    assert sum(1 for k in FORMULAS if k.startswith("Table2-")) == 6
