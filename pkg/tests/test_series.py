import math

import numpy as np
import pytest

from casimir_torus.errors import BudgetError, DomainError
from casimir_torus.series import (
    SeriesControl,
    aspect_ratio,
    richardson_box,
    richardson_table,
    sum_lattice,
    sum_series,
)


def test_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(abs_tol=0)
    with pytest.raises(DomainError):
        SeriesControl(rel_tol=-1)
    with pytest.raises(DomainError):
        SeriesControl(max_terms=5)


def test_geometric_series():
    res = sum_series(lambda n: 0.5**n)
    assert res.value == pytest.approx(1.0, abs=1e-12)
    assert res.tail_bound < 1e-11
    assert res.terms_used >= 3


def test_stopping_rule_is_local():
    # stops at the first term below both tolerances
    ctrl = SeriesControl(abs_tol=1e-3, rel_tol=1e-3)
    res = sum_series(lambda n: 10.0**-n, ctrl)
    assert res.terms_used == 4


def test_minimum_terms():
    res = sum_series(lambda n: np.where(n == 1, 1.0, 0.0) + np.where(n == 3, 1.0, 0.0))
    assert res.value == 2.0


def test_underflow_terminates():
    res = sum_series(lambda n: np.exp(-800.0 * n) * 0 + np.where(n < 5, 1.0 / n, 0.0))
    assert res.underflowed
    assert res.value == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 4)


def test_budget_error():
    with pytest.raises(BudgetError):
        sum_series(lambda n: 1.0 / n, SeriesControl(max_terms=1000))


def test_lattice_exponential():
    res = sum_lattice(lambda a, b: np.exp(-(a + b)))
    exact = (1 / (math.e - 1)) ** 2
    assert res.value == pytest.approx(exact, rel=1e-10)


def test_lattice_budget():
    with pytest.raises(BudgetError):
        sum_lattice(lambda a, b: 1.0 / (a * a + b * b), SeriesControl(max_points=10_000))


def test_richardson_table_exact_for_power_law():
    sums = [1.0 - 1.0 / m**2 for m in (4, 8, 16)]
    assert richardson_table(sums, 2.0)[-1][-1] == pytest.approx(1.0, abs=1e-15)


def test_richardson_box_basel():
    # sum 1/n^2 truncated at M has remainder 1/M - 1/2M^2 + ...
    res = richardson_box(
        lambda M: math.fsum(1.0 / np.arange(1, M + 1) ** 2), 1.0, points=lambda M: M, first_size=8
    )
    assert res.value == pytest.approx(math.pi**2 / 6, rel=1e-12)
    assert res.method == "richardson"


def test_richardson_rejects_bad_exponent():
    with pytest.raises(DomainError):
        richardson_box(lambda M: 0.0, 0.0, points=lambda M: M)


@pytest.mark.parametrize(
    "steps,expected", [((1, 1), (1, 1)), ((5, 1), (1, 5)), ((1, 5), (5, 1)), ((1000, 1), (1, 64))]
)
def test_aspect_ratio(steps, expected):
    assert aspect_ratio(*steps) == expected


def test_scaled_result():
    res = sum_series(lambda n: 0.5**n).scaled(-2)
    assert res.value == pytest.approx(-2.0)
    assert res.tail_bound >= 0
