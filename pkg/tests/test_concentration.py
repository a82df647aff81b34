# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import math

from fractions import Fraction

import pytest

from infodist.concentration import (
    Y_NAMES,
    balanced_bound_holds,
    balanced_probability,
    column_bound,
    e_bounds,
    final_stage_margin,
    format_bound,
    hoeffding_experiment,
    induction_margin,
    lemma_bound,
    misreport_margin,
    stirling_holds,
)
from infodist.counterexample import ALPHA
from infodist.errors import StructuralError


def test_deviations_beyond_the_range_never_happen() -> None:
    # no statistic can move 8N away from its mean
    report = hoeffding_experiment(8, Fraction(8), 20, seed=0)

    assert len(report.tails) == 3 + len(Y_NAMES)
    assert all(tail.frequency == 0 for tail in report.tails)
    assert report.holds


def test_small_deviations_are_frequent() -> None:
    report = hoeffding_experiment(8, Fraction(1, 100), 30, seed=1)

    assert all(0 <= tail.frequency <= 1 for tail in report.tails)
    assert all(tail.frequency.denominator <= 30 for tail in report.tails)
    # |S_c & S_d| is rarely exactly N/4
    assert report.tails[0].frequency > 0


def test_experiments_are_reproducible() -> None:
    first = hoeffding_experiment(10, Fraction(1, 4), 15, seed=4)
    assert first == hoeffding_experiment(10, Fraction(1, 4), 15, seed=4)


def test_experiment_arguments() -> None:
    with pytest.raises(StructuralError, match="even"):
        hoeffding_experiment(7, Fraction(1, 2), 5, seed=0)
    with pytest.raises(StructuralError, match="gamma"):
        hoeffding_experiment(8, 0, 5, seed=0)
    with pytest.raises(StructuralError, match="trials"):
        hoeffding_experiment(8, Fraction(1, 2), 0, seed=0)


def test_bounds_shrink_with_n() -> None:
    gamma = Fraction(1, 4)
    assert column_bound(100, gamma) < column_bound(10, gamma)
    assert format_bound(1.0) == "1.000000e+00"


def test_lemma_bound_is_vacuous_at_desk_scale() -> None:
    assert lemma_bound(8) < 0
    assert lemma_bound(10_000) < 0
    assert lemma_bound(10**9) > 0


def test_e_bounds() -> None:
    low, high = e_bounds()
    assert low < high
    assert float(low) <= math.e <= float(high)


@pytest.mark.parametrize("n", range(1, 51))
def test_stirling(n) -> None:
    assert stirling_holds(n)


def test_stirling_needs_positive_n() -> None:
    with pytest.raises(StructuralError, match="at least 1"):
        stirling_holds(0)


def test_balanced_subsets() -> None:
    assert balanced_probability(2) == Fraction(1, 4)
    assert all(balanced_bound_holds(size) for size in range(2, 42, 2))
    with pytest.raises(StructuralError, match="even"):
        balanced_probability(5)


def test_margins() -> None:
    assert induction_margin(ALPHA) == Fraction(1317, 1250)
    assert induction_margin(ALPHA) >= 1
    assert misreport_margin(ALPHA) == -induction_margin(ALPHA)
    assert misreport_margin(ALPHA) <= -1
    assert final_stage_margin(ALPHA) == Fraction(-44, 25)


@pytest.mark.slow
@pytest.mark.parametrize("size, gamma", [(64, Fraction(1, 4)), (128, Fraction(1, 8))])
def test_hoeffding_bounds_hold_in_their_regime(size, gamma) -> None:
    report = hoeffding_experiment(size, gamma, 10_000, seed=11)
    assert all(tail.within for tail in report.tails if tail.applicable)
