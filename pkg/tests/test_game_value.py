# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import itertools

from fractions import Fraction

import pytest

from hypothesis import given, settings

from infodist import fixtures
from infodist.counterexample import decision_payoff, decision_structure
from infodist.errors import StructuralError, ValidationError
from infodist.exactlp import matrix_game_value
from infodist.game_value import (
    bayesian_value,
    best_response_value,
    conditional_payoff,
    decision_gain,
    decision_strategy,
    decision_value,
    distinct_actions,
    payoff,
)
from infodist.structures import garble_p1, garble_p2, l1_distance

from tests.strategies import garblings, info_structures, payoff_structures


@pytest.mark.parametrize(
    "u, expected",
    [
        (fixtures.u1, 0),
        (fixtures.u2, Fraction(1, 5)),
        (fixtures.u3, Fraction(1, 10)),
    ],
)
def test_values_of_example_2(u, expected) -> None:
    assert bayesian_value(u(), fixtures.g_example_2()).value == expected


def test_values_of_example_4() -> None:
    assert bayesian_value(fixtures.u2(), fixtures.g_example_4a()).value == Fraction(1, 2)
    assert bayesian_value(fixtures.u4(), fixtures.g_example_4a()).value == 0


def test_guessing_game_of_example_5() -> None:
    p = [Fraction(3, 5), Fraction(2, 5)]
    g = fixtures.guess_payoff(2)
    assert bayesian_value(fixtures.u_max(p), g).value == 1
    assert bayesian_value(fixtures.u_min(p), g).value == Fraction(1, 5)


def test_strategy_of_example_3_guarantees_the_value() -> None:
    # bottom after blue, top after red
    sigma = {0: {1: 1}, 1: {0: 1}}
    assert best_response_value(fixtures.u2(), fixtures.g_example_2(), 1, sigma).value == Fraction(1, 5)


def test_strategy_of_example_4_holds_player_1_to_zero() -> None:
    # left after 0, right after 1
    tau = {0: {0: 1}, 1: {1: 1}}
    assert best_response_value(fixtures.u4(), fixtures.g_example_4a(), 2, tau).value == 0


def test_optimal_strategies_certify_the_value() -> None:
    u, g = fixtures.u3(), fixtures.g_example_2()
    solution = bayesian_value(u, g)

    assert best_response_value(u, g, 1, solution.sigma).value == solution.value
    assert best_response_value(u, g, 2, solution.tau).value == solution.value
    assert payoff(u, g, solution.sigma, solution.tau) == solution.value


def test_state_sets_must_match() -> None:
    with pytest.raises(StructuralError, match="state sets differ"):
        bayesian_value(fixtures.u2(), fixtures.guess_payoff(2))


def test_payoff_checks_strategies() -> None:
    u, g = fixtures.u2(), fixtures.g_example_2()
    with pytest.raises(ValidationError, match="no mixed action for signal 1"):
        payoff(u, g, {0: {0: 1}}, {0: {0: 1}})


def test_distinct_actions_drop_copies() -> None:
    g = fixtures.g_example_4b()
    rows, columns = distinct_actions(g)
    assert rows == [0]
    assert columns == [0, 1]


def test_decision_problem_behind_the_first_report() -> None:
    size = 4
    u, g = decision_structure(size), decision_payoff(size)

    assert decision_value(u, g) == 0
    assert decision_strategy(u, g) == {c: c for c in range(size)}
    for c in range(size):
        for reported in range(size):
            gain = decision_gain(u, g, c, c, reported)
            assert gain == Fraction((c - reported) ** 2, (size + 1) ** 2)
            if reported != c:
                assert gain >= Fraction(1, (size + 1) ** 2)


def test_conditional_payoff_needs_a_positive_signal() -> None:
    u, g = decision_structure(4), decision_payoff(4)
    with pytest.raises(StructuralError, match="probability zero"):
        conditional_payoff(u, g, 9, 0)


@given(info_structures(), payoff_structures())
def test_value_lies_between_the_pure_bounds(u, g) -> None:
    solution = bayesian_value(u, g)
    assert -1 <= solution.value <= 1
    assert best_response_value(u, g, 1, solution.sigma).value == solution.value
    assert best_response_value(u, g, 2, solution.tau).value == solution.value


@given(info_structures(), payoff_structures(), garblings())
def test_garbling_player_1_never_helps_player_1(u, g, q) -> None:
    assert bayesian_value(garble_p1(q, u), g).value <= bayesian_value(u, g).value


@given(info_structures(), payoff_structures(), garblings())
def test_garbling_player_2_never_hurts_player_1(u, g, q) -> None:
    assert bayesian_value(garble_p2(u, q), g).value >= bayesian_value(u, g).value


@given(info_structures(), info_structures(), payoff_structures())
def test_value_is_lipschitz_in_l1(u, v, g) -> None:
    gap = abs(bayesian_value(u, g).value - bayesian_value(v, g).value)
    assert gap <= l1_distance(u, v)


def _normal_form(u, g) -> list[list[Fraction]]:
    """
    Payoff matrix over pure strategies, one action per signal.
    """

    signals_1, signals_2 = u.signals_p1(), u.signals_p2()
    rows = [dict(zip(signals_1, actions)) for actions in itertools.product(range(g.size), repeat=len(signals_1))]
    columns = [dict(zip(signals_2, actions)) for actions in itertools.product(range(g.size), repeat=len(signals_2))]
    return [
        [sum(p * g.entry(k, s[c], t[d]) for (k, c, d), p in u.entries.items()) for t in columns]
        for s in rows
    ]


@settings(max_examples=50)
@given(info_structures(), payoff_structures())
def test_value_matches_the_normal_form_game(u, g) -> None:
    assert bayesian_value(u, g).value == matrix_game_value(_normal_form(u, g)).value
