# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

from fractions import Fraction

import pytest

from hypothesis import given, settings

from infodist import fixtures
from infodist.distance import (
    Direction,
    blackwell_compare_1p,
    compare,
    one_sided_deviation,
    transfer_strategy,
    value_distance,
    witness_payoff,
)
from infodist.errors import StructuralError
from infodist.game_value import bayesian_value, best_response_value
from infodist.structures import garble_p1, garble_p2, l1_distance, relabel

from tests.strategies import garblings, info_structures, payoff_structures


HALF = Fraction(1, 2)


def test_distance_of_example_4() -> None:
    u2, u4 = fixtures.u2(), fixtures.u4()

    assert one_sided_deviation(u2, u4).value == 0
    assert one_sided_deviation(u4, u2).value == HALF
    assert value_distance(u2, u4).value == HALF
    assert value_distance(fixtures.u2_prime(), u4).value == 1


def test_deviation_certificates_of_example_4() -> None:
    u2, u4 = fixtures.u2(), fixtures.u4()
    deviation = one_sided_deviation(u4, u2)

    assert l1_distance(garble_p1(deviation.q1, u4), garble_p2(u2, deviation.q2)) == HALF
    gap = bayesian_value(u2, deviation.witness).value - bayesian_value(u4, deviation.witness).value
    assert gap == HALF
    assert bayesian_value(u2, witness_payoff(u4, u2)).value - bayesian_value(
        u4, witness_payoff(u4, u2)
    ).value == HALF


@pytest.mark.parametrize(
    "p, expected",
    [
        ((HALF, HALF), 1),
        ((Fraction(3, 5), Fraction(2, 5)), Fraction(4, 5)),
        ((Fraction(9, 10), Fraction(1, 10)), Fraction(1, 5)),
    ],
)
def test_distance_of_example_5(p, expected) -> None:
    report = value_distance(fixtures.u_max(p), fixtures.u_min(p))

    assert report.value == expected == 2 * (1 - max(p))
    assert report.forward.value == 0
    assert report.backward.value == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4] + [pytest.param(n, marks=pytest.mark.slow) for n in range(5, 9)])
def test_chain_of_signals_converges_to_no_information(n) -> None:
    trivial, u = fixtures.trivial_u(), fixtures.u_n(n)

    assert one_sided_deviation(trivial, u).value == 0
    assert value_distance(trivial, u).value <= Fraction(1, n + 1)
    assert value_distance(trivial, u).value == Fraction(1, n + 1)


@pytest.mark.parametrize(
    "u, v, direction",
    [
        (fixtures.u2, fixtures.u2_relabeled, Direction.EQUIVALENT),
        (fixtures.u2, fixtures.u4, Direction.U_GEQ_V),
        (fixtures.u4, fixtures.u2, Direction.V_GEQ_U),
        (fixtures.u2, fixtures.u2_prime, Direction.U_GEQ_V),
        (fixtures.u1, fixtures.trivial_u, Direction.INCOMPARABLE),
        (fixtures.trivial_u, fixtures.u3, Direction.U_GEQ_V),
    ],
)
def test_compare(u, v, direction) -> None:
    assert compare(u(), v()).direction == direction


def test_order_certificate_transfers_strategies() -> None:
    # u2 dominates u4, so player 1 keeps in u2 whatever it guarantees in u4
    u2, u4 = fixtures.u2(), fixtures.u4()
    g = fixtures.g_example_4a()
    comparison = compare(u2, u4)
    sigma = bayesian_value(u4, g).sigma

    transferred = transfer_strategy(sigma, comparison.forward.q1, u2.signals_p1())
    guaranteed = best_response_value(u2, g, 1, transferred).value

    assert guaranteed >= bayesian_value(u4, g).value


def test_distance_needs_equal_states() -> None:
    with pytest.raises(StructuralError, match="state sets differ"):
        value_distance(fixtures.u2(), fixtures.u_max([HALF, HALF]))


def test_blackwell_on_binary_channels() -> None:
    sharp = fixtures.binary_channel(Fraction(9, 10))
    blurred = fixtures.binary_channel(Fraction(7, 10))
    report = blackwell_compare_1p(sharp, blurred)

    assert report.direction == Direction.U_GEQ_V
    assert report.forward == 0
    assert report.backward > 0
    assert garble_p1(report.forward_garbling, sharp) == blurred


@given(info_structures(), info_structures())
def test_distance_is_symmetric_and_bounded(u, v) -> None:
    forward = value_distance(u, v)
    backward = value_distance(v, u)

    assert forward.value == backward.value
    assert 0 <= forward.value <= l1_distance(u, v)


@given(info_structures())
def test_relabeling_is_equivalent(u) -> None:
    renamed = relabel(u, {c: c + 4 for c in u.signals_p1()}, {d: 9 - d for d in u.signals_p2()})
    assert compare(u, renamed).direction == Direction.EQUIVALENT
    assert value_distance(u, renamed).value == 0


@given(info_structures(), garblings())
def test_garbling_player_1_is_dominated(u, q) -> None:
    assert one_sided_deviation(u, garble_p1(q, u)).value == 0


@given(info_structures(), garblings())
def test_garbling_player_2_dominates(u, q) -> None:
    assert one_sided_deviation(garble_p2(u, q), u).value == 0


@given(info_structures(), info_structures(), info_structures())
def test_triangle_inequality(u, v, w) -> None:
    assert value_distance(u, w).value <= value_distance(u, v).value + value_distance(v, w).value


@pytest.mark.slow
@settings(max_examples=200)
@given(info_structures(), info_structures(), payoff_structures())
def test_deviation_bounds_every_game_and_is_attained(u, v, g) -> None:
    deviation = one_sided_deviation(u, v)

    assert bayesian_value(v, g).value - bayesian_value(u, g).value <= deviation.value
    witness = witness_payoff(u, v)
    assert bayesian_value(v, witness).value - bayesian_value(u, witness).value == deviation.value


@pytest.mark.slow
@settings(max_examples=100)
@given(info_structures(), info_structures(), payoff_structures())
def test_transferred_strategies_lose_at_most_twice_the_distance(u, v, g) -> None:
    deviation = one_sided_deviation(u, v)
    sigma = bayesian_value(v, g).sigma

    transferred = transfer_strategy(sigma, deviation.q1, u.signals_p1())
    guaranteed = best_response_value(u, g, 1, transferred).value

    assert guaranteed >= bayesian_value(v, g).value - deviation.value
    assert bayesian_value(u, g).value - guaranteed <= 2 * value_distance(u, v).value
