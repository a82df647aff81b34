# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

from fractions import Fraction

import pytest

from infodist import fixtures
from infodist.distance import value_distance
from infodist.errors import StructuralError
from infodist.weak_metric import (
    ENUMERATION_VERSION,
    block_count,
    blocks,
    enumerate_payoff,
    enumeration_block,
    locate_payoff,
    nearest_index,
    weak_distance,
)

from tests.strategies import STATES


def test_block_order() -> None:
    iterator = blocks()
    first = [next(iterator) for _ in range(6)]
    assert first == [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]


def test_first_structures() -> None:
    assert enumeration_block(1, 2) == (1, 1, 0)
    assert enumeration_block(block_count(1, 1, 2) + 1, 2) == (1, 2, 0)

    g = enumerate_payoff(1, STATES)
    assert g.size == 1
    assert g.entry(0, 0, 0) == -1
    assert g.entry(1, 0, 0) == -1

    last = enumerate_payoff(block_count(1, 1, 2), STATES)
    assert last.entry(0, 0, 0) == 1
    assert last.entry(1, 0, 0) == 1


def test_index_must_be_positive() -> None:
    with pytest.raises(StructuralError, match="at least 1"):
        enumeration_block(0, 2)


@pytest.mark.parametrize("n", [1, 2, 9, 10, 34, 35, 200, 6600])
def test_locate_inverts_enumerate(n) -> None:
    size, m, _ = enumeration_block(n, len(STATES))
    g = enumerate_payoff(n, STATES)
    digits = [
        int((g.entry(k, i, j) + 1) * 2 ** (m - 1))
        for k in range(len(STATES))
        for i in range(size)
        for j in range(size)
    ]
    assert locate_payoff(size, m, digits, len(STATES)) == n


def test_nearest_index_is_within_tolerance() -> None:
    g = fixtures.g_example_2()
    tolerance = Fraction(1, 4)
    approximation = enumerate_payoff(nearest_index(g, tolerance), STATES)

    assert approximation.size == g.size
    for k in range(2):
        for i in range(2):
            for j in range(2):
                assert abs(approximation.entry(k, i, j) - g.entry(k, i, j)) <= tolerance


def test_weak_distance_of_identical_structures() -> None:
    bounds = weak_distance(fixtures.u2(), fixtures.u2_relabeled(), 6)
    assert bounds.lower == 0
    assert bounds.upper == Fraction(2, 2**6)
    assert bounds.version == ENUMERATION_VERSION


def test_weak_distance_is_below_the_value_distance() -> None:
    u, v = fixtures.u2(), fixtures.u4()
    bounds = weak_distance(u, v, 12)

    assert 0 <= bounds.lower <= value_distance(u, v).value
    assert bounds.upper - bounds.lower == Fraction(2, 2**12)


def test_weak_distance_bounds_tighten_with_more_terms() -> None:
    u, v = fixtures.u1(), fixtures.trivial_u()
    short = weak_distance(u, v, 4)
    longer = weak_distance(u, v, 8)

    assert short.lower <= longer.lower
    assert longer.upper <= short.upper


def test_one_by_one_games_only_see_the_state_law() -> None:
    # indices 1 .. 34 are the 1x1 blocks over two states
    assert enumeration_block(34, 2)[0] == 1
    assert enumeration_block(35, 2) == (2, 1, 0)

    u, v = fixtures.u1(), fixtures.trivial_u()
    assert weak_distance(u, v, 34).lower == 0
    assert value_distance(u, v).value > 0


def test_weak_distance_sees_different_state_laws() -> None:
    p = [Fraction(3, 5), Fraction(2, 5)]
    q = [Fraction(1, 2), Fraction(1, 2)]
    bounds = weak_distance(fixtures.u_max(p), fixtures.u_max(q), 3)

    assert bounds.lower > 0
    assert bounds.lower <= value_distance(fixtures.u_max(p), fixtures.u_max(q)).value


def test_terms_must_be_positive() -> None:
    with pytest.raises(StructuralError, match="terms"):
        weak_distance(fixtures.u2(), fixtures.u4(), 0)
