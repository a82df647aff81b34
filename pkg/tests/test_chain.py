# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

from fractions import Fraction

import numpy as np
import pytest

from hypothesis import given, strategies as st

from infodist import settings
from infodist.chain import (
    Blame,
    ChainSpec,
    decode_tuple,
    encode_tuple,
    event_e_check,
    first_break,
    interleave,
    is_nice,
    nice_sequences,
    niceness,
    ordered_pairs,
    prefix_marginal,
    sample_chain,
    sequence_weight,
    y_statistics,
    y_value,
)
from infodist.errors import StructuralError


def test_odd_sizes_are_rejected() -> None:
    with pytest.raises(StructuralError, match="even"):
        sample_chain(3, 0)


def test_successor_sets_must_have_half_the_states() -> None:
    with pytest.raises(StructuralError, match="distinct states"):
        ChainSpec(4, ((1,), (2, 3), (3, 4), (1, 4)))


@given(st.sampled_from([2, 4, 6, 8]), st.integers(0, 10_000))
def test_sampled_chains_are_well_formed(size, seed) -> None:
    chain = sample_chain(size, seed)

    assert chain.seed == seed
    assert all(len(row) == size // 2 for row in chain.successors)
    assert chain.adjacency.sum(axis=1).tolist() == [size // 2] * size


def test_sampling_is_reproducible() -> None:
    assert sample_chain(8, 17) == sample_chain(8, 17)
    assert sample_chain(32, 1).successors != sample_chain(32, 2).successors


def test_tuple_codes() -> None:
    assert encode_tuple((1, 1), 4) == 0
    assert encode_tuple((2, 3), 4) == 6
    assert decode_tuple(6, 2, 4) == (2, 3)
    with pytest.raises(StructuralError):
        encode_tuple((5,), 4)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_codes_are_bijective(sequence) -> None:
    code = encode_tuple(sequence, 6)
    assert 0 <= code < 6 ** len(sequence)
    assert decode_tuple(code, len(sequence), 6) == tuple(sequence)


def test_interleave() -> None:
    assert interleave((1, 3, 5), (2, 4), 5) == (1, 2, 3, 4, 5)
    assert interleave((1, 3), (2, 4), 3) == (1, 2, 3)


def test_niceness_on_the_circulant_chain(circulant) -> None:
    assert is_nice(circulant, (1, 2, 3, 4, 1))
    assert first_break(circulant, (1, 3)) == 2
    assert niceness(circulant, (1, 2, 3)).status == Blame.NICE
    assert niceness(circulant, (1, 3)).status == Blame.PLAYER_2
    assert niceness(circulant, (1, 2, 1)).status == Blame.PLAYER_1
    assert niceness(circulant, (1, 2, 1)).failing_index == 3


def test_niceness_validates_its_input(circulant) -> None:
    with pytest.raises(StructuralError, match="non-empty"):
        niceness(circulant, ())
    with pytest.raises(StructuralError, match="outside"):
        niceness(circulant, (1, 9))


@pytest.mark.parametrize("size, seed", [(4, 0), (6, 3), (8, 11)])
def test_nice_sequence_counts(size, seed) -> None:
    chain = sample_chain(size, seed)

    assert sum(1 for _ in nice_sequences(chain, 1)) == size
    assert sum(1 for _ in nice_sequences(chain, 2)) == size**2 // 2
    assert sum(1 for _ in nice_sequences(chain, 3)) == size**3 // 4
    assert sequence_weight(size, 3) * Fraction(size**3, 4) == 1


def test_prefix_marginal_is_the_shorter_law(circulant) -> None:
    law = prefix_marginal(circulant, 4, 2)
    assert law == {sequence: sequence_weight(4, 2) for sequence in nice_sequences(circulant, 2)}
    assert sum(law.values()) == 1


def test_y_statistics_of_the_circulant_chain(circulant) -> None:
    # predecessors of 1 are 1 and 4, successors of 1 are 1 and 2
    statistics = y_statistics(circulant, 1, 2, 1, 2)

    assert statistics.a == 4
    assert statistics.ab == 4
    assert statistics.c == 4
    assert statistics.c_a == 4
    assert statistics.c_ab == 8
    assert y_value(circulant, (1,), (1,)) == statistics.c_a


def test_y_statistics_need_distinct_indices(circulant) -> None:
    with pytest.raises(StructuralError, match="distinct"):
        y_statistics(circulant, 1, 1, 2, 3)


@given(st.integers(0, 1000))
def test_single_row_statistic_is_exactly_n(seed) -> None:
    chain = sample_chain(6, seed)
    for c in range(1, 7):
        assert y_value(chain, (), (c,)) == 6


def test_ordered_pairs() -> None:
    pairs = list(ordered_pairs(3))
    assert len(pairs) == 6
    assert all(a != b for a, b in pairs)


def test_event_e_fails_on_the_circulant_chain(circulant) -> None:
    report = event_e_check(circulant)

    assert not report.holds
    assert not report.sampled
    assert report.checked == 144
    violation = report.violation
    assert (violation.a, violation.b, violation.c, violation.d) == (1, 2, 1, 2)
    assert violation.ratio == "c_ab/c_a"
    assert (violation.numerator, violation.denominator) == (8, 4)


def test_exhaustive_and_sampled_event_e_agree() -> None:
    chain = sample_chain(8, 5)
    exhaustive = event_e_check(chain)
    sampled = event_e_check(chain, samples=500, seed=1)

    assert sampled.sampled
    assert sampled.checked == 500
    if exhaustive.holds:
        assert sampled.holds
    if not sampled.holds:
        assert not exhaustive.holds


def test_event_e_samples_beyond_the_budget(monkeypatch) -> None:
    monkeypatch.setattr(settings, "EVENT_E_BUDGET", 10)
    monkeypatch.setattr(settings, "EVENT_E_SAMPLES", 50)
    report = event_e_check(sample_chain(4, 0), seed=0)

    assert report.sampled
    assert report.checked == 50


def test_violation_fraction(circulant) -> None:
    report = event_e_check(circulant)
    assert report.violation_fraction == Fraction(report.violations, 144)
    assert 0 < report.violation_fraction <= 1


def test_adjacency_matches_successors(circulant) -> None:
    expected = np.array(
        [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]],
        dtype=bool,
    )
    assert (circulant.adjacency == expected).all()
