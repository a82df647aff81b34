# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

"""
Hypothesis strategies for small structures over two states.
"""

from fractions import Fraction

from hypothesis import strategies as st

from infodist.structures import Garbling, InfoStructure, PayoffStructure


STATES = ("blue", "red")

GRID = [Fraction(x, 2) for x in range(-2, 3)]


@st.composite
def info_structures(draw, signals: int = 2) -> InfoStructure:

    cells = [(k, c, d) for k in range(len(STATES)) for c in range(signals) for d in range(signals)]
    weights = draw(
        st.lists(st.integers(0, 4), min_size=len(cells), max_size=len(cells)).filter(lambda w: sum(w) > 0)
    )
    total = sum(weights)
    return InfoStructure(STATES, {cell: Fraction(w, total) for cell, w in zip(cells, weights) if w})


@st.composite
def payoff_structures(draw, size: int = 2) -> PayoffStructure:

    cells = [(k, i, j) for k in range(len(STATES)) for i in range(size) for j in range(size)]
    values = draw(st.lists(st.sampled_from(GRID), min_size=len(cells), max_size=len(cells)))
    return PayoffStructure(STATES, size, dict(zip(cells, values)))


@st.composite
def garblings(draw, sources: int = 2, targets: int = 2) -> Garbling:

    rows = {}
    for source in range(sources):
        weights = draw(
            st.lists(st.integers(0, 3), min_size=targets, max_size=targets).filter(lambda w: sum(w) > 0)
        )
        total = sum(weights)
        rows[source] = {target: Fraction(w, total) for target, w in enumerate(weights)}
    return Garbling(rows)
