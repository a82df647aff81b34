"""
A fixed enumeration of payoff structures and the weak distance built on it.

Structures are enumerated in blocks :code:`(L, m)`: every game of
:code:`G(L)` whose block entries lie on the dyadic grid
:code:`-1, -1 + 2^(1-m), ..., 1`. Blocks are visited along diagonals
:code:`L + m = s + 1` for :code:`s = 1, 2, ...`, smaller :code:`L` first.
Within a block the entries, read in lexicographic order of
:code:`(k, i, j)`, are the digits of the offset in base :code:`2^m + 1`,
most significant first, digit :code:`t` meaning :code:`-1 + t 2^(1-m)`.
Every game of :code:`G(L)` is approached arbitrarily closely in sup norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Iterator, Sequence

from infodist.errors import StructuralError
from infodist.game_value import bayesian_value
from infodist.structures import InfoStructure, PayoffStructure


logger = getLogger(__name__)


ENUMERATION_VERSION = "dyadic-diagonal-v1"

ONE = Fraction(1)


@dataclass(frozen=True)
class WeakDistanceBounds:
    """
    :code:`lower` is the truncated sum, :code:`upper` adds the largest
    possible tail :code:`2 * 2^-terms`.
    """

    lower: Fraction  #:
    upper: Fraction  #:
    terms: int  #:
    version: str = ENUMERATION_VERSION  #:


def blocks() -> Iterator[tuple[int, int]]:
    """
    The blocks :code:`(L, m)` in enumeration order.
    """

    s = 1
    while True:
        for size in range(1, s + 1):
            yield size, s + 1 - size
        s += 1


def block_count(size: int, m: int, n_states: int) -> int:
    return (2**m + 1) ** (n_states * size * size)


def grid_value(m: int, digit: int) -> Fraction:
    return -ONE + Fraction(2 * digit, 2**m)


def _entries(n_states: int, size: int) -> list[tuple[int, int, int]]:
    return [(k, i, j) for k in range(n_states) for i in range(size) for j in range(size)]


def enumeration_block(n: int, n_states: int) -> tuple[int, int, int]:
    """
    Locates the n-th structure.

    Returns:
        tuple[int, int, int]: :code:`(L, m, offset)` with a 0-based offset
            inside the block.
    """

    if n < 1:
        raise StructuralError(f"enumeration index must be at least 1, got {n}")

    remaining = n - 1
    for size, m in blocks():
        count = block_count(size, m, n_states)
        if remaining < count:
            return size, m, remaining
        remaining -= count


def enumerate_payoff(n: int, states: Sequence[str]) -> PayoffStructure:
    """
    The n-th payoff structure (1-based) over the given states.
    """

    states = tuple(states)
    size, m, offset = enumeration_block(n, len(states))
    base = 2**m + 1
    cells = _entries(len(states), size)

    digits = []
    for _ in cells:
        offset, digit = divmod(offset, base)
        digits.append(digit)
    digits.reverse()

    return PayoffStructure(
        states,
        size,
        {cell: grid_value(m, digit) for cell, digit in zip(cells, digits)},
    )


def locate_payoff(size: int, m: int, digits: Sequence[int], n_states: int) -> int:
    """
    Inverse of :func:`enumerate_payoff` on grid games.

    Args:
        size (int): block size :code:`L`
        m (int): grid resolution
        digits (Sequence[int]): one digit in :code:`[0, 2^m]` per entry,
            in lexicographic order of :code:`(k, i, j)`
        n_states (int):

    Returns:
        int: the 1-based enumeration index
    """

    base = 2**m + 1
    if len(digits) != n_states * size * size:
        raise StructuralError(
            f"locate_payoff: expected {n_states * size * size} digits, got {len(digits)}"
        )
    if any(not 0 <= digit < base for digit in digits):
        raise StructuralError(f"locate_payoff: digits must lie in [0, {base - 1}]")

    index = 1
    for block in blocks():
        if block == (size, m):
            break
        index += block_count(*block, n_states)

    offset = 0
    for digit in digits:
        offset = offset * base + digit
    return index + offset


def nearest_index(g: PayoffStructure, tolerance: Fraction) -> int:
    """
    Index of an enumerated structure of the same block size within
    :code:`tolerance` of :code:`g` in sup norm.
    """

    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise StructuralError(f"nearest_index: tolerance must be positive, got {tolerance}")

    m = 1
    while Fraction(1, 2**m) > tolerance:
        m += 1

    step = Fraction(2, 2**m)
    digits = []
    for k, i, j in _entries(len(g.states), g.size):
        t = (g.entry(k, i, j) + ONE) / step
        digit = int(t + Fraction(1, 2))
        digits.append(min(max(digit, 0), 2**m))

    return locate_payoff(g.size, m, digits, len(g.states))


def weak_distance(u: InfoStructure, v: InfoStructure, terms: int) -> WeakDistanceBounds:
    """
    Truncation of :code:`sum_n 2^-n |val(u, g_n) - val(v, g_n)|`.

    The first blocks hold 1x1 games, whose values only see the law of the
    state. Over two states these are the first 34 indices, so structures
    with the same state marginal get :code:`lower == 0` until
    :code:`terms` exceeds 34.

    Args:
        u (InfoStructure):
        v (InfoStructure):
        terms (int): number of enumerated games to evaluate

    Returns:
        WeakDistanceBounds:
    """

    if u.states != v.states:
        raise StructuralError(f"weak_distance: state sets differ ({u.states} vs {v.states})")
    if terms < 1:
        raise StructuralError(f"weak_distance: terms must be at least 1, got {terms}")

    lower = Fraction(0)
    for n in range(1, terms + 1):
        g = enumerate_payoff(n, u.states)
        difference = abs(bayesian_value(u, g).value - bayesian_value(v, g).value)
        lower += difference / 2**n

    upper = lower + Fraction(2, 2**terms)
    logger.info(f"weak_distance: [{lower}, {upper}] after {terms} terms")

    return WeakDistanceBounds(lower, upper, terms)
