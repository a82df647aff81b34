"""
Random successor chains on :code:`{1, ..., N}`.

Every state :code:`a` gets a set :code:`S_a` of exactly :code:`N/2`
successors. A sequence is nice when every element is a successor of the one
before it. Player signals are sequences too and are encoded as integers in
base :code:`N`, first element most significant.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from logging import getLogger
from typing import Iterator, Sequence

import numpy as np

from infodist import settings
from infodist.errors import StructuralError


logger = getLogger(__name__)


@dataclass(frozen=True)
class ChainSpec:
    """
    Successor sets of a chain. States are :code:`1 .. size`.
    """

    size: int  #:
    successors: tuple[tuple[int, ...], ...]  #:
    seed: int | None = None  #:

    def __post_init__(self):

        if self.size < 2 or self.size % 2:
            raise StructuralError(f"ChainSpec: N must be even and at least 2, got {self.size}")
        if len(self.successors) != self.size:
            raise StructuralError(
                f"ChainSpec: expected {self.size} successor sets, got {len(self.successors)}"
            )

        cleaned = []
        for a, row in enumerate(self.successors, start=1):
            row = tuple(sorted(int(b) for b in row))
            if len(set(row)) != self.size // 2:
                raise StructuralError(
                    f"ChainSpec: successor set of {a} must hold {self.size // 2} distinct states"
                )
            if row[0] < 1 or row[-1] > self.size:
                raise StructuralError(f"ChainSpec: successor set of {a} leaves 1..{self.size}")
            cleaned.append(row)

        object.__setattr__(self, "successors", tuple(cleaned))

    @cached_property
    def successor_sets(self) -> tuple[frozenset[int], ...]:
        # index 0 is unused so that states index directly
        return (frozenset(),) + tuple(frozenset(row) for row in self.successors)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """
        :code:`X[a-1, b-1]` is true iff :code:`b` is a successor of :code:`a`.
        """

        matrix = np.zeros((self.size, self.size), dtype=bool)
        for a, row in enumerate(self.successors):
            matrix[a, [b - 1 for b in row]] = True
        return matrix

    def follows(self, a: int, b: int) -> bool:
        return b in self.successor_sets[a]


def draw_successors(rng: np.random.Generator, size: int) -> np.ndarray:
    """
    One uniformly random chain as a boolean adjacency matrix.
    """

    order = rng.random((size, size)).argsort(axis=1)
    matrix = np.zeros((size, size), dtype=bool)
    matrix[np.arange(size)[:, None], order[:, : size // 2]] = True
    return matrix


def sample_chain(size: int, seed: int | None) -> ChainSpec:
    """
    Draws every :code:`S_a` independently and uniformly among the subsets of
    size :code:`N/2`, reproducibly for a given seed.
    """

    if size < 2 or size % 2:
        raise StructuralError(f"sample_chain: N must be even and at least 2, got {size}")

    rng = np.random.default_rng(seed)
    matrix = draw_successors(rng, size)
    successors = tuple(tuple(int(b) + 1 for b in np.flatnonzero(row)) for row in matrix)

    logger.debug(f"Sampled chain with N={size}, seed={seed}")

    return ChainSpec(size, successors, seed)


def chain_from_successors(successors: Sequence[Sequence[int]], seed: int | None = None) -> ChainSpec:
    return ChainSpec(len(successors), tuple(tuple(row) for row in successors), seed)


def encode_tuple(sequence: Sequence[int], size: int) -> int:
    """
    :code:`sum_t (a_t - 1) N^(len - 1 - t)`.
    """

    code = 0
    for a in sequence:
        if not 1 <= a <= size:
            raise StructuralError(f"encode_tuple: element {a} outside 1..{size}")
        code = code * size + (a - 1)
    return code


def decode_tuple(code: int, length: int, size: int) -> tuple[int, ...]:

    if not 0 <= code < size**length:
        raise StructuralError(f"decode_tuple: code {code} outside [0, {size}^{length})")

    digits = []
    for _ in range(length):
        code, digit = divmod(code, size)
        digits.append(digit + 1)
    return tuple(reversed(digits))


def interleave(own: Sequence[int], other: Sequence[int], length: int) -> tuple[int, ...]:
    """
    :code:`(own_1, other_1, own_2, other_2, ...)` cut after :code:`length`
    elements.
    """

    sequence = []
    for t in range(length):
        source = own if t % 2 == 0 else other
        sequence.append(source[t // 2])
    return tuple(sequence)


def first_break(chain: ChainSpec, sequence: Sequence[int]) -> int | None:
    """
    The smallest level :code:`t` (1-based) such that the prefix of length
    :code:`t` is not nice, or :code:`None` for a nice sequence.
    """

    for t in range(1, len(sequence)):
        if not chain.follows(sequence[t - 1], sequence[t]):
            return t + 1
    return None


def is_nice(chain: ChainSpec, sequence: Sequence[int]) -> bool:
    return first_break(chain, sequence) is None


def nice_sequences(chain: ChainSpec, length: int) -> Iterator[tuple[int, ...]]:
    """
    All nice sequences of the given length, in lexicographic order.
    """

    if length < 1:
        return

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for b in chain.successors[prefix[-1] - 1]:
            yield from extend(prefix + (b,))

    for a in range(1, chain.size + 1):
        yield from extend((a,))


def sequence_weight(size: int, length: int) -> Fraction:
    """
    Probability :code:`(1/N) (2/N)^(length-1)` of each nice sequence under
    the uniform start and uniform successor law.
    """

    return Fraction(1, size) * Fraction(2, size) ** (length - 1)


def prefix_marginal(chain: ChainSpec, length: int, prefix_length: int) -> dict[tuple[int, ...], Fraction]:
    """
    Law of the first :code:`prefix_length` elements of a random nice
    sequence of length :code:`length`.
    """

    if not 1 <= prefix_length <= length:
        raise StructuralError(f"prefix_marginal: prefix length {prefix_length} not in [1, {length}]")

    law: dict[tuple[int, ...], Fraction] = {}
    weight = sequence_weight(chain.size, length)
    for sequence in nice_sequences(chain, length):
        prefix = sequence[:prefix_length]
        law[prefix] = law.get(prefix, Fraction(0)) + weight
    return law


@dataclass(frozen=True)
class YStatistics:
    """
    Normalised counts for distinct columns :code:`a != b` and rows
    :code:`c != d`. A subscript index :code:`a` counts the states with
    successor :code:`a`; a superscript index :code:`c` counts the
    successors of :code:`c`. Each count is scaled by :code:`2^(number of
    indices)` so that its expectation is :code:`N`.
    """

    a: int  #:
    ab: int  #:
    c: int  #:
    cd: int  #:
    c_a: int  #:
    c_ab: int  #:
    cd_a: int  #:
    cd_ab: int  #:


def y_value(chain: ChainSpec, columns: Sequence[int] = (), rows: Sequence[int] = ()) -> int:
    """
    :code:`2^(len(columns) + len(rows)) sum_i prod_a X[i, a] prod_c X[c, i]`
    with 1-based indices.
    """

    X = chain.adjacency
    mask = np.ones(chain.size, dtype=bool)
    for a in columns:
        mask &= X[:, a - 1]
    for c in rows:
        mask &= X[c - 1, :]
    return int(2 ** (len(columns) + len(rows)) * int(mask.sum()))


def y_statistics(chain: ChainSpec, a: int, b: int, c: int, d: int) -> YStatistics:
    """
    Raises:
        StructuralError: if :code:`a == b` or :code:`c == d`.
    """

    if a == b or c == d:
        raise StructuralError("y_statistics: indices a, b and c, d must be distinct")
    for index in (a, b, c, d):
        if not 1 <= index <= chain.size:
            raise StructuralError(f"y_statistics: index {index} outside 1..{chain.size}")

    return YStatistics(
        a=y_value(chain, (a,)),
        ab=y_value(chain, (a, b)),
        c=y_value(chain, (), (c,)),
        cd=y_value(chain, (), (c, d)),
        c_a=y_value(chain, (a,), (c,)),
        c_ab=y_value(chain, (a, b), (c,)),
        cd_a=y_value(chain, (a,), (c, d)),
        cd_ab=y_value(chain, (a, b), (c, d)),
    )


def ordered_pairs(size: int) -> Iterator[tuple[int, int]]:
    return ((a, b) for a, b in itertools.product(range(1, size + 1), repeat=2) if a != b)


class Blame(str, Enum):
    NICE = "nice"
    PLAYER_1 = "not-nice-player-1"
    PLAYER_2 = "not-nice-player-2"


@dataclass(frozen=True)
class NicenessVerdict:
    """
    Player 1 owns the odd positions of an interleaved sequence, player 2
    the even ones; a sequence that is not nice is blamed on the owner of
    its first failing position.
    """

    status: Blame  #:
    failing_index: int | None = None  #:


def niceness(chain: ChainSpec, sequence: Sequence[int]) -> NicenessVerdict:
    """
    Raises:
        StructuralError: for an empty sequence or states outside
            :code:`1 .. N`.
    """

    if len(sequence) == 0:
        raise StructuralError("niceness: the sequence must be non-empty")
    for a in sequence:
        if not 1 <= a <= chain.size:
            raise StructuralError(f"niceness: state {a} outside 1..{chain.size}")

    index = first_break(chain, sequence)
    if index is None:
        return NicenessVerdict(Blame.NICE)
    if index % 2:
        return NicenessVerdict(Blame.PLAYER_1, index)
    return NicenessVerdict(Blame.PLAYER_2, index)


#: Names of the seven ratios whose closeness to 1 defines event E.
E_RATIOS = (
    "ab/a",
    "c_ab/c_a",
    "cd_a/c_a",
    "cd_ab/cd_a",
    "cd/c",
    "c_a/c",
    "cd_a/cd",
)


@dataclass(frozen=True)
class EventViolation:

    a: int  #:
    b: int  #:
    c: int  #:
    d: int  #:
    ratio: str  #:
    numerator: int  #:
    denominator: int  #:


@dataclass(frozen=True)
class EventReport:
    """
    Outcome of :func:`event_e_check`. :code:`violation` is the first
    violating tuple in lexicographic order of :code:`(a, b, c, d)`. A sampled
    scan cannot prove that E holds; :code:`holds` then only means that no
    sampled tuple violated it.
    """

    holds: bool  #:
    violation: EventViolation | None  #:
    checked: int  #:
    violations: int  #:
    sampled: bool  #:

    @property
    def violation_fraction(self) -> Fraction:
        return Fraction(self.violations, self.checked) if self.checked else Fraction(0)


def _ratio_pairs(s: YStatistics) -> tuple[tuple[int, int], ...]:
    return (
        (s.ab, s.a),
        (s.c_ab, s.c_a),
        (s.cd_a, s.c_a),
        (s.cd_ab, s.cd_a),
        (s.cd, s.c),
        (s.c_a, s.c),
        (s.cd_a, s.cd),
    )


def _close(numerator, denominator, alpha: Fraction):
    """
    :code:`|numerator / denominator - 1| <= 2 alpha`, exactly, with a zero
    denominator counting as far.
    """

    return (denominator != 0) & (
        alpha.denominator * abs(numerator - denominator) <= 2 * alpha.numerator * denominator
    )


def _exhaustive_event_e(chain: ChainSpec, alpha: Fraction) -> EventReport:

    X = chain.adjacency.astype(np.int64)
    size = chain.size

    # every array is indexed [a, b, c, d], 0-based
    y_a = (2 * X.sum(axis=0))[:, None, None, None]
    y_ab = (4 * (X.T @ X))[:, :, None, None]
    y_c = (2 * X.sum(axis=1))[None, None, :, None]
    y_cd = (4 * (X @ X.T))[None, None, :, :]
    y_c_a = (4 * (X @ X)).T[:, None, :, None]
    y_c_ab = (8 * np.einsum("ci,ia,ib->abc", X, X, X))[:, :, :, None]
    y_cd_a = (8 * np.einsum("ci,di,ia->acd", X, X, X))[:, None, :, :]
    y_cd_ab = 16 * np.einsum("ci,di,ia,ib->abcd", X, X, X, X)

    pairs = (
        (y_ab, y_a),
        (y_c_ab, y_c_a),
        (y_cd_a, y_c_a),
        (y_cd_ab, y_cd_a),
        (y_cd, y_c),
        (y_c_a, y_c),
        (y_cd_a, y_cd),
    )
    shape = (size, size, size, size)
    close = [np.broadcast_to(_close(n, d, alpha), shape) for n, d in pairs]

    distinct = ~np.eye(size, dtype=bool)
    relevant = distinct[:, :, None, None] & distinct[None, None, :, :]
    failing = relevant & ~np.logical_and.reduce(close)

    checked = int(relevant.sum())
    violations = int(failing.sum())
    if violations == 0:
        return EventReport(True, None, checked, 0, False)

    a, b, c, d = (int(x) for x in np.argwhere(failing)[0])
    name_index = next(n for n, mask in enumerate(close) if not mask[a, b, c, d])
    numerator, denominator = pairs[name_index]
    violation = EventViolation(
        a + 1,
        b + 1,
        c + 1,
        d + 1,
        E_RATIOS[name_index],
        int(np.broadcast_to(numerator, shape)[a, b, c, d]),
        int(np.broadcast_to(denominator, shape)[a, b, c, d]),
    )
    return EventReport(False, violation, checked, violations, False)


def _sampled_event_e(chain: ChainSpec, alpha: Fraction, samples: int, seed: int | None) -> EventReport:

    rng = np.random.default_rng(seed)
    size = chain.size
    first: EventViolation | None = None
    violations = 0

    for _ in range(samples):
        a, b = (int(x) + 1 for x in rng.choice(size, 2, replace=False))
        c, d = (int(x) + 1 for x in rng.choice(size, 2, replace=False))
        statistics = y_statistics(chain, a, b, c, d)
        for name, (numerator, denominator) in zip(E_RATIOS, _ratio_pairs(statistics)):
            if not _close(numerator, denominator, alpha):
                violations += 1
                if first is None or (a, b, c, d) < (first.a, first.b, first.c, first.d):
                    first = EventViolation(a, b, c, d, name, numerator, denominator)
                break

    return EventReport(violations == 0, first, samples, violations, True)


def event_e_check(
    chain: ChainSpec,
    alpha: Fraction = Fraction(1, 25),
    samples: int | None = None,
    seed: int | None = None,
) -> EventReport:
    """
    Checks whether all seven Y ratios lie within :code:`2 alpha` of 1 for
    every :code:`a != b, c != d`.

    The scan is exhaustive while :code:`N^4` stays within
    :code:`settings.EVENT_E_BUDGET`; beyond that, or when :code:`samples`
    is given, random tuples are checked instead and the report is flagged
    as sampled.
    """

    alpha = Fraction(alpha)

    if samples is None and chain.size**4 <= settings.EVENT_E_BUDGET:
        report = _exhaustive_event_e(chain, alpha)
    else:
        if samples is None:
            samples = settings.EVENT_E_SAMPLES
            logger.warning(
                f"Event E scan of N={chain.size} exceeds the budget, "
                f"checking {samples} sampled tuples instead"
            )
        report = _sampled_event_e(chain, alpha, samples, seed)

    logger.info(
        f"Event E at N={chain.size}: {report.violations} of {report.checked} tuples violate"
    )
    return report
