"""
Information structures built from a successor chain, and the checks
around them.

:func:`build_u_l` draws a nice sequence of length :code:`2l` and hands the
odd positions to player 1 and the even positions to player 2; the state is
1 with probability :code:`c_1 / (N + 1)`. In :func:`build_g_p` each player
reports a tuple of signals; player 1 is paid for guessing the state from
its first report and both players are rewarded or punished depending on
whether the interleaved reports form a nice sequence.

Signal and action tuples are encoded with :func:`infodist.chain.encode_tuple`.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Iterator, Sequence

import numpy as np

from infodist import settings
from infodist.chain import (
    ChainSpec,
    decode_tuple,
    encode_tuple,
    first_break,
    interleave,
    is_nice,
    nice_sequences,
    sequence_weight,
    y_value,
)
from infodist.errors import BudgetExceeded, StructuralError
from infodist.game_value import bayesian_value
from infodist.structures import InfoStructure, PayoffStructure


logger = getLogger(__name__)


ALPHA = Fraction(1, 25)
STATES = ("0", "1")

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def epsilon_ceiling(size: int) -> Fraction:
    return Fraction(1, 10 * (size + 1) ** 2)


def default_epsilon(size: int) -> Fraction:
    return Fraction(1, 10 * (size + 1) ** 2 + 1)


def check_epsilon(size: int, epsilon: Fraction | None) -> Fraction:
    """
    Returns:
        Fraction: :code:`epsilon`, or the default for :code:`N` when it is
            :code:`None`.

    Raises:
        StructuralError: unless :code:`0 < epsilon < 1/(10 (N+1)^2)`.
    """

    if epsilon is None:
        return default_epsilon(size)
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < epsilon_ceiling(size):
        raise StructuralError(
            f"epsilon must lie in (0, {epsilon_ceiling(size)}) for N={size}, got {epsilon}"
        )
    return epsilon


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------


def first_signal_payoff(size: int, k: int, reported: int) -> Fraction:
    """
    :code:`-(k - c/(N+1))^2 + (N+2)/(6(N+1))` for a reported first signal
    :code:`c`. Its expectation under truthful reporting is zero.
    """

    return -((k - Fraction(reported, size + 1)) ** 2) + Fraction(size + 2, 6 * (size + 1))


def decision_structure(size: int) -> InfoStructure:
    """
    One-player problem behind the first report: the signal :code:`c` is
    uniform on :code:`1 .. N` (encoded as :code:`c - 1`) and the state is 1
    with probability :code:`c / (N + 1)`.
    """

    entries = {}
    for c in range(1, size + 1):
        weight = Fraction(1, size)
        entries[(1, c - 1, 0)] = weight * Fraction(c, size + 1)
        entries[(0, c - 1, 0)] = weight * (1 - Fraction(c, size + 1))
    return InfoStructure(STATES, entries)


def decision_payoff(size: int) -> PayoffStructure:
    """
    The reward :func:`first_signal_payoff` as a payoff structure of block
    size :code:`N` in which player 2 plays no role.
    """

    return PayoffStructure(
        STATES,
        size,
        {
            (k, i, j): first_signal_payoff(size, k, i + 1)
            for k in (0, 1)
            for i in range(size)
            for j in range(size)
        },
    )


def build_u_l(chain: ChainSpec, l: int) -> InfoStructure:
    """
    Args:
        chain (ChainSpec):
        l (int): number of signals per player, at least 1

    Returns:
        InfoStructure: over :code:`STATES`, supported on the nice
            interleavings of length :code:`2l`.
    """

    if l < 1:
        raise StructuralError(f"build_u_l: l must be at least 1, got {l}")

    size = chain.size
    weight = sequence_weight(size, 2 * l)

    entries = {}
    for sequence in nice_sequences(chain, 2 * l):
        c = encode_tuple(sequence[0::2], size)
        d = encode_tuple(sequence[1::2], size)
        share = Fraction(sequence[0], size + 1)
        entries[(1, c, d)] = weight * share
        entries[(0, c, d)] = weight * (1 - share)

    logger.debug(f"build_u_l: N={size}, l={l}, {len(entries)} entries")

    return InfoStructure(STATES, entries)


def reward_at(level: int | None, epsilon: Fraction) -> Fraction:
    """
    :code:`epsilon` for a nice report, :code:`+5 epsilon` when player 2
    broke it first (even level) and :code:`-5 epsilon` when player 1 did.
    """

    if level is None:
        return epsilon
    return 5 * epsilon if level % 2 == 0 else -5 * epsilon


def reward(chain: ChainSpec, reported_1: Sequence[int], reported_2: Sequence[int], epsilon: Fraction) -> Fraction:
    """
    The niceness reward of interleaved reports, player 1 first.
    """

    sequence = interleave(reported_1, reported_2, len(reported_1) + len(reported_2))
    return reward_at(first_break(chain, sequence), epsilon)


def build_g_p(chain: ChainSpec, p: int, epsilon: Fraction | None = None) -> PayoffStructure:
    """
    Payoff structure where player 1 reports :code:`c' in C^p` and player 2
    reports :code:`d' in D^(p-1)`.

    The action sets are rectangular; they are embedded in a square block of
    size :code:`N^p` and player-2 action :code:`j` stands for the tuple
    encoded by :code:`j mod N^(p-1)`. The copies are duplicate columns and
    do not change any value.

    Raises:
        StructuralError: for :code:`p < 1` or an out-of-range epsilon.
    """

    if p < 1:
        raise StructuralError(f"build_g_p: p must be at least 1, got {p}")

    size = chain.size
    epsilon = check_epsilon(size, epsilon)
    width = size**p
    columns = size ** (p - 1)

    block = {}
    for i in range(width):
        reported_1 = decode_tuple(i, p, size)
        base = [first_signal_payoff(size, k, reported_1[0]) for k in (0, 1)]
        for code in range(columns):
            h = reward(chain, reported_1, decode_tuple(code, p - 1, size), epsilon)
            for j in range(code, width, columns):
                for k in (0, 1):
                    block[(k, i, j)] = base[k] + h

    bound = Fraction(5, 6) + 5 * epsilon
    if any(abs(value) > bound for value in block.values()):
        raise StructuralError(f"build_g_p: an entry exceeds the bound {bound}")

    logger.debug(f"build_g_p: N={size}, p={p}, block size {width}")

    return PayoffStructure(STATES, width, block)


# ---------------------------------------------------------------------------
# Conditional laws of the opponent's signals
# ---------------------------------------------------------------------------


def _player_2_options(chain: ChainSpec, received: Sequence[int]) -> list[list[int]]:
    """
    Per position, the player-2 signals compatible with player 1 holding
    :code:`received`.
    """

    options = []
    for m, c in enumerate(received):
        allowed = []
        for i in chain.successors[c - 1]:
            if m + 1 == len(received) or chain.follows(i, received[m + 1]):
                allowed.append(i)
        options.append(allowed)
    return options


def _player_1_options(chain: ChainSpec, received: Sequence[int]) -> list[list[int]]:

    options = []
    for m, d in enumerate(received):
        candidates = range(1, chain.size + 1) if m == 0 else chain.successors[received[m - 1] - 1]
        options.append([i for i in candidates if chain.follows(i, d)])
    return options


def opponent_signals(chain: ChainSpec, player: int, received: Sequence[int]) -> list[tuple[int, ...]]:
    """
    Opponent tuples with positive probability given the player's own
    signals. They are equally likely.
    """

    for a in received:
        if not 1 <= a <= chain.size:
            raise StructuralError(f"opponent_signals: state {a} outside 1..{chain.size}")

    if player == 1:
        options = _player_2_options(chain, received)
    elif player == 2:
        options = _player_1_options(chain, received)
    else:
        raise StructuralError(f"opponent_signals: player must be 1 or 2, got {player}")

    return list(itertools.product(*options))


# ---------------------------------------------------------------------------
# UI conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UiCase:
    """
    One conditional probability that must lie within :code:`alpha` of 1/2.

    Conditions :code:`"guess"` (the extra signal of player 1) and
    :code:`"p1_misreport"` concern player 1 holding :code:`received` in
    :code:`C^l` and reporting :code:`reported`; :code:`"p2_misreport"`
    concerns player 2 holding :code:`received` in :code:`D^l` and reporting
    :code:`reported` in :code:`D^(p-1)`. The probability is
    that the interleaved report stays nice at level :code:`r + 1` given it
    is nice at level :code:`r`.
    """

    condition: str  #:
    l: int  #:
    received: tuple[int, ...]  #:
    reported: tuple[int, ...]  #:
    r: int  #:
    m: int | None = None  #:

    @property
    def player(self) -> int:
        return 2 if self.condition == "p2_misreport" else 1


@dataclass(frozen=True)
class UiResult:

    case: UiCase  #:
    probability: Fraction  #:
    passed: bool  #:


@dataclass(frozen=True)
class UiReport:
    """
    Outcome of :func:`check_ui`. Cases whose conditioning event has
    probability zero are counted in :code:`vacuous` and not tested.
    """

    l_max: int  #:
    alpha: Fraction  #:
    results: tuple[UiResult, ...]  #:
    vacuous: int  #:
    sampled: bool = False  #:

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return HALF - self.alpha, HALF + self.alpha

    @property
    def checked(self) -> int:
        return len(self.results)

    @property
    def violations(self) -> tuple[UiResult, ...]:
        return tuple(result for result in self.results if not result.passed)

    @property
    def holds(self) -> bool:
        return all(result.passed for result in self.results)

    def violation_counts(self) -> dict[str, int]:
        counts = {"guess": 0, "p1_misreport": 0, "p2_misreport": 0}
        for result in self.violations:
            counts[result.case.condition] += 1
        return counts

    @property
    def violation_fraction(self) -> Fraction:
        return Fraction(len(self.violations), self.checked) if self.checked else ZERO

    @property
    def mean_deviation(self) -> Fraction:
        """
        Mean of :code:`|P - 1/2|` over the tested cases.
        """

        if not self.results:
            return ZERO
        total = sum((abs(result.probability - HALF) for result in self.results), ZERO)
        return total / len(self.results)

    @property
    def max_deviation(self) -> Fraction:
        return max((abs(result.probability - HALF) for result in self.results), default=ZERO)


def ui_conditional(chain: ChainSpec, case: UiCase) -> Fraction | None:
    """
    The conditional probability of a case, summed directly over the
    opponent's signals. :code:`None` when the conditioning event has
    probability zero.
    """

    opponents = opponent_signals(chain, case.player, case.received)

    conditioned = 0
    continued = 0
    for other in opponents:
        if case.player == 1:
            sequence = interleave(case.reported, other, case.r + 1)
        else:
            sequence = interleave(other, case.reported, case.r + 1)
        level = first_break(chain, sequence)
        if level is not None and level <= case.r:
            continue
        conditioned += 1
        if level is None:
            continued += 1

    if conditioned == 0:
        return None
    return Fraction(continued, conditioned)


def _all_tuples(size: int, length: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, size + 1), repeat=length)


def ui_cases(chain: ChainSpec, l_max: int) -> Iterator[UiCase]:
    """
    Every case of the three UI conditions up to :code:`l_max`, for every
    received tuple with positive probability.
    """

    size = chain.size
    for l in range(1, l_max + 1):
        for c in _all_tuples(size, l):
            if not all(_player_2_options(chain, c)):
                continue
            for tail in _all_tuples(size, l):
                yield UiCase("guess", l, c, (c[0],) + tail, 2 * l)
            for tail in _all_tuples(size, l - 1):
                prefix = (c[0],) + tail
                for m in range(2, l + 1):
                    if prefix[m - 1] != c[m - 1]:
                        yield UiCase("p1_misreport", l, c, prefix, 2 * m - 2, m)
                        yield UiCase("p1_misreport", l, c, prefix, 2 * m - 1, m)

        for d in _all_tuples(size, l):
            if not all(_player_1_options(chain, d)):
                continue
            for p in range(2, l + 1):
                for reported in _all_tuples(size, p - 1):
                    for m in range(1, p):
                        if reported[m - 1] != d[m - 1]:
                            yield UiCase("p2_misreport", l, d, reported, 2 * m - 1, m)
                            yield UiCase("p2_misreport", l, d, reported, 2 * m, m)


def _random_nice(chain: ChainSpec, length: int, rng: np.random.Generator) -> tuple[int, ...]:

    sequence = [int(rng.integers(1, chain.size + 1))]
    while len(sequence) < length:
        sequence.append(int(rng.choice(chain.successors[sequence[-1] - 1])))
    return tuple(sequence)


def _random_other(size: int, avoid: int, rng: np.random.Generator) -> int:
    value = int(rng.integers(1, size))
    return value + 1 if value >= avoid else value


def sample_ui_cases(chain: ChainSpec, l_max: int, samples: int, seed: int | None) -> list[UiCase]:
    """
    Random cases: the received tuple is drawn from the structure itself and
    the report and the tested level uniformly.
    """

    rng = np.random.default_rng(seed)
    size = chain.size
    cases = []

    for _ in range(samples):
        l = int(rng.integers(1, l_max + 1))
        conditions = ("guess", "p1_misreport", "p2_misreport") if l >= 2 else ("guess",)
        condition = conditions[int(rng.integers(len(conditions)))]
        sequence = _random_nice(chain, 2 * l, rng)
        c, d = sequence[0::2], sequence[1::2]

        if condition == "guess":
            tail = tuple(int(x) for x in rng.integers(1, size + 1, size=l))
            cases.append(UiCase("guess", l, c, (c[0],) + tail, 2 * l))
        elif condition == "p1_misreport":
            reported = [c[0]] + [int(x) for x in rng.integers(1, size + 1, size=l - 1)]
            m = int(rng.integers(2, l + 1))
            if reported[m - 1] == c[m - 1]:
                reported[m - 1] = _random_other(size, c[m - 1], rng)
            r = 2 * m - 2 + int(rng.integers(2))
            cases.append(UiCase("p1_misreport", l, c, tuple(reported), r, m))
        else:
            p = int(rng.integers(2, l + 1))
            reported = [int(x) for x in rng.integers(1, size + 1, size=p - 1)]
            m = int(rng.integers(1, p))
            if reported[m - 1] == d[m - 1]:
                reported[m - 1] = _random_other(size, d[m - 1], rng)
            r = 2 * m - 1 + int(rng.integers(2))
            cases.append(UiCase("p2_misreport", l, d, tuple(reported), r, m))

    return cases


def check_ui(
    chain: ChainSpec,
    l_max: int,
    alpha: Fraction = ALPHA,
    samples: int | None = None,
    seed: int | None = None,
) -> UiReport:
    """
    Evaluates the UI conditions exactly.

    Without :code:`samples` every case up to :code:`l_max` is checked;
    with it, that many random cases are.

    Raises:
        StructuralError: for :code:`l_max < 1`.
        BudgetExceeded: when an exhaustive check would visit more than
            :code:`settings.UI_BUDGET` tuples.
    """

    if l_max < 1:
        raise StructuralError(f"check_ui: l_max must be at least 1, got {l_max}")

    alpha = Fraction(alpha)
    if samples is None:
        tuples = chain.size ** (2 * l_max + 1)
        if tuples > settings.UI_BUDGET:
            raise BudgetExceeded(
                f"check_ui: {tuples} tuples for N={chain.size}, l_max={l_max} exceed the budget "
                f"of {settings.UI_BUDGET}; use sampling instead"
            )
        cases: Iterator[UiCase] | list[UiCase] = ui_cases(chain, l_max)
    else:
        cases = sample_ui_cases(chain, l_max, samples, seed)

    low, high = HALF - alpha, HALF + alpha
    results = []
    vacuous = 0
    for case in cases:
        probability = ui_conditional(chain, case)
        if probability is None:
            vacuous += 1
            continue
        results.append(UiResult(case, probability, low <= probability <= high))

    report = UiReport(l_max, alpha, tuple(results), vacuous, samples is not None)
    logger.info(
        f"check_ui at N={chain.size}, l_max={l_max}: {len(report.violations)} of "
        f"{report.checked} conditionals outside [{low}, {high}]"
    )
    return report


# ---------------------------------------------------------------------------
# Closed forms in terms of the Y statistics
# ---------------------------------------------------------------------------


def _unique(indices: Sequence[int]) -> tuple[int, ...]:
    return tuple(dict.fromkeys(indices))


def _y_ratio(
    chain: ChainSpec,
    rows: Sequence[int],
    columns: Sequence[int],
    extra_row: int | None = None,
    extra_column: int | None = None,
) -> Fraction | None:
    """
    :code:`(1/2) Y(more) / Y(base)`, where :code:`more` adds one row or
    column index to :code:`base`. A repeated index is counted once.
    """

    rows = _unique(rows)
    columns = _unique(columns)
    more_rows = rows if extra_row is None else _unique(rows + (extra_row,))
    more_columns = columns if extra_column is None else _unique(columns + (extra_column,))

    denominator = y_value(chain, columns, rows)
    if denominator == 0:
        return None
    return HALF * Fraction(y_value(chain, more_columns, more_rows), denominator)


def ui_formula(chain: ChainSpec, case: UiCase) -> Fraction | None:
    """
    The conditional probability of a case expressed through Y statistics.
    """

    own, reported, m = case.received, case.reported, case.m

    if case.condition == "guess":
        l = case.l
        return _y_ratio(chain, (own[l - 1], reported[l - 1]), (), extra_column=reported[l])

    if case.condition == "p1_misreport":
        if case.r == 2 * m - 2:
            return _y_ratio(
                chain, (own[m - 2], reported[m - 2]), (own[m - 1],), extra_column=reported[m - 1]
            )
        columns = (own[m],) if m < case.l else ()
        return _y_ratio(chain, (own[m - 1],), columns, extra_row=reported[m - 1])

    if case.r == 2 * m - 1:
        if m == 1:
            return _y_ratio(chain, (), (own[0],), extra_column=reported[0])
        return _y_ratio(
            chain, (own[m - 2], reported[m - 2]), (own[m - 1],), extra_column=reported[m - 1]
        )
    return _y_ratio(chain, (own[m - 1],), (own[m],), extra_row=reported[m - 1])


@dataclass(frozen=True)
class FormulaMismatch:

    case: UiCase  #:
    direct: Fraction  #:
    formula: Fraction | None  #:


@dataclass(frozen=True)
class CrosscheckReport:

    checked: int  #:
    vacuous: int  #:
    mismatches: tuple[FormulaMismatch, ...]  #:

    @property
    def exact(self) -> bool:
        return not self.mismatches


def ui_formula_crosscheck(chain: ChainSpec, cases: Sequence[UiCase] | Iterator[UiCase]) -> CrosscheckReport:
    """
    Compares :func:`ui_conditional` with :func:`ui_formula` case by case.
    Vacuous cases are skipped.
    """

    checked = 0
    vacuous = 0
    mismatches = []
    for case in cases:
        direct = ui_conditional(chain, case)
        if direct is None:
            vacuous += 1
            continue
        checked += 1
        formula = ui_formula(chain, case)
        if formula != direct:
            mismatches.append(FormulaMismatch(case, direct, formula))

    if mismatches:
        logger.warning(f"ui_formula_crosscheck: {len(mismatches)} of {checked} cases differ")

    return CrosscheckReport(checked, vacuous, tuple(mismatches))


# ---------------------------------------------------------------------------
# Truthful play and the separation bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StageTerm:
    """
    One step of the backward induction. Given that the report is nice up
    to :code:`level`, :code:`expectation` is the conditional mean reward,
    :code:`first_break` and :code:`second_break` the probabilities that it
    breaks at :code:`level + 1` and :code:`level + 2`, and
    :code:`continued` the probability that it stays nice through
    :code:`level + 2`.
    """

    n: int  #:
    level: int  #:
    expectation: Fraction | None  #:
    first_break: Fraction  #:
    second_break: Fraction  #:
    continued: Fraction  #:


@dataclass(frozen=True)
class PayoffBound:

    expectation: Fraction  #:
    epsilon: Fraction  #:
    stages: tuple[StageTerm, ...]  #:

    def recursion_holds(self) -> bool:
        """
        Whether each stage expectation equals the probability-weighted
        rewards of the two next levels plus the continuation value, the
        continuation of the last stage being :code:`epsilon`.
        """

        for index, stage in enumerate(self.stages):
            if stage.expectation is None:
                continue
            following = self.stages[index + 1].expectation if index + 1 < len(self.stages) else self.epsilon
            rebuilt = (
                stage.first_break * reward_at(stage.level + 1, self.epsilon)
                + stage.second_break * reward_at(stage.level + 2, self.epsilon)
            )
            if stage.continued:
                if following is None:
                    return False
                rebuilt += stage.continued * following
            if rebuilt != stage.expectation:
                return False
        return True


def truthful_payoff_bound(
    chain: ChainSpec,
    l: int,
    p: int,
    reporter: int,
    received: Sequence[int],
    reported: Sequence[int],
    epsilon: Fraction | None = None,
) -> PayoffBound:
    """
    Expected niceness reward of a report when the opponent reports
    truthfully, with the stage terms of the backward induction.

    Player 2 is considered in the game with :code:`1 <= p <= l` and reports
    :code:`reported in D^(p-1)`; player 1 in the game with :code:`p = l + 1`
    and reports :code:`reported in C^(l+1)`.

    Raises:
        StructuralError: for ill-formed tuples or a received tuple of
            probability zero.
    """

    epsilon = check_epsilon(chain.size, epsilon)
    received = tuple(received)
    reported = tuple(reported)

    if reporter == 1:
        if p != l + 1 or len(received) != l or len(reported) != l + 1:
            raise StructuralError(
                "truthful_payoff_bound: player 1 needs p = l + 1, l received and l + 1 reported signals"
            )
        levels = [2 * n for n in range(1, l + 1)]
    elif reporter == 2:
        if not 1 <= p <= l or len(received) != l or len(reported) != p - 1:
            raise StructuralError(
                "truthful_payoff_bound: player 2 needs 1 <= p <= l, l received and p - 1 reported signals"
            )
        levels = [2 * n - 1 for n in range(1, p + 1)]
    else:
        raise StructuralError(f"truthful_payoff_bound: reporter must be 1 or 2, got {reporter}")

    for a in reported:
        if not 1 <= a <= chain.size:
            raise StructuralError(f"truthful_payoff_bound: state {a} outside 1..{chain.size}")

    opponents = opponent_signals(chain, reporter, received)
    if not opponents:
        raise StructuralError("truthful_payoff_bound: the received signals have probability zero")

    length = 2 * p - 1
    breaks = []
    for other in opponents:
        if reporter == 1:
            sequence = interleave(reported, other, length)
        else:
            sequence = interleave(other, reported, length)
        breaks.append(first_break(chain, sequence))

    expectation = sum((reward_at(level, epsilon) for level in breaks), ZERO) / len(breaks)

    stages = []
    for n, level in enumerate(levels, start=1):
        alive = [b for b in breaks if b is None or b > level]
        if not alive:
            stages.append(StageTerm(n, level, None, ZERO, ZERO, ZERO))
            continue
        total = len(alive)
        stages.append(
            StageTerm(
                n,
                level,
                sum((reward_at(b, epsilon) for b in alive), ZERO) / total,
                Fraction(sum(1 for b in alive if b == level + 1), total),
                Fraction(sum(1 for b in alive if b == level + 2), total),
                Fraction(sum(1 for b in alive if b is None or b > level + 2), total),
            )
        )

    return PayoffBound(expectation, epsilon, tuple(stages))


@dataclass(frozen=True)
class SeparationReport:
    """
    :code:`bound` is :code:`"lower"` when :code:`value >= epsilon` is
    expected and :code:`"upper"` when :code:`value <= -epsilon` is.
    """

    l: int  #:
    p: int  #:
    value: Fraction  #:
    epsilon: Fraction  #:
    bound: str  #:
    meets: bool  #:


def verify_separation(chain: ChainSpec, l: int, p: int, epsilon: Fraction | None = None) -> SeparationReport:
    """
    Solves :code:`val(u^l, g^p)` exactly and compares it with the
    separation bound for :code:`p <= l` or :code:`p = l + 1`.

    Raises:
        StructuralError: for :code:`p > l + 1` or :code:`p < 1`.
        BudgetExceeded: if the game is too large for the LP budget.
    """

    if l < 1 or not 1 <= p <= l + 1:
        raise StructuralError(f"verify_separation: need l >= 1 and 1 <= p <= l + 1, got l={l}, p={p}")

    size = chain.size
    epsilon = check_epsilon(size, epsilon)

    u = build_u_l(chain, l)
    signals_1 = len(u.signals_p1())
    signals_2 = len(u.signals_p2())
    rows = signals_2 * size ** (p - 1) + signals_1
    columns = signals_1 * size**p + signals_2 + 2 * rows
    if rows * columns > settings.LP_BUDGET:
        raise BudgetExceeded(
            f"verify_separation: the game for N={size}, l={l}, p={p} needs about {rows * columns} "
            f"tableau cells, the budget is {settings.LP_BUDGET}"
        )

    value = bayesian_value(u, build_g_p(chain, p, epsilon)).value

    if p <= l:
        bound, meets = "lower", value >= epsilon
    else:
        bound, meets = "upper", value <= -epsilon

    logger.info(f"verify_separation: val(u^{l}, g^{p}) = {value} at N={size}, {bound} bound met: {meets}")

    return SeparationReport(l, p, value, epsilon, bound, meets)


def truthful_strategy(l: int, p: int, size: int) -> dict[int, dict[int, Fraction]]:
    """
    Player 1 reporting its first :code:`p` signals, or its :code:`l`
    signals followed by :code:`1` when :code:`p = l + 1`, as a behaviour
    strategy over encoded signals.
    """

    strategy = {}
    for c in _all_tuples(size, l):
        report = c[:p] if p <= l else c + (1,) * (p - l)
        strategy[encode_tuple(c, size)] = {encode_tuple(report, size): Fraction(1)}
    return strategy


def is_consistent(chain: ChainSpec, u: InfoStructure, l: int) -> bool:
    """
    Whether every support point of :code:`u` decodes to a nice interleaving
    of length :code:`2l`.
    """

    for _, c, d in u.entries:
        sequence = interleave(decode_tuple(c, l, chain.size), decode_tuple(d, l, chain.size), 2 * l)
        if not is_nice(chain, sequence):
            return False
    return True
