"""
Concentration of random successor chains.

:func:`hoeffding_experiment` draws chains and compares the empirical tail
frequency of each statistic with its bound. The bounds involve :code:`e`
and are reported as decimal strings; every frequency is an exact rational.
The remaining functions check the exact inequalities the bounds rest on.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger

import numpy as np

from infodist.chain import draw_successors
from infodist.errors import StructuralError


logger = getLogger(__name__)


HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

#: Y statistics in the order of :class:`infodist.chain.YStatistics`.
Y_NAMES = ("Y_a", "Y_ab", "Y^c", "Y^cd", "Y^c_a", "Y^c_ab", "Y^cd_a", "Y^cd_ab")


@dataclass(frozen=True)
class StatisticTail:
    """
    :code:`within` is true when the frequency does not exceed the bound by
    more than three binomial standard errors. A bound outside the range of
    :code:`gamma` it was proven for is marked not :code:`applicable` and
    compared all the same.
    """

    name: str  #:
    frequency: Fraction  #:
    bound: float  #:
    applicable: bool  #:
    within: bool  #:

    @property
    def bound_text(self) -> str:
        return format_bound(self.bound)


@dataclass(frozen=True)
class HoeffdingReport:

    size: int  #:
    gamma: Fraction  #:
    trials: int  #:
    seed: int | None  #:
    tails: tuple[StatisticTail, ...]  #:

    @property
    def holds(self) -> bool:
        return all(tail.within for tail in self.tails)


def format_bound(value: float) -> str:
    return f"{value:.6e}"


def intersection_bound(size: int, gamma: Fraction) -> float:
    """
    Tail bound of :code:`|S_c & S_d|` around :code:`N/4`.
    """

    return 0.5 * math.exp(4) * size * math.exp(-2 * float(gamma) ** 2 * size)


def column_bound(size: int, gamma: Fraction) -> float:
    """
    Tail bound of :code:`sum_i X[i, a]` around :code:`N/2`.
    """

    return 2 * math.exp(-2 * size * float(gamma) ** 2)


def pair_column_bound(size: int, gamma: Fraction) -> float:
    """
    Tail bound of :code:`sum_i X[i, a] X[i, b]` around :code:`N/4`.
    """

    return 2 * math.exp(-size * float(gamma) ** 2 / 2)


def y_bound(size: int, gamma: Fraction) -> float:
    """
    Common tail bound of the Y statistics around :code:`N`.
    """

    return math.exp(4) * size * math.exp(-(size / 32) * (float(gamma) / 10) ** 2)


def lemma_bound(size: int) -> float:
    """
    Lower bound :code:`1 - 7 e^4 N^5 exp(-N / 2163200)` on the probability
    that event E holds. It is negative, hence vacuous, for all
    desk-scale :code:`N`.
    """

    return 1 - 7 * math.exp(4) * size**5 * math.exp(-size / 2163200)


def _within(frequency: Fraction, bound: float, trials: int) -> bool:
    if bound >= 1:
        return True
    return float(frequency) <= bound + 3 * math.sqrt(bound * (1 - bound) / trials)


def _exceeds(deviation: np.ndarray, scale: int, gamma: Fraction, size: int) -> np.ndarray:
    """
    :code:`|deviation| / scale >= gamma N`, exactly.
    """

    return np.abs(deviation) * gamma.denominator >= scale * gamma.numerator * size


def hoeffding_experiment(size: int, gamma: Fraction, trials: int, seed: int | None) -> HoeffdingReport:
    """
    Monte Carlo tail frequencies of the chain statistics.

    Every trial draws a fresh chain. The indices are :code:`a, b = 1, 2`
    and :code:`c, d = N - 1, N`.

    Args:
        size (int): chain size :code:`N`, even
        gamma (Fraction): relative deviation, positive
        trials (int): number of sampled chains
        seed (int | None):

    Returns:
        HoeffdingReport:
    """

    if size < 2 or size % 2:
        raise StructuralError(f"hoeffding_experiment: N must be even and at least 2, got {size}")
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise StructuralError(f"hoeffding_experiment: gamma must be positive, got {gamma}")
    if trials < 1:
        raise StructuralError(f"hoeffding_experiment: trials must be at least 1, got {trials}")

    rng = np.random.default_rng(seed)
    a, b, c, d = 0, 1, size - 2, size - 1

    names = ("|S_c & S_d|", "sum X_ia", "sum X_ia X_ib") + Y_NAMES
    hits = np.zeros(len(names), dtype=np.int64)

    for _ in range(trials):
        X = draw_successors(rng, size).astype(np.int64)
        col_a, col_b = X[:, a], X[:, b]
        row_c, row_d = X[c, :], X[d, :]

        shared = int((row_c * row_d).sum())
        ys = (
            2 * int(col_a.sum()),
            4 * int((col_a * col_b).sum()),
            2 * int(row_c.sum()),
            4 * shared,
            4 * int((col_a * row_c).sum()),
            8 * int((col_a * col_b * row_c).sum()),
            8 * int((col_a * row_c * row_d).sum()),
            16 * int((col_a * col_b * row_c * row_d).sum()),
        )

        deviations = np.array(
            [4 * shared - size, 2 * int(col_a.sum()) - size, 4 * int((col_a * col_b).sum()) - size]
            + [y - size for y in ys]
        )
        scales = np.array([4, 2, 4] + [1] * len(ys))
        hits += _exceeds(deviations, scales, gamma, size)

    column_regime = gamma >= Fraction(1, 2 * size - 2)
    y_regime = gamma >= Fraction(64, size)
    bounds = (
        (intersection_bound(size, gamma), True),
        (column_bound(size, gamma), column_regime),
        (pair_column_bound(size, gamma), column_regime),
    ) + tuple((y_bound(size, gamma), y_regime) for _ in Y_NAMES)

    tails = []
    for name, count, (bound, applicable) in zip(names, hits, bounds):
        frequency = Fraction(int(count), trials)
        tails.append(StatisticTail(name, frequency, bound, applicable, _within(frequency, bound, trials)))

    report = HoeffdingReport(size, gamma, trials, seed, tuple(tails))
    logger.info(
        f"hoeffding_experiment: N={size}, gamma={gamma}, {trials} trials, all within bounds: {report.holds}"
    )
    return report


# ---------------------------------------------------------------------------
# Exact inequalities
# ---------------------------------------------------------------------------


def e_bounds(terms: int = 30) -> tuple[Fraction, Fraction]:
    """
    Rationals :code:`low < e < high` from the partial sum of
    :code:`sum 1/k!` and its tail bound :code:`1 / (K! K)`.
    """

    low = Fraction(0)
    factorial = 1
    for k in range(terms + 1):
        if k:
            factorial *= k
        low += Fraction(1, factorial)
    return low, low + Fraction(1, factorial * terms)


def stirling_holds(n: int) -> bool:
    """
    Exact check of :code:`n^(n+1/2) e^-n <= n! <= e n^(n+1/2) e^-n`,
    squared to clear the half powers.
    """

    if n < 1:
        raise StructuralError(f"stirling_holds: n must be at least 1, got {n}")

    low, high = e_bounds()
    power = Fraction(n) ** (2 * n + 1)
    factorial = Fraction(math.factorial(n)) ** 2

    return power <= factorial * low ** (2 * n) and factorial * high ** (2 * n - 2) <= power


def balanced_probability(size: int) -> Fraction:
    """
    Probability that two independent fair-coin subsets of :code:`1 .. N`
    both have exactly :code:`N/2` elements.
    """

    if size < 2 or size % 2:
        raise StructuralError(f"balanced_probability: N must be even and at least 2, got {size}")
    return Fraction(math.comb(size, size // 2), 2**size) ** 2


def balanced_bound_holds(size: int) -> bool:
    """
    Whether :func:`balanced_probability` is at least :code:`4 / (N e^4)`,
    checked against an upper rational bound of :code:`e`.
    """

    _, high = e_bounds()
    return balanced_probability(size) >= Fraction(4, size) / high**4


def induction_margin(alpha: Fraction) -> Fraction:
    """
    Lower bound, in units of epsilon, on the reward of player 2 reporting
    after a misreport of its own:
    :code:`(1/4 - a + a^2) + 5 (1/2 - a) - 5 (1/4 + a + a^2)`.
    """

    alpha = Fraction(alpha)
    return (QUARTER - alpha + alpha**2) + 5 * (HALF - alpha) - 5 * (QUARTER + alpha + alpha**2)


def misreport_margin(alpha: Fraction) -> Fraction:
    """
    Upper bound, in units of epsilon, on the reward of player 1 after a
    misreported signal:
    :code:`-(1/4 - a + a^2) - 5 (1/2 - a) + 5 (1/4 + a + a^2)`.
    """

    alpha = Fraction(alpha)
    return -(QUARTER - alpha + alpha**2) - 5 * (HALF - alpha) + 5 * (QUARTER + alpha + alpha**2)


def final_stage_margin(alpha: Fraction) -> Fraction:
    """
    Upper bound :code:`(1/2 + a) - 5 (1/2 - a)` on player 1's reward at the
    last report, in units of epsilon.
    """

    alpha = Fraction(alpha)
    return (HALF + alpha) - 5 * (HALF - alpha)
