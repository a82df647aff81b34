"""
Values of zero-sum Bayesian games.

:func:`bayesian_value` solves the sequence-free LP of the ex-ante game in
which player 1 picks a mixed action per signal, player 2 likewise, and
player 1 receives :code:`g(k, i, j)`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Mapping

from infodist.errors import StructuralError, ValidationError
from infodist.exactlp import FREE, NONNEGATIVE, LinearProgram, Relation, Sense, Status, lp_solve
from infodist.structures import InfoStructure, PayoffStructure


logger = getLogger(__name__)


ZERO = Fraction(0)
ONE = Fraction(1)

#: Behaviour strategy, signal -> action -> probability.
Strategy = Mapping[int, Mapping[int, Fraction]]


@dataclass(frozen=True)
class BayesianSolution:

    value: Fraction  #:
    sigma: dict[int, dict[int, Fraction]]  #:
    tau: dict[int, dict[int, Fraction]]  #:


@dataclass(frozen=True)
class BestResponse:

    value: Fraction  #:
    response: dict[int, int]  #:


def _check_states(u: InfoStructure, g: PayoffStructure, what: str):
    if u.states != g.states:
        raise StructuralError(f"{what}: state sets differ ({u.states} vs {g.states})")


def _check_strategy(strategy: Strategy, signals: list[int], what: str):

    for signal in signals:
        if signal not in strategy:
            raise ValidationError(f"{what}: strategy has no mixed action for signal {signal}")
        row = strategy[signal]
        if any(Fraction(p) < 0 for p in row.values()):
            raise ValidationError(f"{what}: strategy of signal {signal} has a negative probability")
        if sum((Fraction(p) for p in row.values()), ZERO) != ONE:
            raise ValidationError(f"{what}: strategy of signal {signal} must sum to exactly 1")
        if any(not (isinstance(a, int) and a >= 0) for a in row):
            raise ValidationError(f"{what}: actions must be nonnegative integers")


def distinct_actions(g: PayoffStructure) -> tuple[list[int], list[int]]:
    """
    Representatives of the rows and of the columns of the block of
    :code:`g`, dropping every action whose payoffs repeat those of a
    smaller action in every state.

    Returns:
        tuple[list[int], list[int]]: kept player-1 and player-2 actions.
    """

    n_states = len(g.states)
    size = g.size

    def keep(signature) -> list[int]:
        seen = set()
        kept = []
        for action in range(size):
            key = signature(action)
            if key not in seen:
                seen.add(key)
                kept.append(action)
        return kept

    rows = keep(
        lambda i: tuple(g.entry(k, i, j) for k in range(n_states) for j in range(size))
    )
    columns = keep(
        lambda j: tuple(g.entry(k, i, j) for k in range(n_states) for i in range(size))
    )
    return rows, columns


def _cell_laws(u: InfoStructure) -> dict[tuple[int, int], dict[int, Fraction]]:
    cells: dict[tuple[int, int], dict[int, Fraction]] = defaultdict(dict)
    for (k, c, d), p in u.entries.items():
        cells[(c, d)][k] = p
    return cells


def bayesian_value(u: InfoStructure, g: PayoffStructure) -> BayesianSolution:
    """
    Exact value of the game :code:`(u, g)` with optimal behaviour
    strategies of both players.

    Player 1's strategy is the primal of

    .. code::

        max sum_d t(d)
        s.t. t(d) <= sum_{k,c,i} u(k,c,d) x(c,i) g(k,i,j)   for all d, j
             sum_i x(c,i) = 1                               for all c
             x >= 0, t free

    and player 2's is read from the multipliers of the first family of rows.

    Args:
        u (InfoStructure):
        g (PayoffStructure):

    Raises:
        StructuralError: if the state sets differ.

    Returns:
        BayesianSolution:
    """

    _check_states(u, g, "bayesian_value")

    signals_1 = u.signals_p1()
    signals_2 = u.signals_p2()
    actions_1, actions_2 = distinct_actions(g)

    n_x = len(signals_1) * len(actions_1)
    x_index = {
        (c, i): a * len(actions_1) + b
        for a, c in enumerate(signals_1)
        for b, i in enumerate(actions_1)
    }
    t_index = {d: n_x + b for b, d in enumerate(signals_2)}

    lp = LinearProgram(
        Sense.MAX,
        [ZERO] * n_x + [ONE] * len(signals_2),
        bounds=[NONNEGATIVE] * n_x + [FREE] * len(signals_2),
    )

    cells = _cell_laws(u)
    by_d: dict[int, list[tuple[int, dict[int, Fraction]]]] = defaultdict(list)
    for (c, d), law in cells.items():
        by_d[d].append((c, law))

    for d in signals_2:
        for j in actions_2:
            row: dict[int, Fraction] = {t_index[d]: ONE}
            for c, law in by_d[d]:
                for i in actions_1:
                    coefficient = sum((p * g.entry(k, i, j) for k, p in law.items()), ZERO)
                    if coefficient:
                        row[x_index[(c, i)]] = -coefficient
            lp.add_constraint(row, Relation.LE, 0)

    for c in signals_1:
        lp.add_constraint({x_index[(c, i)]: ONE for i in actions_1}, Relation.EQ, 1)

    outcome = lp_solve(lp)
    if outcome.status != Status.OPTIMAL:
        # bounded payoffs and nonempty strategy sets
        raise StructuralError(f"bayesian_value: LP ended {outcome.status.value}")

    sigma = {
        c: {i: outcome.primal[x_index[(c, i)]] for i in actions_1 if outcome.primal[x_index[(c, i)]]}
        for c in signals_1
    }

    tau: dict[int, dict[int, Fraction]] = {}
    row_index = 0
    for d in signals_2:
        mixed = {}
        for j in actions_2:
            y = outcome.dual[row_index]
            if y:
                mixed[j] = y
            row_index += 1
        tau[d] = mixed

    logger.debug(f"bayesian_value: {outcome.value} after {outcome.pivots} pivots")

    return BayesianSolution(outcome.value, sigma, tau)


def payoff(u: InfoStructure, g: PayoffStructure, sigma: Strategy, tau: Strategy) -> Fraction:
    """
    Expected payoff :code:`sum u(k,c,d) sigma(c)(i) tau(d)(j) g(k,i,j)`.
    """

    _check_states(u, g, "payoff")
    _check_strategy(sigma, u.signals_p1(), "payoff")
    _check_strategy(tau, u.signals_p2(), "payoff")

    total = ZERO
    for (k, c, d), p in u.entries.items():
        for i, x in sigma[c].items():
            for j, y in tau[d].items():
                total += p * Fraction(x) * Fraction(y) * g.entry(k, i, j)
    return total


def best_response_value(
    u: InfoStructure,
    g: PayoffStructure,
    fixed_player: int,
    strategy: Strategy,
) -> BestResponse:
    """
    Value of the best response against a fixed behaviour strategy.

    Outside the block every action of a player is equivalent, so the
    responder only needs to consider the block actions and the first action
    past it.

    Args:
        u (InfoStructure):
        g (PayoffStructure):
        fixed_player (int): 1 or 2, the player whose strategy is fixed
        strategy (Strategy): the fixed strategy

    Returns:
        BestResponse: the payoff to player 1 and a pure best response per
            signal of the responding player.
    """

    _check_states(u, g, "best_response_value")
    if fixed_player not in (1, 2):
        raise StructuralError(f"best_response_value: fixed_player must be 1 or 2, got {fixed_player}")

    fixed_signals = u.signals_p1() if fixed_player == 1 else u.signals_p2()
    _check_strategy(strategy, fixed_signals, "best_response_value")

    candidates = range(g.size + 1)

    # expected[s][a]: contribution of own signal s and response a
    expected: dict[int, dict[int, Fraction]] = defaultdict(lambda: defaultdict(lambda: ZERO))

    for (k, c, d), p in u.entries.items():
        own, other = (d, c) if fixed_player == 1 else (c, d)
        for action, x in strategy[other].items():
            weight = p * Fraction(x)
            for response in candidates:
                if fixed_player == 1:
                    expected[own][response] += weight * g.entry(k, action, response)
                else:
                    expected[own][response] += weight * g.entry(k, response, action)

    choose = min if fixed_player == 1 else max
    value = ZERO
    response: dict[int, int] = {}

    for own in sorted(expected):
        scores = expected[own]
        best = choose(scores[a] for a in candidates)
        response[own] = next(a for a in candidates if scores[a] == best)
        value += best

    return BestResponse(value, response)


def _decision_gains(u: InfoStructure, g: PayoffStructure) -> dict[int, list[Fraction]]:

    gains: dict[int, list[Fraction]] = defaultdict(lambda: [ZERO] * g.size)
    for (k, c, _), p in u.entries.items():
        row = gains[c]
        for i in range(g.size):
            row[i] += p * g.entry(k, i, 0)
    return gains


def decision_strategy(u: InfoStructure, g: PayoffStructure) -> dict[int, int]:
    """
    Optimal pure decision of player 1 per signal in the one-player problem
    read from column 0 of :code:`g`. Ties go to the smallest action.
    """

    _check_states(u, g, "decision_strategy")

    gains = _decision_gains(u, g)
    return {c: max(range(g.size), key=lambda i: (gains[c][i], -i)) for c in sorted(gains)}


def decision_value(u: InfoStructure, g: PayoffStructure) -> Fraction:
    """
    :code:`sum_c max_i sum_k u(k, c) g(k, i, 0)`, the value of the decision
    problem where player 2 is absent.
    """

    _check_states(u, g, "decision_value")

    gains = _decision_gains(u, g)
    return sum((max(row) for row in gains.values()), ZERO)


def conditional_payoff(u: InfoStructure, g: PayoffStructure, signal: int, action: int) -> Fraction:
    """
    Expected decision payoff of :code:`action` given player 1's signal.

    Raises:
        StructuralError: if the signal has probability zero.
    """

    _check_states(u, g, "conditional_payoff")

    total = ZERO
    weighted = ZERO
    for (k, c, _), p in u.entries.items():
        if c == signal:
            total += p
            weighted += p * g.entry(k, action, 0)

    if total == 0:
        raise StructuralError(f"conditional_payoff: signal {signal} has probability zero")
    return weighted / total


def decision_gain(u: InfoStructure, g: PayoffStructure, signal: int, truthful: int, reported: int) -> Fraction:
    """
    What player 1 loses, given :code:`signal`, by playing :code:`reported`
    instead of :code:`truthful` in the decision problem.
    """

    return conditional_payoff(u, g, signal, truthful) - conditional_payoff(u, g, signal, reported)
