"""
Value-based distance and garbling order between information structures.

The one-sided deviation from :code:`u` to :code:`v` is the largest amount
any game gains when played under :code:`v` instead of :code:`u`. It equals
the smallest L1 distance between :code:`q1.u` and :code:`v.q2` over pairs of
garblings, which is a single LP. The multipliers of that LP are a game
attaining the deviation, which is re-checked by two exact game values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from logging import getLogger

from infodist.errors import CertificationError, StructuralError
from infodist.exactlp import LinearProgram, Relation, Sense, Status, lp_solve
from infodist.game_value import Strategy, bayesian_value
from infodist.structures import (
    Garbling,
    InfoStructure,
    PayoffStructure,
    garble_p1,
    garble_p2,
    l1_distance,
    marginal,
)


logger = getLogger(__name__)


ZERO = Fraction(0)
ONE = Fraction(1)


class Direction(str, Enum):
    U_GEQ_V = "u>=v"
    V_GEQ_U = "v>=u"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Deviation:
    """
    :code:`value = sup_g val(v, g) - val(u, g)`, attained by
    :code:`witness`, together with garblings such that
    :code:`||q1.u - v.q2|| = value`.
    """

    value: Fraction  #:
    q1: Garbling  #:
    q2: Garbling  #:
    witness: PayoffStructure  #:


@dataclass(frozen=True)
class DistanceReport:

    value: Fraction  #:
    forward: Deviation  #:
    backward: Deviation  #:

    @property
    def witness(self) -> PayoffStructure:
        if self.forward.value >= self.backward.value:
            return self.forward.witness
        return self.backward.witness


@dataclass(frozen=True)
class Comparison:
    """
    Outcome of :func:`compare`. For :code:`u>=v` the garbling pair of
    :code:`forward` satisfies :code:`q1.u = v.q2`; for :code:`v>=u` the
    pair of :code:`backward` satisfies :code:`q1.v = u.q2`. Equivalent
    structures carry both.
    """

    direction: Direction  #:
    forward: Deviation  #:
    backward: Deviation  #:


def _check_states(u: InfoStructure, v: InfoStructure, what: str):
    if u.states != v.states:
        raise StructuralError(f"{what}: state sets differ ({u.states} vs {v.states})")


def one_sided_deviation(u: InfoStructure, v: InfoStructure) -> Deviation:
    """
    Smallest :code:`||q1.u - v.q2||` over garblings :code:`q1` of player 1's
    signals in :code:`u` onto player 1's signals of :code:`v` and
    :code:`q2` of player 2's signals in :code:`v` onto player 2's signals of
    :code:`u`.

    The LP

    .. code::

        min sum t(k,x,y)
        s.t. t - (q1.u)(k,x,y) + (v.q2)(k,x,y) >= 0     multiplier a(k,x,y)
             t + (q1.u)(k,x,y) - (v.q2)(k,x,y) >= 0     multiplier b(k,x,y)
             q1, q2 row-stochastic

    has the game :code:`b - a` as its dual witness. The witness is padded
    to a square block: surplus player-1 actions pay :code:`-1`, surplus
    player-2 actions pay :code:`+1`.

    Args:
        u (InfoStructure):
        v (InfoStructure):

    Raises:
        StructuralError: if the state sets differ.
        CertificationError: if the witness or the garblings do not reproduce
            the optimum exactly.

    Returns:
        Deviation:
    """

    _check_states(u, v, "one_sided_deviation")

    sources_1 = u.signals_p1()
    sources_2 = v.signals_p2()
    targets_1 = v.signals_p1()
    targets_2 = u.signals_p2()

    n_states = len(u.states)
    n_x = len(targets_1)
    n_y = len(targets_2)

    q1_index = {(c, x): a * n_x + x for a, c in enumerate(sources_1) for x in range(n_x)}
    offset = len(q1_index)
    q2_index = {(d, y): offset + b * n_y + y for b, d in enumerate(sources_2) for y in range(n_y)}
    offset += len(q2_index)
    cells = [(k, x, y) for k in range(n_states) for x in range(n_x) for y in range(n_y)]
    t_index = {cell: offset + n for n, cell in enumerate(cells)}
    n_variables = offset + len(cells)

    # u(k, c, targets_2[y]) by (k, y) and v(k, targets_1[x], d) by (k, x)
    column_u: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    position_2 = {d: y for y, d in enumerate(targets_2)}
    for (k, c, d), p in u.entries.items():
        column_u.setdefault((k, position_2[d]), []).append((c, p))
    row_v: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    position_1 = {c: x for x, c in enumerate(targets_1)}
    for (k, c, d), p in v.entries.items():
        row_v.setdefault((k, position_1[c]), []).append((d, p))

    lp = LinearProgram(Sense.MIN, [ZERO] * (n_variables - len(cells)) + [ONE] * len(cells))

    for sign in (1, -1):
        # sign 1: t >= q1.u - v.q2, sign -1: t >= v.q2 - q1.u
        for k, x, y in cells:
            row: dict[int, Fraction] = {t_index[(k, x, y)]: ONE}
            for c, p in column_u.get((k, y), []):
                row[q1_index[(c, x)]] = row.get(q1_index[(c, x)], ZERO) - sign * p
            for d, p in row_v.get((k, x), []):
                row[q2_index[(d, y)]] = row.get(q2_index[(d, y)], ZERO) + sign * p
            lp.add_constraint(row, Relation.GE, 0)

    for c in sources_1:
        lp.add_constraint({q1_index[(c, x)]: ONE for x in range(n_x)}, Relation.EQ, 1)
    for d in sources_2:
        lp.add_constraint({q2_index[(d, y)]: ONE for y in range(n_y)}, Relation.EQ, 1)

    outcome = lp_solve(lp)
    if outcome.status != Status.OPTIMAL:
        raise CertificationError(f"one_sided_deviation: LP ended {outcome.status.value}")

    delta = outcome.value
    primal = outcome.primal

    q1 = Garbling(
        {c: {targets_1[x]: primal[q1_index[(c, x)]] for x in range(n_x)} for c in sources_1}
    )
    q2 = Garbling(
        {d: {targets_2[y]: primal[q2_index[(d, y)]] for y in range(n_y)} for d in sources_2}
    )

    n_cells = len(cells)
    size = max(n_x, n_y)
    block: dict[tuple[int, int, int], Fraction] = {}
    for n, (k, x, y) in enumerate(cells):
        alpha = outcome.dual[n]
        beta = outcome.dual[n_cells + n]
        block[(k, x, y)] = beta - alpha
    for k in range(n_states):
        for x in range(n_x, size):
            for y in range(n_y):
                block[(k, x, y)] = -ONE
        for y in range(n_y, size):
            for x in range(n_x):
                block[(k, x, y)] = ONE
    witness = PayoffStructure(u.states, size, block)

    _certify(u, v, delta, q1, q2, witness)

    logger.info(f"one_sided_deviation: {delta} ({outcome.pivots} pivots)")

    return Deviation(delta, q1, q2, witness)


def _certify(
    u: InfoStructure,
    v: InfoStructure,
    delta: Fraction,
    q1: Garbling,
    q2: Garbling,
    witness: PayoffStructure,
):

    distance = l1_distance(garble_p1(q1, u), garble_p2(v, q2))
    if distance != delta:
        logger.error(f"Garbling certificate failed: {distance} != {delta}")
        raise CertificationError(
            f"one_sided_deviation: garblings reach {distance}, LP reports {delta}"
        )

    gap = bayesian_value(v, witness).value - bayesian_value(u, witness).value
    if gap != delta:
        logger.error(f"Witness certificate failed: {gap} != {delta}")
        raise CertificationError(
            f"one_sided_deviation: witness game separates by {gap}, LP reports {delta}"
        )


def value_distance(u: InfoStructure, v: InfoStructure) -> DistanceReport:
    """
    :code:`d(u, v) = sup_g |val(u, g) - val(v, g)|`, the larger of both
    one-sided deviations.
    """

    forward = one_sided_deviation(u, v)
    backward = one_sided_deviation(v, u)

    return DistanceReport(max(forward.value, backward.value), forward, backward)


def compare(u: InfoStructure, v: InfoStructure) -> Comparison:
    """
    Decides the garbling order between :code:`u` and :code:`v` with exact
    zero tests on both one-sided deviations.
    """

    forward = one_sided_deviation(u, v)
    backward = one_sided_deviation(v, u)

    if forward.value == 0 and backward.value == 0:
        direction = Direction.EQUIVALENT
    elif forward.value == 0:
        direction = Direction.U_GEQ_V
    elif backward.value == 0:
        direction = Direction.V_GEQ_U
    else:
        direction = Direction.INCOMPARABLE

    logger.info(f"compare: {direction.value}")

    return Comparison(direction, forward, backward)


def transfer_strategy(sigma: Strategy, q1: Garbling, signals: list[int]) -> dict[int, dict[int, Fraction]]:
    """
    The strategy :code:`sigma . q1`: garble the own signal with :code:`q1`,
    then play :code:`sigma` on the result. If :code:`q1.u = v.q2` and
    :code:`sigma` guarantees :code:`w` in :code:`(v, g)`, the result
    guarantees :code:`w` in :code:`(u, g)`.

    Targets of :code:`q1` without an entry in :code:`sigma` have probability
    zero under :code:`v`; they are played as action 0.

    Args:
        sigma (Strategy): player 1's strategy in the garbled structure
        q1 (Garbling):
        signals (list[int]): player 1's signals in the original structure

    Returns:
        dict[int, dict[int, Fraction]]:
    """

    strategy: dict[int, dict[int, Fraction]] = {}

    for c in signals:
        mixed: dict[int, Fraction] = {}
        for x, weight in q1.image(c).items():
            for i, p in sigma.get(x, {0: ONE}).items():
                mixed[i] = mixed.get(i, ZERO) + weight * Fraction(p)
        strategy[c] = {i: p for i, p in sorted(mixed.items()) if p}

    return strategy


def witness_payoff(u: InfoStructure, v: InfoStructure) -> PayoffStructure:
    """
    A game :code:`g` with :code:`val(v, g) - val(u, g)` equal to the
    one-sided deviation from :code:`u` to :code:`v`, certified exactly.
    """

    return one_sided_deviation(u, v).witness


@dataclass(frozen=True)
class BlackwellReport:
    """
    One-player comparison. :code:`forward` is :code:`min_q ||q.u - v||`
    attained by :code:`forward_garbling`, :code:`backward` the same with
    the roles exchanged, :code:`distance` the larger of both.
    """

    distance: Fraction  #:
    direction: Direction  #:
    forward: Fraction  #:
    backward: Fraction  #:
    forward_garbling: Garbling  #:
    backward_garbling: Garbling  #:


def _single_garbling(u: InfoStructure, v: InfoStructure) -> tuple[Fraction, Garbling]:
    """
    :code:`min_q ||q.u - v||` on the laws of :code:`(k, c)`.
    """

    law_u = marginal(u, (0, 1))
    law_v = marginal(v, (0, 1))
    sources = u.signals_p1()
    targets = v.signals_p1()
    n_targets = len(targets)
    n_states = len(u.states)

    q_index = {(c, x): a * n_targets + x for a, c in enumerate(sources) for x in range(n_targets)}
    cells = [(k, x) for k in range(n_states) for x in range(n_targets)]
    t_index = {cell: len(q_index) + n for n, cell in enumerate(cells)}

    lp = LinearProgram(Sense.MIN, [ZERO] * len(q_index) + [ONE] * len(cells))

    for sign in (1, -1):
        for k, x in cells:
            row: dict[int, Fraction] = {t_index[(k, x)]: ONE}
            for c in sources:
                if (k, c) in law_u:
                    row[q_index[(c, x)]] = -sign * law_u[(k, c)]
            lp.add_constraint(row, Relation.GE, -sign * law_v.get((k, targets[x]), ZERO))

    for c in sources:
        lp.add_constraint({q_index[(c, x)]: ONE for x in range(n_targets)}, Relation.EQ, 1)

    outcome = lp_solve(lp)
    if outcome.status != Status.OPTIMAL:
        raise CertificationError(f"blackwell_compare_1p: LP ended {outcome.status.value}")

    garbling = Garbling(
        {c: {targets[x]: outcome.primal[q_index[(c, x)]] for x in range(n_targets)} for c in sources}
    )
    return outcome.value, garbling


def blackwell_compare_1p(u: InfoStructure, v: InfoStructure) -> BlackwellReport:
    """
    Blackwell's order on player 1's information alone: :code:`u` dominates
    :code:`v` iff some garbling maps the law of :code:`(k, c)` under
    :code:`u` onto the one under :code:`v`. Player 2's signals are ignored.
    """

    _check_states(u, v, "blackwell_compare_1p")

    forward, forward_garbling = _single_garbling(u, v)
    backward, backward_garbling = _single_garbling(v, u)

    if forward == 0 and backward == 0:
        direction = Direction.EQUIVALENT
    elif forward == 0:
        direction = Direction.U_GEQ_V
    elif backward == 0:
        direction = Direction.V_GEQ_U
    else:
        direction = Direction.INCOMPARABLE

    return BlackwellReport(
        max(forward, backward), direction, forward, backward, forward_garbling, backward_garbling
    )
