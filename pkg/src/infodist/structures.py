"""
Information structures, payoff structures and garblings.

An information structure is a finitely supported joint law of a state and
one signal per player. Signals are nonnegative integers; states are indices
into a tuple of labels. All probabilities are exact rationals and zero
entries are never stored, so two structures compare equal exactly when
their laws agree.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Iterable, Mapping

from infodist.errors import StructuralError, ValidationError


logger = getLogger(__name__)


ZERO = Fraction(0)
ONE = Fraction(1)

Entry = tuple[int, int, int]


def _as_rational(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise ValidationError(f"{what}: rational values must be exact, got float {value}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{what}: {value!r} is not a rational number") from e


def _check_states(states: tuple[str, ...], what: str):
    if len(states) == 0:
        raise ValidationError(f"{what}: the state set must be non-empty")
    if len(set(states)) != len(states):
        raise ValidationError(f"{what}: state labels must be distinct")


@dataclass(frozen=True, eq=True)
class InfoStructure:
    """
    Joint law :code:`u(k, c, d)` of a state :code:`k`, a player-1 signal
    :code:`c` and a player-2 signal :code:`d`.

    Entries are validated on construction: probabilities are nonnegative,
    sum to exactly one and every state index lies in :code:`states`.
    """

    states: tuple[str, ...]  #:
    entries: Mapping[Entry, Fraction] = field(default_factory=dict)  #:

    def __post_init__(self):

        states = tuple(str(state) for state in self.states)
        _check_states(states, "InfoStructure")

        entries: dict[Entry, Fraction] = {}
        total = ZERO

        for key, value in self.entries.items():
            k, c, d = key
            if not (isinstance(k, int) and 0 <= k < len(states)):
                raise ValidationError(f"InfoStructure: state index {k} outside the state set")
            if not (isinstance(c, int) and isinstance(d, int) and c >= 0 and d >= 0):
                raise ValidationError(
                    f"InfoStructure: signals must be nonnegative integers, got ({c}, {d})"
                )
            p = _as_rational(value, "InfoStructure")
            if p < 0:
                raise ValidationError(f"InfoStructure: probabilities must be nonnegative, got {p}")
            total += p
            if p:
                entries[(k, c, d)] = entries.get((k, c, d), ZERO) + p

        if total != ONE:
            raise ValidationError(f"InfoStructure: probabilities must sum to exactly 1, got {total}")

        object.__setattr__(self, "states", states)
        object.__setattr__(self, "entries", dict(sorted(entries.items())))

    def __hash__(self):
        return hash((self.states, frozenset(self.entries.items())))

    def probability(self, k: int, c: int, d: int) -> Fraction:
        return self.entries.get((k, c, d), ZERO)

    def signals_p1(self) -> list[int]:
        return sorted({c for _, c, _ in self.entries})

    def signals_p2(self) -> list[int]:
        return sorted({d for _, _, d in self.entries})

    def state_marginal(self) -> dict[int, Fraction]:
        return marginal(self, (0,))

    def signal_marginal_p1(self) -> dict[int, Fraction]:
        return marginal(self, (1,))

    def signal_marginal_p2(self) -> dict[int, Fraction]:
        return marginal(self, (2,))


@dataclass(frozen=True, eq=True)
class PayoffStructure:
    """
    Payoffs :code:`g(k, i, j)` to player 1 of a game in :code:`G(L)`.

    Only the block :code:`i, j < size` is stored; missing block entries are
    zero. Outside the block the game is extended so that stepping outside is
    dominated: :code:`g(k, i, j) = -1` when :code:`i >= size > j` and
    :code:`+1` when :code:`j >= size > i`. When both actions are outside the
    block the payoff is zero.
    """

    states: tuple[str, ...]  #:
    size: int  #:
    block: Mapping[Entry, Fraction] = field(default_factory=dict)  #:

    def __post_init__(self):

        states = tuple(str(state) for state in self.states)
        _check_states(states, "PayoffStructure")

        if not (isinstance(self.size, int) and self.size >= 1):
            raise ValidationError(f"PayoffStructure: block size must be at least 1, got {self.size}")

        block: dict[Entry, Fraction] = {}
        for (k, i, j), value in self.block.items():
            if not 0 <= k < len(states):
                raise ValidationError(f"PayoffStructure: state index {k} outside the state set")
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise ValidationError(
                    f"PayoffStructure: action pair ({i}, {j}) outside the block of size {self.size}"
                )
            g = _as_rational(value, "PayoffStructure")
            if not -ONE <= g <= ONE:
                raise ValidationError(f"PayoffStructure: payoffs must lie in [-1, 1], got {g}")
            if g:
                block[(k, i, j)] = g

        object.__setattr__(self, "states", states)
        object.__setattr__(self, "block", dict(sorted(block.items())))

    def __hash__(self):
        return hash((self.states, self.size, frozenset(self.block.items())))

    def entry(self, k: int, i: int, j: int) -> Fraction:

        inside_1 = i < self.size
        inside_2 = j < self.size

        if inside_1 and inside_2:
            return self.block.get((k, i, j), ZERO)
        if inside_2:
            return -ONE
        if inside_1:
            return ONE
        return ZERO

    def matrix(self, k: int) -> list[list[Fraction]]:
        return [[self.entry(k, i, j) for j in range(self.size)] for i in range(self.size)]


@dataclass(frozen=True, eq=True)
class Garbling:
    """
    A Markov kernel on signals. Signals without a row are mapped to
    themselves.
    """

    rows: Mapping[int, Mapping[int, Fraction]] = field(default_factory=dict)  #:

    def __post_init__(self):

        rows: dict[int, dict[int, Fraction]] = {}

        for source, image in self.rows.items():
            cleaned: dict[int, Fraction] = {}
            total = ZERO
            for target, value in image.items():
                if not (isinstance(target, int) and target >= 0):
                    raise ValidationError(f"Garbling: target signal {target} is not a nonnegative integer")
                p = _as_rational(value, "Garbling")
                if p < 0:
                    raise ValidationError(f"Garbling: probabilities must be nonnegative, got {p}")
                total += p
                if p:
                    cleaned[target] = cleaned.get(target, ZERO) + p
            if total != ONE:
                raise ValidationError(
                    f"Garbling: the row of signal {source} must sum to exactly 1, got {total}"
                )
            rows[source] = dict(sorted(cleaned.items()))

        object.__setattr__(self, "rows", dict(sorted(rows.items())))

    def __hash__(self):
        return hash(frozenset((s, frozenset(r.items())) for s, r in self.rows.items()))

    def image(self, signal: int) -> Mapping[int, Fraction]:
        return self.rows.get(signal, {signal: ONE})

    def is_deterministic(self) -> bool:
        return all(len(image) == 1 for image in self.rows.values())


def identity_garbling(signals: Iterable[int]) -> Garbling:
    return Garbling({s: {s: ONE} for s in signals})


def constant_garbling(signals: Iterable[int], target: int = 0) -> Garbling:
    return Garbling({s: {target: ONE} for s in signals})


def _garble(u: InfoStructure, q: Garbling, position: int) -> InfoStructure:

    entries: dict[Entry, Fraction] = defaultdict(lambda: ZERO)

    for (k, c, d), p in u.entries.items():
        source = (c, d)[position - 1]
        for target, weight in q.image(source).items():
            key = (k, target, d) if position == 1 else (k, c, target)
            entries[key] += p * weight

    return InfoStructure(u.states, entries)


def garble_p1(q: Garbling, u: InfoStructure) -> InfoStructure:
    """
    :code:`(q.u)(k, c', d) = sum_c u(k, c, d) q(c)(c')`
    """

    return _garble(u, q, 1)


def garble_p2(u: InfoStructure, q: Garbling) -> InfoStructure:
    """
    :code:`(u.q)(k, c, d') = sum_d u(k, c, d) q(d)(d')`
    """

    return _garble(u, q, 2)


def _check_same_states(a, b, what: str):
    if a.states != b.states:
        raise StructuralError(f"{what}: state sets differ ({a.states} vs {b.states})")


def l1_distance(u: InfoStructure, v: InfoStructure) -> Fraction:
    """
    :code:`sum_{k,c,d} |u(k,c,d) - v(k,c,d)|` over the union of supports.
    """

    _check_same_states(u, v, "l1_distance")

    keys = set(u.entries) | set(v.entries)
    return sum((abs(u.probability(*key) - v.probability(*key)) for key in keys), ZERO)


def scalar_product(g: PayoffStructure, u: InfoStructure) -> Fraction:
    """
    Expected payoff when each player plays their signal as action.
    """

    _check_same_states(g, u, "scalar_product")

    return sum((p * g.entry(k, c, d) for (k, c, d), p in u.entries.items()), ZERO)


def marginal(u: InfoStructure, axes: tuple[int, ...]) -> dict:
    """
    Marginal of :code:`u` on the coordinates :code:`axes` of :code:`(k, c, d)`.
    A single axis yields plain keys, several axes yield tuples.
    """

    result: dict = defaultdict(lambda: ZERO)
    for key, p in u.entries.items():
        if len(axes) == 1:
            result[key[axes[0]]] += p
        else:
            result[tuple(key[axis] for axis in axes)] += p
    return dict(sorted(result.items()))


def relabel(
    u: InfoStructure,
    map_p1: Mapping[int, int] | None = None,
    map_p2: Mapping[int, int] | None = None,
) -> InfoStructure:
    """
    Renames signals with injective maps. Signals missing from a map keep
    their name.

    Raises:
        StructuralError: if a map merges two signals of the support.
    """

    map_p1 = map_p1 or {}
    map_p2 = map_p2 or {}

    for name, mapping, signals in (
        ("player 1", map_p1, u.signals_p1()),
        ("player 2", map_p2, u.signals_p2()),
    ):
        images = [mapping.get(s, s) for s in signals]
        if len(set(images)) != len(images):
            raise StructuralError(f"relabel: the map for {name} is not injective on the support")

    return InfoStructure(
        u.states,
        {(k, map_p1.get(c, c), map_p2.get(d, d)): p for (k, c, d), p in u.entries.items()},
    )


def dense_labels(u: InfoStructure) -> tuple[dict[int, int], dict[int, int]]:
    """
    Maps the support signals of each player onto :code:`0 .. n-1`
    in increasing order.
    """

    return (
        {s: index for index, s in enumerate(u.signals_p1())},
        {s: index for index, s in enumerate(u.signals_p2())},
    )


def mix(u: InfoStructure, v: InfoStructure, weight: Fraction) -> InfoStructure:
    """
    :code:`weight * u + (1 - weight) * v`, entry by entry.
    """

    _check_same_states(u, v, "mix")
    weight = Fraction(weight)
    if not ZERO <= weight <= ONE:
        raise StructuralError(f"mix: weight must lie in [0, 1], got {weight}")

    entries: dict[Entry, Fraction] = defaultdict(lambda: ZERO)
    for key, p in u.entries.items():
        entries[key] += weight * p
    for key, p in v.entries.items():
        entries[key] += (ONE - weight) * p
    return InfoStructure(u.states, entries)


def compose(first: Garbling, second: Garbling) -> Garbling:
    """
    The garbling that applies :code:`first` and then :code:`second`.
    """

    rows: dict[int, dict[int, Fraction]] = {}
    for source, image in first.rows.items():
        combined: dict[int, Fraction] = defaultdict(lambda: ZERO)
        for middle, p in image.items():
            for target, q in second.image(middle).items():
                combined[target] += p * q
        rows[source] = dict(combined)

    for source, image in second.rows.items():
        if source not in rows:
            rows[source] = dict(image)

    return Garbling(rows)


def restrict_support(g: PayoffStructure, size: int) -> PayoffStructure:
    """
    Keeps the top-left :code:`size x size` block of :code:`g`.
    """

    if not 1 <= size <= g.size:
        raise StructuralError(f"restrict_support: size {size} not in [1, {g.size}]")

    return PayoffStructure(
        g.states,
        size,
        {(k, i, j): value for (k, i, j), value in g.block.items() if i < size and j < size},
    )


def _refine_colors(
    u: InfoStructure,
    colors_1: dict[int, int],
    colors_2: dict[int, int],
) -> tuple[dict[int, int], dict[int, int]]:
    """
    Colour refinement on the weighted tripartite support of :code:`u` until
    neither player's partition splits further.
    """

    while True:
        signature_1: dict[int, list] = {c: [] for c in colors_1}
        signature_2: dict[int, list] = {d: [] for d in colors_2}
        for (k, c, d), p in u.entries.items():
            signature_1[c].append((k, colors_2[d], p))
            signature_2[d].append((k, colors_1[c], p))

        new_1 = _renumber({c: (colors_1[c], tuple(sorted(s))) for c, s in signature_1.items()})
        new_2 = _renumber({d: (colors_2[d], tuple(sorted(s))) for d, s in signature_2.items()})

        stable = len(set(new_1.values())) == len(set(colors_1.values())) and len(
            set(new_2.values())
        ) == len(set(colors_2.values()))

        colors_1, colors_2 = new_1, new_2
        if stable:
            return colors_1, colors_2


def _renumber(signatures: dict[int, tuple]) -> dict[int, int]:
    ranks = {signature: rank for rank, signature in enumerate(sorted(set(signatures.values())))}
    return {s: ranks[signature] for s, signature in signatures.items()}


def _first_open_cell(colors: dict[int, int]) -> list[int] | None:

    cells: dict[int, list[int]] = defaultdict(list)
    for s, color in colors.items():
        cells[color].append(s)
    for color in sorted(cells):
        if len(cells[color]) > 1:
            return sorted(cells[color])
    return None


def _canonical_search(
    u: InfoStructure,
    colors_1: dict[int, int],
    colors_2: dict[int, int],
) -> tuple:

    colors_1, colors_2 = _refine_colors(u, colors_1, colors_2)

    for player, colors in ((1, colors_1), (2, colors_2)):
        cell = _first_open_cell(colors)
        if cell is None:
            continue
        best = None
        for s in cell:
            # individualise s: it moves in front of its cell
            individual = {t: 2 * color + (0 if t == s else 1) for t, color in colors.items()}
            if player == 1:
                candidate = _canonical_search(u, individual, {d: 2 * x for d, x in colors_2.items()})
            else:
                candidate = _canonical_search(u, {c: 2 * x for c, x in colors_1.items()}, individual)
            if best is None or candidate < best:
                best = candidate
        return best

    certificate = tuple(
        sorted((k, colors_1[c], colors_2[d], p) for (k, c, d), p in u.entries.items())
    )
    return certificate


def canonicalize(u: InfoStructure) -> InfoStructure:
    """
    A normal form of :code:`u` that is invariant under renaming the signals
    of either player. Signals are renumbered :code:`0 .. n-1` following the
    classes of a colour refinement by conditional laws; remaining ties are
    broken by individualising signals and keeping the lexicographically
    smallest resulting list of entries.

    Args:
        u (InfoStructure):

    Returns:
        InfoStructure: the canonical representative.
    """

    colors_1 = {c: 0 for c in u.signals_p1()}
    colors_2 = {d: 0 for d in u.signals_p2()}

    certificate = _canonical_search(u, colors_1, colors_2)

    return InfoStructure(u.states, {(k, c, d): p for k, c, d, p in certificate})
