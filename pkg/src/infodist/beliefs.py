"""
Finite-order belief hierarchies.

A player's order-0 belief is trivial. Their order-n belief given a signal is
the conditional law of the state and of the opponent's order-(n-1) belief.
Beliefs are represented by fingerprints: sha256 digests of the sorted,
exactly written conditional law, so equal beliefs get equal fingerprints
regardless of how signals are named.
"""

from __future__ import annotations

import hashlib

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger

from infodist.errors import StructuralError
from infodist.structures import InfoStructure


logger = getLogger(__name__)


ZERO = Fraction(0)

#: Fingerprint shared by all order-0 beliefs.
TRIVIAL_FINGERPRINT = hashlib.sha256(b"order-0").hexdigest()

Law = tuple[tuple[str, str, Fraction], ...]


@dataclass(frozen=True)
class TypePartition:
    """
    Classes of one player's signals that share the same order-n belief.
    Classes are sorted by fingerprint and :code:`laws[n]` is the belief of
    :code:`classes[n]`, as sorted triples :code:`(state, opponent
    fingerprint, probability)`.
    """

    player: int  #:
    order: int  #:
    classes: tuple[tuple[int, ...], ...]  #:
    fingerprints: tuple[str, ...]  #:
    laws: tuple[Law, ...]  #:

    def blocks(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.classes)


@dataclass(frozen=True)
class HierarchyDistribution:
    """
    Joint law of the state and both players' order-n fingerprints, as
    sorted tuples :code:`(state, fingerprint 1, fingerprint 2, probability)`.
    """

    order: int  #:
    support: tuple[tuple[str, str, str, Fraction], ...]  #:


def _fingerprint(law: Law) -> str:
    text = ";".join(f"{k}|{fp}|{p.numerator}/{p.denominator}" for k, fp, p in law)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _refine(
    u: InfoStructure,
    player: int,
    opponent: dict[int, str],
) -> tuple[dict[int, str], dict[int, Law]]:
    """
    One step of the hierarchy: the belief of each own signal about the
    state and the opponent's current fingerprint.
    """

    mass: dict[int, dict[tuple[str, str], Fraction]] = defaultdict(lambda: defaultdict(lambda: ZERO))
    total: dict[int, Fraction] = defaultdict(lambda: ZERO)

    for (k, c, d), p in u.entries.items():
        own, other = (c, d) if player == 1 else (d, c)
        mass[own][(u.states[k], opponent[other])] += p
        total[own] += p

    fingerprints: dict[int, str] = {}
    laws: dict[int, Law] = {}
    for own, cells in mass.items():
        law = tuple(sorted((k, fp, p / total[own]) for (k, fp), p in cells.items()))
        laws[own] = law
        fingerprints[own] = _fingerprint(law)

    return fingerprints, laws


def _hierarchy(
    u: InfoStructure,
    order: int,
) -> tuple[dict[int, str], dict[int, str], dict[int, Law], dict[int, Law]]:

    if order < 0:
        raise StructuralError(f"belief order must be nonnegative, got {order}")

    fingerprints_1 = {c: TRIVIAL_FINGERPRINT for c in u.signals_p1()}
    fingerprints_2 = {d: TRIVIAL_FINGERPRINT for d in u.signals_p2()}
    laws_1: dict[int, Law] = {c: () for c in fingerprints_1}
    laws_2: dict[int, Law] = {d: () for d in fingerprints_2}

    for _ in range(order):
        new_1, laws_1 = _refine(u, 1, fingerprints_2)
        new_2, laws_2 = _refine(u, 2, fingerprints_1)
        fingerprints_1, fingerprints_2 = new_1, new_2

    return fingerprints_1, fingerprints_2, laws_1, laws_2


def _partition(player: int, order: int, fingerprints: dict[int, str], laws: dict[int, Law]) -> TypePartition:

    groups: dict[str, list[int]] = defaultdict(list)
    for signal, fp in fingerprints.items():
        groups[fp].append(signal)

    ordered = sorted(groups)
    return TypePartition(
        player=player,
        order=order,
        classes=tuple(tuple(sorted(groups[fp])) for fp in ordered),
        fingerprints=tuple(ordered),
        laws=tuple(laws[groups[fp][0]] for fp in ordered),
    )


def belief_partitions(u: InfoStructure, order: int) -> tuple[TypePartition, TypePartition]:
    """
    Type partitions of both players at the given order.

    Args:
        u (InfoStructure):
        order (int): belief order, at least 0

    Returns:
        tuple[TypePartition, TypePartition]: player 1's and player 2's
    """

    fingerprints_1, fingerprints_2, laws_1, laws_2 = _hierarchy(u, order)
    return (
        _partition(1, order, fingerprints_1, laws_1),
        _partition(2, order, fingerprints_2, laws_2),
    )


def belief_partition(u: InfoStructure, player: int, order: int) -> TypePartition:

    if player not in (1, 2):
        raise StructuralError(f"belief_partition: player must be 1 or 2, got {player}")
    return belief_partitions(u, order)[player - 1]


def hierarchy_distribution(u: InfoStructure, order: int) -> HierarchyDistribution:
    """
    Law of :code:`(k, theta_1, theta_2)` at the given order.
    """

    fingerprints_1, fingerprints_2, _, _ = _hierarchy(u, order)

    law: dict[tuple[str, str, str], Fraction] = defaultdict(lambda: ZERO)
    for (k, c, d), p in u.entries.items():
        law[(u.states[k], fingerprints_1[c], fingerprints_2[d])] += p

    return HierarchyDistribution(
        order, tuple(sorted((k, f1, f2, p) for (k, f1, f2), p in law.items()))
    )


def hierarchy_equal(u: InfoStructure, v: InfoStructure, order: int) -> bool:
    """
    Whether :code:`u` and :code:`v` induce the same law of states and
    order-n beliefs. Structures over different state sets never do.
    """

    if u.states != v.states:
        return False
    return hierarchy_distribution(u, order) == hierarchy_distribution(v, order)


def stabilization_order(u: InfoStructure, cap: int = 64) -> int:
    """
    Smallest order after which neither player's type partition splits
    any further.

    Raises:
        StructuralError: if the partitions still change at order :code:`cap`.
    """

    previous = None
    for order in range(cap + 1):
        partitions = tuple(p.blocks() for p in belief_partitions(u, order))
        if partitions == previous:
            return order - 1
        previous = partitions

    raise StructuralError(f"stabilization_order: partitions still refine at order {cap}")
