"""
Named example structures.

Every constructor here has a JSON twin under :code:`settings.FIXTURE_DIR`
that :func:`load_fixture` reads by name. States of the two-colour examples
are :code:`("blue", "red")`.
"""

from __future__ import annotations

from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import Callable, Sequence

from infodist import codec, settings
from infodist.chain import ChainSpec, chain_from_successors
from infodist.errors import StructuralError
from infodist.structures import Garbling, InfoStructure, PayoffStructure


logger = getLogger(__name__)


COLOURS = ("blue", "red")
BLUE, RED = 0, 1

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def u1() -> InfoStructure:
    """
    Both players learn the state.
    """

    return InfoStructure(COLOURS, {(BLUE, 0, 0): HALF, (RED, 1, 1): HALF})


def u2() -> InfoStructure:
    """
    Player 1 learns the state, player 2 learns nothing.
    """

    return InfoStructure(COLOURS, {(BLUE, 0, 0): HALF, (RED, 1, 0): HALF})


def u2_prime() -> InfoStructure:
    """
    Player 2 learns the state, player 1 learns nothing.
    """

    return InfoStructure(COLOURS, {(BLUE, 0, 0): HALF, (RED, 0, 1): HALF})


def u2_second() -> InfoStructure:
    """
    :func:`u2_prime` with player 2's signals exchanged.
    """

    return InfoStructure(COLOURS, {(BLUE, 1, 1): HALF, (RED, 1, 0): HALF})


def u2_relabeled() -> InfoStructure:
    """
    :func:`u2` with every signal renamed.
    """

    return InfoStructure(COLOURS, {(BLUE, 5, 7): HALF, (RED, 3, 7): HALF})


def u_n(n: int) -> InfoStructure:
    """
    Blue edges :code:`(i, i)` and red edges :code:`(i, i + 1)` for
    :code:`i = 0 .. n`, all equally likely. Its distance to
    :func:`trivial_u` vanishes as :code:`n` grows.
    """

    if n < 0:
        raise StructuralError(f"u_n: n must be nonnegative, got {n}")

    weight = Fraction(1, 2 * (n + 1))
    entries = {}
    for i in range(n + 1):
        entries[(BLUE, i, i)] = weight
        entries[(RED, i, i + 1)] = weight
    return InfoStructure(COLOURS, entries)


def example_1() -> InfoStructure:
    return u_n(1)


def u3() -> InfoStructure:
    return u_n(3)


def u4() -> InfoStructure:
    return InfoStructure(
        COLOURS,
        {(BLUE, 0, 0): QUARTER, (BLUE, 1, 1): QUARTER, (RED, 1, 0): QUARTER, (RED, 2, 1): QUARTER},
    )


def trivial_u() -> InfoStructure:
    """
    Nobody learns anything.
    """

    return InfoStructure(COLOURS, {(BLUE, 0, 0): HALF, (RED, 0, 0): HALF})


def _colour_payoff(blue: Sequence[Sequence], red: Sequence[Sequence]) -> PayoffStructure:

    block = {}
    for k, matrix in ((BLUE, blue), (RED, red)):
        for i, row in enumerate(matrix):
            for j, value in enumerate(row):
                block[(k, i, j)] = Fraction(value)
    return PayoffStructure(COLOURS, len(blue), block)


def g_example_2() -> PayoffStructure:
    m = Fraction(-3, 5)
    return _colour_payoff([[0, 0], [m, 1]], [[1, m], [0, 0]])


def g_example_4a() -> PayoffStructure:
    return _colour_payoff([[0, 1], [0, -1]], [[-1, 0], [1, 0]])


def g_example_4b() -> PayoffStructure:
    return _colour_payoff([[-1, 1], [-1, 1]], [[1, -1], [1, -1]])


def q1_example_4() -> Garbling:
    """
    Merges player 1's signals 1 and 2 of :func:`u4`.
    """

    return Garbling({0: {0: 1}, 1: {1: 1}, 2: {1: 1}})


def q2_example_4() -> Garbling:
    """
    Splits player 2's only signal of :func:`u2` uniformly.
    """

    return Garbling({0: {0: HALF, 1: HALF}})


def _marginal(p: Sequence) -> tuple[tuple[str, ...], list[Fraction]]:

    p = [Fraction(x) for x in p]
    if not p or any(x < 0 for x in p) or sum(p) != 1:
        raise StructuralError(f"expected a probability vector, got {p}")
    return tuple(str(k) for k in range(len(p))), p


def u_max(p: Sequence) -> InfoStructure:
    """
    Player 1 learns the state, player 2 learns nothing.
    """

    states, p = _marginal(p)
    return InfoStructure(states, {(k, k, 0): x for k, x in enumerate(p)})


def u_min(p: Sequence) -> InfoStructure:
    """
    Player 2 learns the state, player 1 learns nothing.
    """

    states, p = _marginal(p)
    return InfoStructure(states, {(k, 0, k): x for k, x in enumerate(p)})


def guess_payoff(n_states: int) -> PayoffStructure:
    """
    Player 1 names a state and gets 1 if right, -1 if wrong.
    """

    return PayoffStructure(
        tuple(str(k) for k in range(n_states)),
        n_states,
        {
            (k, i, j): Fraction(1 if k == i else -1)
            for k in range(n_states)
            for i in range(n_states)
            for j in range(n_states)
        },
    )


def binary_channel(accuracy: Fraction) -> InfoStructure:
    """
    One-player structure: a uniform binary state observed through a
    symmetric channel that is right with probability :code:`accuracy`.
    """

    accuracy = Fraction(accuracy)
    if not 0 <= accuracy <= 1:
        raise StructuralError(f"binary_channel: accuracy must lie in [0, 1], got {accuracy}")

    entries = {}
    for k in (0, 1):
        entries[(k, k, 0)] = HALF * accuracy
        entries[(k, 1 - k, 0)] = HALF * (1 - accuracy)
    return InfoStructure(("0", "1"), entries)


def circulant_chain() -> ChainSpec:
    """
    Chain on :code:`1 .. 4` where every state is followed by itself or the
    next state, cyclically.
    """

    return chain_from_successors([[1, 2], [2, 3], [3, 4], [4, 1]])


#: Constructors of the shipped JSON corpus, by file stem.
CATALOGUE: dict[str, Callable[[], InfoStructure | PayoffStructure | Garbling | ChainSpec]] = {
    "example1_u": example_1,
    "u1": u1,
    "u2": u2,
    "u2p": u2_prime,
    "u2pp": u2_second,
    "u2_relabeled": u2_relabeled,
    "u3": u3,
    "u4": u4,
    "trivial_u": trivial_u,
    "g_ex2": g_example_2,
    "g_ex4a": g_example_4a,
    "g_ex4b": g_example_4b,
    "q1_ex4": q1_example_4,
    "q2_ex4": q2_example_4,
    "u_max_3_5": lambda: u_max([Fraction(3, 5), Fraction(2, 5)]),
    "u_min_3_5": lambda: u_min([Fraction(3, 5), Fraction(2, 5)]),
    "g_guess_2": lambda: guess_payoff(2),
    "chain_n4": circulant_chain,
    **{f"u_n{n}": (lambda n=n: u_n(n)) for n in range(1, 11)},
}


def fixture_path(name: str, directory: str | Path | None = None) -> Path:
    directory = Path(directory) if directory is not None else settings.FIXTURE_DIR
    return directory / f"{name}.json"


def load_fixture(
    name: str, directory: str | Path | None = None
) -> InfoStructure | PayoffStructure | Garbling | ChainSpec:
    """
    Reads a fixture of the JSON corpus; the document kind is recognised
    by its fields.

    Raises:
        ParseError: if no such fixture exists.
    """

    path = fixture_path(name, directory)
    document = codec.load_document(path)

    if isinstance(document, dict) and "successors" in document:
        return codec.chain_from_dict(document, str(path))
    if isinstance(document, dict) and "rows" in document:
        return codec.garbling_from_dict(document, str(path))
    if isinstance(document, dict) and "payoffs" in document:
        return codec.payoff_from_dict(document, str(path))
    return codec.info_from_dict(document, str(path))
