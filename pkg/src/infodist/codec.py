"""
JSON documents for structures, garblings and chains.

Rationals are written as :code:`"num/den"` strings (integers as plain
:code:`"n"`); JSON floats are rejected so that nothing inexact enters a
computation. Documents are written with :code:`indent=4` and a fixed key
order, so identical objects always give byte-identical files.
"""

from __future__ import annotations

import json

from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import Any, Mapping

from infodist.beliefs import HierarchyDistribution, TypePartition
from infodist.chain import ChainSpec
from infodist.errors import ParseError, ValidationError
from infodist.structures import Garbling, InfoStructure, PayoffStructure


logger = getLogger(__name__)


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def parse_rational(value: Any, where: str) -> Fraction:
    """
    Raises:
        ValidationError: for floats, booleans and malformed strings.
    """

    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"{where}: rationals must be integers or 'num/den' strings, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValidationError(f"{where}: decimal notation is not exact, write {value!r} as 'num/den'")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"{where}: malformed rational {value!r}") from None
    raise ValidationError(f"{where}: expected a rational, got {type(value).__name__}")


def _field(document: Mapping, key: str, kind: type | tuple[type, ...], where: str):

    if not isinstance(document, Mapping):
        raise ValidationError(f"{where}: expected an object")
    if key not in document:
        raise ValidationError(f"{where}: missing field '{key}'")
    value = document[key]
    # bool is an int subclass and never a valid field here
    if isinstance(value, bool) or not isinstance(value, kind):
        raise ValidationError(f"{where}: field '{key}' has the wrong type")
    return value


# ---------------------------------------------------------------------------
# Reading and writing files
# ---------------------------------------------------------------------------


def _reject_float(text: str):
    raise ValueError(f"float literal {text}")


def parse_document(text: str, source: str = "<string>") -> Any:
    """
    Decodes JSON text.

    Raises:
        ParseError: with :code:`source:line:column` for malformed JSON.
        ValidationError: for float literals.
    """

    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    except ValueError as e:
        raise ValidationError(f"{source}: {e} is not exact, write it as a 'num/den' string") from None


def load_document(file_path: str | Path) -> Any:
    """
    Raises:
        ParseError: if the file is missing or not valid JSON.
    """

    try:
        with open(file_path, "r") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"{file_path}: cannot read file ({e.strerror})") from None

    return parse_document(text, str(file_path))


def render_document(document: Any) -> str:
    return json.dumps(document, indent=4) + "\n"


def dump_document(document: Any, file_path: str | Path):
    """
    Writes :code:`document` to :code:`file_path`, creating parent folders.
    """

    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w+") as f:
        f.write(render_document(document))

    logger.debug(f"Wrote {file_path}")


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------


def _states(document: Mapping, where: str) -> tuple[str, ...]:
    states = _field(document, "states", list, where)
    if not all(isinstance(state, str) for state in states):
        raise ValidationError(f"{where}: state labels must be strings")
    return tuple(states)


def _int(entry: Mapping, key: str, where: str) -> int:
    return _field(entry, key, int, where)


def info_to_dict(u: InfoStructure) -> dict:
    return {
        "states": list(u.states),
        "entries": [
            {"k": k, "c": c, "d": d, "p": format_rational(p)} for (k, c, d), p in u.entries.items()
        ],
    }


def info_from_dict(document: Mapping, where: str = "InfoStructure") -> InfoStructure:

    states = _states(document, where)
    entries: dict[tuple[int, int, int], Fraction] = {}
    for n, entry in enumerate(_field(document, "entries", list, where)):
        at = f"{where}.entries[{n}]"
        key = (_int(entry, "k", at), _int(entry, "c", at), _int(entry, "d", at))
        if key in entries:
            raise ValidationError(f"{at}: duplicate entry {key}")
        entries[key] = parse_rational(_field(entry, "p", (str, int), at), at)

    return InfoStructure(states, entries)


def payoff_to_dict(g: PayoffStructure) -> dict:
    return {
        "states": list(g.states),
        "L": g.size,
        "payoffs": [
            {"k": k, "i": i, "j": j, "g": format_rational(value)} for (k, i, j), value in g.block.items()
        ],
    }


def payoff_from_dict(document: Mapping, where: str = "PayoffStructure") -> PayoffStructure:

    states = _states(document, where)
    size = _int(document, "L", where)
    block: dict[tuple[int, int, int], Fraction] = {}
    for n, entry in enumerate(_field(document, "payoffs", list, where)):
        at = f"{where}.payoffs[{n}]"
        key = (_int(entry, "k", at), _int(entry, "i", at), _int(entry, "j", at))
        if key in block:
            raise ValidationError(f"{at}: duplicate entry {key}")
        block[key] = parse_rational(_field(entry, "g", (str, int), at), at)

    return PayoffStructure(states, size, block)


def garbling_to_dict(q: Garbling) -> dict:
    return {
        "rows": [
            {
                "from": signal,
                "to": [{"signal": target, "p": format_rational(p)} for target, p in row.items()],
            }
            for signal, row in q.rows.items()
        ]
    }


def garbling_from_dict(document: Mapping, where: str = "Garbling") -> Garbling:

    rows: dict[int, dict[int, Fraction]] = {}
    for n, row in enumerate(_field(document, "rows", list, where)):
        at = f"{where}.rows[{n}]"
        signal = _int(row, "from", at)
        if signal in rows:
            raise ValidationError(f"{at}: duplicate row for signal {signal}")
        law: dict[int, Fraction] = {}
        for t, target in enumerate(_field(row, "to", list, at)):
            target_at = f"{at}.to[{t}]"
            law[_int(target, "signal", target_at)] = parse_rational(
                _field(target, "p", (str, int), target_at), target_at
            )
        rows[signal] = law

    return Garbling(rows)


def chain_to_dict(chain: ChainSpec) -> dict:
    return {
        "N": chain.size,
        "seed": chain.seed,
        "successors": [list(row) for row in chain.successors],
    }


def chain_from_dict(document: Mapping, where: str = "ChainSpec") -> ChainSpec:

    size = _int(document, "N", where)
    seed = document.get("seed") if isinstance(document, Mapping) else None
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ValidationError(f"{where}: field 'seed' must be an integer or null")

    successors = _field(document, "successors", list, where)
    for n, row in enumerate(successors):
        if not isinstance(row, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in row):
            raise ValidationError(f"{where}.successors[{n}]: expected a list of states")
    if len(successors) != size:
        raise ValidationError(f"{where}: 'N' is {size} but {len(successors)} successor sets are given")

    return ChainSpec(size, tuple(tuple(row) for row in successors), seed)


def strategy_to_dict(strategy: Mapping[int, Mapping[int, Fraction]]) -> list:
    return [
        {
            "signal": signal,
            "actions": [{"action": action, "p": format_rational(p)} for action, p in sorted(row.items())],
        }
        for signal, row in sorted(strategy.items())
    ]


def partition_to_dict(partition: TypePartition) -> dict:
    return {
        "player": partition.player,
        "order": partition.order,
        "classes": [
            {
                "signals": list(signals),
                "fingerprint": fingerprint,
                "belief": [
                    {"k": k, "opponent": opponent, "p": format_rational(p)} for k, opponent, p in law
                ],
            }
            for signals, fingerprint, law in zip(partition.classes, partition.fingerprints, partition.laws)
        ],
    }


def hierarchy_to_dict(distribution: HierarchyDistribution) -> dict:
    return {
        "order": distribution.order,
        "support": [
            {"k": k, "theta_1": theta_1, "theta_2": theta_2, "p": format_rational(p)}
            for k, theta_1, theta_2, p in distribution.support
        ],
    }


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def load_info(file_path: str | Path) -> InfoStructure:
    return info_from_dict(load_document(file_path), str(file_path))


def load_payoff(file_path: str | Path) -> PayoffStructure:
    return payoff_from_dict(load_document(file_path), str(file_path))


def load_garbling(file_path: str | Path) -> Garbling:
    return garbling_from_dict(load_document(file_path), str(file_path))


def load_chain(file_path: str | Path) -> ChainSpec:
    return chain_from_dict(load_document(file_path), str(file_path))
