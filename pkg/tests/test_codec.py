# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

from fractions import Fraction

import pytest

from infodist import codec, fixtures
from infodist.errors import ParseError, ValidationError


@pytest.mark.parametrize("value", ["0.5", "1e-3", 0.5, True, None, "1/0", "half"])
def test_inexact_or_malformed_rationals_are_rejected(value) -> None:
    with pytest.raises(ValidationError):
        codec.parse_rational(value, "test")


def test_rationals() -> None:
    assert codec.parse_rational("3/6", "test") == Fraction(1, 2)
    assert codec.parse_rational(-2, "test") == -2
    assert codec.format_rational(Fraction(4, 2)) == "2"
    assert codec.format_rational(Fraction(-1, 3)) == "-1/3"


def test_float_literals_are_rejected() -> None:
    with pytest.raises(ValidationError, match="num/den"):
        codec.parse_document('{"p": 0.25}')


def test_malformed_json_names_the_position() -> None:
    with pytest.raises(ParseError, match="<string>:1:"):
        codec.parse_document('{"p": ')


def test_missing_files(tmp_path) -> None:
    with pytest.raises(ParseError, match="cannot read file"):
        codec.load_document(tmp_path / "nothing.json")


def test_duplicate_entries_are_rejected() -> None:
    document = {
        "states": ["blue", "red"],
        "entries": [{"k": 0, "c": 0, "d": 0, "p": "1/2"}, {"k": 0, "c": 0, "d": 0, "p": "1/2"}],
    }
    with pytest.raises(ValidationError, match="duplicate entry"):
        codec.info_from_dict(document)


def test_missing_and_mistyped_fields() -> None:
    with pytest.raises(ValidationError, match="missing field 'entries'"):
        codec.info_from_dict({"states": ["blue"]})
    with pytest.raises(ValidationError, match="wrong type"):
        codec.payoff_from_dict({"states": ["blue"], "L": True, "payoffs": []})


def test_invariants_are_checked_after_decoding() -> None:
    document = {"states": ["blue"], "entries": [{"k": 0, "c": 0, "d": 0, "p": "1/2"}]}
    with pytest.raises(ValidationError, match="sum to exactly 1"):
        codec.info_from_dict(document)


def test_chain_size_must_match() -> None:
    with pytest.raises(ValidationError, match="successor sets are given"):
        codec.chain_from_dict({"N": 4, "successors": [[1, 2], [2, 3]]})


@pytest.mark.parametrize(
    "obj, to_dict, from_dict",
    [
        (fixtures.u4(), codec.info_to_dict, codec.info_from_dict),
        (fixtures.g_example_4a(), codec.payoff_to_dict, codec.payoff_from_dict),
        (fixtures.q1_example_4(), codec.garbling_to_dict, codec.garbling_from_dict),
        (fixtures.circulant_chain(), codec.chain_to_dict, codec.chain_from_dict),
    ],
)
def test_documents_decode_to_the_same_object(obj, to_dict, from_dict) -> None:
    text = codec.render_document(to_dict(obj))
    assert from_dict(codec.parse_document(text)) == obj


def test_rendering_is_deterministic(tmp_path) -> None:
    first, second = tmp_path / "a" / "u3.json", tmp_path / "b" / "u3.json"
    codec.dump_document(codec.info_to_dict(fixtures.u3()), first)
    codec.dump_document(codec.info_to_dict(fixtures.u3()), second)

    assert first.read_bytes() == second.read_bytes()
    assert codec.load_info(first) == fixtures.u3()


def test_strategies_are_sorted() -> None:
    strategy = {1: {0: Fraction(1, 3), 1: Fraction(2, 3)}, 0: {1: Fraction(1)}}
    assert codec.strategy_to_dict(strategy) == [
        {"signal": 0, "actions": [{"action": 1, "p": "1"}]},
        {"signal": 1, "actions": [{"action": 0, "p": "1/3"}, {"action": 1, "p": "2/3"}]},
    ]
