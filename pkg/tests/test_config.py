# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import pytest

from infodist import settings
from infodist.config import RunConfig, config_from_dict, dump_config, load_config
from infodist.errors import ParseError, ValidationError


def test_config_round_trip(tmp_path) -> None:
    config = RunConfig(command="cx", action="ui", n=8, l_max=2, seed=3, alpha="1/25")
    path = tmp_path / "run.json"

    dump_config(config, path)

    assert load_config(path) == config


def test_provenance_carries_the_version() -> None:
    provenance = RunConfig(command="value", inputs=["u2.json", "g.json"]).provenance()
    assert provenance["version"] == settings.VERSION
    assert provenance["inputs"] == ["u2.json", "g.json"]


def test_unknown_fields_are_rejected() -> None:
    with pytest.raises(ValidationError, match="unknown fields"):
        config_from_dict({"command": "value", "colour": "red"})


def test_missing_config(tmp_path) -> None:
    with pytest.raises(ParseError, match="no such config file"):
        load_config(tmp_path / "missing.json")


def test_malformed_config(tmp_path) -> None:
    path = tmp_path / "run.json"
    path.write_text('{"command": ')
    with pytest.raises(ParseError, match="run.json:1:"):
        load_config(path)


def test_config_must_be_an_object(tmp_path) -> None:
    path = tmp_path / "run.json"
    path.write_text("[]")
    with pytest.raises(ValidationError, match="JSON object"):
        load_config(path)
