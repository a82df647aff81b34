# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import os

from infodist import load_env_file, settings
from initilialize import create_log_dir
from logger_config import LOGGERS


def test_env_files_are_loaded(tmp_path, monkeypatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("INFODIST_TEST_FLAG", "unset")
    monkeypatch.delenv("INFODIST_TEST_FLAG")
    (tmp_path / "test.env").write_text("INFODIST_TEST_FLAG=7\n")

    assert load_env_file("test.env")
    assert os.environ["INFODIST_TEST_FLAG"] == "7"


def test_env_files_do_not_override(tmp_path, monkeypatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("INFODIST_TEST_FLAG", "kept")
    (tmp_path / "test.env").write_text("INFODIST_TEST_FLAG=7\n")

    load_env_file("test.env")

    assert os.environ["INFODIST_TEST_FLAG"] == "kept"


def test_missing_env_file(tmp_path, monkeypatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("DOTENV_PATH", raising=False)

    assert not load_env_file("nothing.env")
    assert not load_env_file()


def test_log_dirs_are_created(tmp_path) -> None:
    handlers = {
        "console": {"class": "logging.StreamHandler"},
        "file": {"class": "logging.FileHandler", "filename": str(tmp_path / "a" / "b" / "log.txt")},
    }

    assert create_log_dir(handlers) == [tmp_path / "a" / "b"]
    assert (tmp_path / "a" / "b").is_dir()
    assert create_log_dir(handlers) == []


def test_every_module_has_a_logger() -> None:
    modules = ("exactlp", "structures", "game_value", "distance", "beliefs", "chain", "counterexample", "cli")
    assert all(f"infodist.{name}" in LOGGERS for name in modules)


def test_budgets_are_positive() -> None:
    assert settings.LP_BUDGET > 0
    assert settings.UI_BUDGET > 0
    assert settings.EVENT_E_BUDGET > 0
