# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import pytest

from hypothesis import HealthCheck, settings

from infodist import fixtures


# every example runs exact LPs; keep them few and reproducible
settings.register_profile(
    "infodist",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("infodist")


@pytest.fixture
def circulant():
    return fixtures.circulant_chain()


@pytest.fixture
def corpus_dir(tmp_path):
    """
    Copies of the shipped fixtures in a temporary folder, for tests that
    hand file paths to the CLI.
    """

    for name in fixtures.CATALOGUE:
        source = fixtures.fixture_path(name)
        (tmp_path / source.name).write_text(source.read_text())
    return tmp_path
