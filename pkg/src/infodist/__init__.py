"""
Exact values, distances and orders between information structures of
zero-sum Bayesian games.

Importing the package loads the env file named by :code:`DOTENV_PATH`, so
that the :code:`INFODIST_*` variables read by :mod:`infodist.settings` and
by the logging config can live in a file.
"""

import os

from logging import getLogger

from dotenv import load_dotenv, find_dotenv


logger = getLogger(__name__)


def load_env_file(dotenv_path: str | None = None) -> bool:
    """
    Loads an env file without overriding variables that are already set.

    Args:
        dotenv_path (str | None): file name, searched upwards from the
            working directory. Defaults to :code:`DOTENV_PATH`.

    Returns:
        bool: whether a file was found and loaded.
    """

    dotenv_path = dotenv_path or os.environ.get("DOTENV_PATH")
    if not dotenv_path:
        return False

    path = find_dotenv(dotenv_path, usecwd=True)
    if path == "":
        logger.warning(f"DOTENV_PATH is set to {dotenv_path}, but no such file was found")
        return False

    return load_dotenv(path, override=False)


load_env_file()
