import os

from pathlib import Path
from logging import getLogger

from __about__ import __version__


logger = getLogger(__name__)

# src/infodist/settings.py -> repository root
BASE_PATH = Path(__file__).parent.parent.parent

FIXTURE_DIR = BASE_PATH / os.environ.get("INFODIST_FIXTURE_DIR", "fixtures")

#: Largest number of tableau cells (rows times columns) a single LP may use.
LP_BUDGET = int(float(os.environ.get("INFODIST_LP_BUDGET", "400000")))

#: Largest number of conditional probabilities an exhaustive UI check may evaluate.
UI_BUDGET = int(float(os.environ.get("INFODIST_UI_BUDGET", "2e6")))

#: Largest number of index tuples the event E check visits exhaustively.
EVENT_E_BUDGET = int(float(os.environ.get("INFODIST_EVENT_E_BUDGET", "1e6")))

#: Number of sampled index tuples when the event E check falls back to sampling.
EVENT_E_SAMPLES = int(os.environ.get("INFODIST_EVENT_E_SAMPLES", "20000"))

VERSION = __version__
