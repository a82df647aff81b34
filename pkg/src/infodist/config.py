import json
from pathlib import Path
from logging import getLogger
from dataclasses import asdict, dataclass, field, fields

from infodist import settings
from infodist.errors import ParseError, ValidationError


logger = getLogger(__name__)


@dataclass
class RunConfig:
    """
    Everything a CLI run depends on. It is embedded in every JSON output,
    and loading it back with :code:`--config` repeats the run.
    """

    command: str = ""  #:
    action: str | None = None  #: subcommand of :code:`cx`
    inputs: list[str] = field(default_factory=list)  #:
    output: str | None = None  #:
    witness: str | None = None  #:
    format: str = "json"  #:

    order: int | None = None  #:
    terms: int | None = None  #:
    n: int | None = None  #:
    l: int | None = None  #:
    p: int | None = None  #:
    l_max: int | None = None  #:
    seed: int | None = None  #:
    samples: int | None = None  #:
    trials: int | None = None  #:

    epsilon: str | None = None  #: rational string
    gamma: str | None = None  #: rational string
    alpha: str | None = None  #: rational string

    lp_budget: int | None = None  #:
    ui_budget: int | None = None  #:

    def provenance(self) -> dict:
        """
        The config together with the package version, as written into
        outputs.
        """

        document = asdict(self)
        document["version"] = settings.VERSION
        return document


def config_from_dict(document: dict) -> RunConfig:
    """
    Raises:
        ValidationError: for fields :class:`RunConfig` does not know.
    """

    known = {f.name for f in fields(RunConfig)}
    document = {k: v for k, v in document.items() if k != "version"}
    unknown = sorted(set(document) - known)
    if unknown:
        raise ValidationError(f"RunConfig: unknown fields {unknown}")
    return RunConfig(**document)


def load_config(file_path: str | Path) -> RunConfig:
    """
    Loads a run config from :code:`file_path`

    Args:
        file_path (str | Path): path to the json containing the config

    Raises:
        ParseError: if the file is missing or malformed.

    Returns:
        RunConfig:
    """

    try:
        with open(file_path, "r") as f:
            config_dic = json.load(f)
    except FileNotFoundError:
        raise ParseError(f"{file_path}: no such config file") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{file_path}:{e.lineno}:{e.colno}: {e.msg}") from None

    if not isinstance(config_dic, dict):
        raise ValidationError(f"{file_path}: a run config must be a JSON object")

    return config_from_dict(config_dic)


def dump_config(config: RunConfig, file_path: str | Path):
    """
    Dumps the run config to the given :code:`file_path`

    Args:
        config (RunConfig):
        file_path (str | Path):
    """

    with open(file_path, "w+") as f:
        json.dump(config.provenance(), f, indent=4)
