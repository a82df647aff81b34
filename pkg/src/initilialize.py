from pathlib import Path

from logger_config import LOGGING_HANDLERS


def create_log_dir(handlers: dict = LOGGING_HANDLERS) -> list[Path]:
    """
    Creates the folder of every file handler that writes to a missing one.

    Returns:
        list[Path]: the folders that were created
    """

    created = []
    for handler in handlers.values():
        if "filename" not in handler:
            continue
        log_dir = Path(handler["filename"]).parent
        if not log_dir.exists():
            log_dir.mkdir(parents=True)
            created.append(log_dir)

    return created
