import logging
import os
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)s %(processName)s %(name)s: %(message)s"
NOISY_LOGGERS = ("sqlalchemy.engine", "sqlalchemy.pool", "sqlalchemy.orm")


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in {"1", "true", "yes", "on"}


def resolve_level(name: Optional[str] = None) -> Optional[int]:
    """Numeric level for a name like "debug"; None when the name is unknown."""
    level = logging.getLevelName((name or os.getenv("LOG_LEVEL", "INFO")).strip().upper())
    return level if isinstance(level, int) else None


def configure_logging(level_name: Optional[str] = None) -> None:
    """Send logs to stderr, plus LOG_DIR/gallai.log when set.

    stdout is reserved for certificates and jsonl records.
    """
    level = resolve_level(level_name)
    formatter = logging.Formatter(LOG_FORMAT)
    handlers: list[logging.Handler] = []

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    handlers.append(console_handler)

    log_dir = os.getenv("LOG_DIR")
    if log_dir:
        path = Path(log_dir).expanduser()
        path.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path / "gallai.log")
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    logging.basicConfig(level=logging.INFO if level is None else level, handlers=handlers, force=True)
    if level is None:
        logging.warning("Unknown log level %r. Using INFO.", level_name or os.getenv("LOG_LEVEL"))

    library_level = logging.NOTSET if _env_flag("LOG_VERBOSE") else logging.WARNING
    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(library_level)


def configure_worker_logging(level: int) -> None:
    """Process pool initializer: workers log to stderr at the parent's level."""
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
