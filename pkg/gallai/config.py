import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .search import DEFAULT_NODE_BUDGET

DEFAULT_COLOR_NAMES = ("red", "blue", "green")


@dataclass
class ToolkitConfig:
    node_budget: int
    threads: int
    ramsey_cap: int
    ledger_path: Optional[Path]
    color_names: tuple[str, ...]


def parse_int_env(var_name: str, default: int, min_value: int, max_value: int) -> int:
    raw = os.getenv(var_name)
    if raw is None:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        logging.warning("Invalid %s=%r, using default %s", var_name, raw, default)
        return default
    if value < min_value or value > max_value:
        logging.warning("Out-of-range %s=%r, using default %s", var_name, raw, default)
        return default
    return value


def parse_color_names(raw: Optional[str]) -> tuple[str, ...]:
    if raw is None:
        return DEFAULT_COLOR_NAMES
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    for name in names:
        if any(ch.isspace() or ch == "=" for ch in name):
            logging.warning("Invalid color name %r in GALLAI_COLOR_NAMES, using defaults", name)
            return DEFAULT_COLOR_NAMES
    return names


def load_config() -> ToolkitConfig:
    ledger_raw = os.getenv("GALLAI_LEDGER_PATH")
    return ToolkitConfig(
        node_budget=parse_int_env("GALLAI_NODE_BUDGET", DEFAULT_NODE_BUDGET, 1, 10**12),
        threads=parse_int_env("GALLAI_THREADS", 1, 1, 256),
        ramsey_cap=parse_int_env("GALLAI_RAMSEY_CAP", 8, 2, 12),
        ledger_path=Path(ledger_raw).expanduser() if ledger_raw else None,
        color_names=parse_color_names(os.getenv("GALLAI_COLOR_NAMES")),
    )
