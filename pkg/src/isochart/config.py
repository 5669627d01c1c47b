"""Run configuration: one key=value file, flag overrides, and a single
environment override (the data directory)."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

DATA_DIR_ENV = "ISOCHART_DATA_DIR"

_PACKAGE_DATA = Path(__file__).resolve().parent / "data"


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    max_s: int = 6
    max_t: int = 12
    window: int = 20
    bpbp_degree: int = 14
    workers: int = 1
    budget_cells: Optional[int] = None
    checkpoint_dir: str = "."
    data_dir: str = ""
    output_format: str = "tsv"

    def __post_init__(self):
        if not self.data_dir:
            self.data_dir = os.environ.get(DATA_DIR_ENV, str(_PACKAGE_DATA))
        for name in ("max_s", "max_t", "window", "bpbp_degree", "workers"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.output_format not in ("tsv", "svg"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def data_path(self, name: str) -> Path:
        path = Path(self.data_dir) / name
        if not path.exists():
            raise ConfigError(f"bundled data file not found: {path}")
        return path


def load_config(path: Optional[str] = None, **overrides) -> Config:
    values = {}
    if path:
        file = Path(path)
        if not file.exists():
            raise ConfigError(f"config file not found: {path}")
        known = {f.name: f for f in fields(Config)}
        for lineno, line in enumerate(file.read_text().splitlines(), start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, _, raw = body.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            field = known[key]
            if field.type in ("int", "Optional[int]"):
                try:
                    values[key] = int(raw)
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: {key} wants an integer") from None
            else:
                values[key] = raw
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**values)


__all__ = ["Config", "ConfigError", "DATA_DIR_ENV", "load_config"]
