"""Run configuration: defaults, FICTIO_CONFIG file layering, and the active context."""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import json
import os
from typing import Iterator, Literal

Mode = Literal["exact", "numeric"]

ENV_VAR = "FICTIO_CONFIG"


@dataclasses.dataclass(frozen=True)
class RunConfig:
    mode: Mode = "numeric"
    truncation_order: int = 8
    tolerance: float = 1e-9
    seed: int = 42
    output: Literal["json", "text"] = "json"

    def __post_init__(self):
        if self.mode not in ("exact", "numeric"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.output not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output!r}")
        if int(self.truncation_order) != self.truncation_order or self.truncation_order < 2:
            raise ValueError("truncation_order must be an integer >= 2")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}


def load_config(overrides: dict | None = None, environ=None) -> RunConfig:
    """Layer explicit overrides over the FICTIO_CONFIG file over the defaults."""
    environ = os.environ if environ is None else environ
    values: dict = {}
    path = environ.get(ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - _FIELDS
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {sorted(unknown)}")
        values.update(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return RunConfig(**values)


_current: contextvars.ContextVar[RunConfig] = contextvars.ContextVar(
    "fictio_config", default=RunConfig()
)


def get_config() -> RunConfig:
    return _current.get()


@contextlib.contextmanager
def use_config(config: RunConfig | None = None, **changes) -> Iterator[RunConfig]:
    """Activate a configuration for the enclosed block (thread and task local)."""
    config = (config or get_config()).replace(**changes) if changes else (config or get_config())
    token = _current.set(config)
    try:
        yield config
    finally:
        _current.reset(token)
