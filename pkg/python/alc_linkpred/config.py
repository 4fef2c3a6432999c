#  Copyright 2026 The alc-linkpred Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Flat ``key = value`` configuration files.

Keys mirror the long command line flags. Values given on the command line
win over the file, and the file wins over the built-in defaults.
"""

from __future__ import annotations

import logging
from typing import Iterable, Mapping

from .errors import ConfigError
from .evaluation import EvalConfig, Task
from .indices import IndexKind

logger = logging.getLogger(__name__)

CONFIG_KEYS = (
    "index",
    "probe",
    "runs",
    "seed",
    "L",
    "grid",
    "k_grid",
    "task",
    "format",
    "threads",
    "distance2_candidates",
    "epsilon_lp",
    "clamp_eps",
    "tie_seed",
)

OUTPUT_FORMATS = ("csv", "json")


def parse_config_lines(
    lines: Iterable[str], source: str = "<config>"
) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_number, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, value = stripped.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise ConfigError(
                f"{source}:{line_number}: expected 'key = value', "
                f"got {line.strip()!r}"
            )
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"{source}:{line_number}: unknown key {key!r}; "
                f"valid keys: {', '.join(CONFIG_KEYS)}"
            )
        if key in values:
            logger.warning("%s:%d: %s set twice", source, line_number, key)
        values[key] = value.strip()
    return values


def read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as f:
            return parse_config_lines(f, source=path)
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e


def merge_settings(
    file_values: Mapping[str, str], flag_values: Mapping[str, object]
) -> dict[str, object]:
    """Flags that were given (not None) override the file values."""
    merged: dict[str, object] = dict(file_values)
    for key, value in flag_values.items():
        if value is not None:
            merged[key] = value
    return merged


def parse_grid(text: str) -> tuple[int, ...]:
    """``"2,4,6"`` or the inclusive range ``"2:20:2"``."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            if len(parts) != 3 or parts[2] < 1:
                raise ValueError(text)
            start, stop, step = parts
            return tuple(range(start, stop + 1, step))
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(
            f"Invalid grid {text!r}; use '2,4,6' or 'start:stop:step'"
        ) from None


def parse_switch(text: str) -> bool:
    value = text.strip().lower()
    if value in ("on", "true", "yes", "1"):
        return True
    if value in ("off", "false", "no", "0"):
        return False
    raise ConfigError(f"Expected on/off, got {text!r}")


def _as_int(key: str, value: object) -> int:
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError:
        raise ConfigError(f"{key} must be an integer: {value!r}") from None


def _as_float(key: str, value: object) -> float:
    if isinstance(value, float):
        return value
    try:
        return float(str(value).strip())
    except ValueError:
        raise ConfigError(f"{key} must be a number: {value!r}") from None


def _as_grid(value: object) -> tuple[int, ...]:
    if isinstance(value, tuple):
        return value
    return parse_grid(str(value))


def output_format(settings: Mapping[str, object]) -> str:
    fmt = str(settings.get("format", "csv")).strip().lower()
    if fmt not in OUTPUT_FORMATS:
        valid = ", ".join(OUTPUT_FORMATS)
        raise ConfigError(f"Unknown format {fmt!r}; valid formats: {valid}")
    return fmt


def build_eval_config(settings: Mapping[str, object]) -> EvalConfig:
    """Turn merged settings into an ``EvalConfig``; missing keys keep the
    dataclass defaults."""
    kwargs: dict[str, object] = {}
    if "task" in settings:
        kwargs["task"] = Task.parse(str(settings["task"]))
    if "index" in settings:
        kwargs["indices"] = IndexKind.parse_list(str(settings["index"]))
    if "L" in settings:
        kwargs["L"] = _as_int("L", settings["L"])
    if "grid" in settings:
        kwargs["l_grid"] = _as_grid(settings["grid"])
    if "k_grid" in settings:
        kwargs["k_grid"] = _as_grid(settings["k_grid"])
    if "runs" in settings:
        kwargs["runs"] = _as_int("runs", settings["runs"])
    if "seed" in settings:
        kwargs["base_seed"] = _as_int("seed", settings["seed"])
    if "probe" in settings:
        kwargs["fraction"] = _as_float("probe", settings["probe"])
    if "threads" in settings:
        kwargs["threads"] = _as_int("threads", settings["threads"])
    if "distance2_candidates" in settings:
        value = settings["distance2_candidates"]
        kwargs["distance2_candidates"] = (
            value if isinstance(value, bool) else parse_switch(str(value))
        )
    if "epsilon_lp" in settings:
        kwargs["epsilon_lp"] = _as_float("epsilon_lp", settings["epsilon_lp"])
    if "clamp_eps" in settings:
        kwargs["clamp_eps"] = _as_float("clamp_eps", settings["clamp_eps"])
    if "tie_seed" in settings:
        kwargs["tie_seed"] = _as_int("tie_seed", settings["tie_seed"])
    return EvalConfig(**kwargs)  # type: ignore[arg-type]
