"""Run configuration for the management commands.

Values come from three layers, highest first: command-line flags, a flat
``key = value`` config file, and the ``UDW_*`` settings. Rates are always
entered as aσ = 2πTσ.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path
from typing import Any

from django.conf import settings
from django.core.exceptions import ValidationError

from .exceptions import ConfigParseError, DomainError
from .harvest import MIN_SEPARATION, DetectorParams, Scenario, ScenarioKind

logger = logging.getLogger(__name__)

CONFIG_KEYS = ("scenario", "gap", "rate", "sep", "coupling", "grid", "out", "format", "tol", "threads")
MAX_QUAD_TOL = 1e-2

SCENARIO_ALIASES = {
    "parallel": ScenarioKind.PARALLEL_ACC,
    "antiparallel": ScenarioKind.ANTIPARALLEL_ACC,
    "perpendicular": ScenarioKind.PERPENDICULAR_ACC,
    "thermal": ScenarioKind.THERMAL_STATIC,
    "vacuum": ScenarioKind.VACUUM_STATIC,
}


class RunCommand(StrEnum):
    POINT = "point"
    SWEEP = "sweep"
    FIGURE = "figure"
    LMAX = "lmax"
    LCRIT = "lcrit"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


def parse_grid(text: str) -> tuple[float, ...]:
    """Expand ``start:stop:step`` into an inclusive, strictly increasing grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ValueError("grid bounds must be finite")
    if step <= 0:
        raise ValueError("grid step must be positive")
    if stop < start:
        raise ValueError("grid stop lies below its start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 12) for i in range(count))


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigParseError("missing key", lineno)
            if key not in CONFIG_KEYS:
                raise ConfigParseError(f"unknown key {key!r}", lineno)
            if not value:
                raise ConfigParseError(f"missing value for {key!r}", lineno)
            values[key] = value
    logger.debug("read %d config values from %s", len(values), path)
    return values


@dataclass(frozen=True)
class RunConfig:
    command: RunCommand
    det: DetectorParams
    scenario_kind: ScenarioKind | None
    rate: float
    separation: float | None
    grid: tuple[float, ...]
    output_path: Path | None
    format: OutputFormat
    threads: int
    quad_tol: float
    figure: int | None = None

    def scenario(self) -> Scenario:
        if self.scenario_kind is None or self.separation is None:
            raise DomainError("a point evaluation needs a scenario and a separation")
        return Scenario.from_acceleration(self.scenario_kind, self.rate, self.separation)

    @property
    def sweeps_separation(self) -> bool:
        """Sweeps run over L unless a separation is fixed, in which case they run over the rate."""
        return self.separation is None


def _merge(path: str | Path | None, flags: Mapping[str, Any]) -> dict[str, Any]:
    merged: dict[str, Any] = {
        "coupling": 1.0,
        "rate": 0.0,
        "format": OutputFormat.CSV.value,
        "tol": settings.UDW_QUAD_TOL,
        "threads": settings.UDW_THREADS,
    }
    if path is not None:
        merged.update(read_config_file(path))
    merged.update({key: value for key, value in flags.items() if key in CONFIG_KEYS and value is not None})
    return merged


def _number(errors: dict, key: str, raw: Any, kind: type = float):
    if raw is None:
        return None
    try:
        value = kind(raw)
    except (TypeError, ValueError):
        errors[key] = f"{raw!r} is not a valid {kind.__name__}"
        return None
    if kind is float and not math.isfinite(value):
        errors[key] = "must be finite"
        return None
    return value


def parse_config(
    path: str | Path | None = None,
    flags: Mapping[str, Any] | None = None,
    command: RunCommand | str = RunCommand.POINT,
    *,
    figure: int | str | None = None,
) -> RunConfig:
    """Combine flags, an optional config file and settings into a validated :class:`RunConfig`.

    Raises:
        ConfigParseError: a malformed config file line.
        ValidationError: out-of-range values, keyed by field name.
    """
    command = RunCommand(command)
    values = _merge(path, flags or {})
    errors: dict[str, str] = {}

    scenario_kind = None
    raw_scenario = values.get("scenario")
    if raw_scenario is not None:
        name = str(raw_scenario).strip().lower()
        try:
            scenario_kind = SCENARIO_ALIASES.get(name) or ScenarioKind(name)
        except ValueError:
            errors["scenario"] = f"unknown scenario {raw_scenario!r}"
    elif command in (RunCommand.POINT, RunCommand.SWEEP, RunCommand.LMAX):
        errors["scenario"] = "required"

    gap = _number(errors, "gap", values.get("gap"))
    if gap is None and "gap" not in errors and command is not RunCommand.FIGURE:
        errors["gap"] = "required"
    elif gap is not None and gap < 0:
        errors["gap"] = "must be non-negative"

    coupling = _number(errors, "coupling", values.get("coupling"))
    if coupling is not None and coupling <= 0:
        errors["coupling"] = "must be positive"

    rate = _number(errors, "rate", values.get("rate"))
    if rate is not None and rate < 0:
        errors["rate"] = "must be non-negative"

    separation = _number(errors, "sep", values.get("sep"))
    if separation is not None and separation < MIN_SEPARATION:
        errors["sep"] = f"must be at least {MIN_SEPARATION}"
    elif separation is None and "sep" not in errors and command is RunCommand.POINT:
        errors["sep"] = "required"

    grid: tuple[float, ...] = ()
    if values.get("grid") is not None:
        try:
            grid = parse_grid(str(values["grid"]))
        except ValueError as exc:
            errors["grid"] = str(exc)
    elif command is RunCommand.SWEEP:
        errors["grid"] = "required"
    if grid and separation is None and command is RunCommand.SWEEP and grid[0] < MIN_SEPARATION:
        errors["grid"] = f"separations must be at least {MIN_SEPARATION}"

    tol = _number(errors, "tol", values.get("tol"))
    if tol is not None and not 0 < tol <= MAX_QUAD_TOL:
        errors["tol"] = f"must lie in (0, {MAX_QUAD_TOL}]"

    figure_id = _number(errors, "figure", figure, int)
    if command is RunCommand.FIGURE and figure_id is None and "figure" not in errors:
        errors["figure"] = "required"

    threads = _number(errors, "threads", values.get("threads"), int)
    if threads is not None and threads < 1:
        errors["threads"] = "must be at least 1"

    try:
        output_format = OutputFormat(str(values["format"]).lower())
    except ValueError:
        errors["format"] = f"unknown format {values['format']!r}"
        output_format = OutputFormat.CSV

    needs_rate = (
        scenario_kind is not None
        and scenario_kind is not ScenarioKind.VACUUM_STATIC
        and (
            command is RunCommand.POINT
            or (command is RunCommand.LMAX and not grid)
            or (command is RunCommand.SWEEP and separation is None)
        )
    )
    if needs_rate and rate == 0 and "rate" not in errors:
        errors["rate"] = f"{scenario_kind} needs a positive rate"
    if command is RunCommand.LCRIT and not grid and not (rate or 0) > 0 and "rate" not in errors:
        errors["rate"] = "must be positive"
    if command is RunCommand.LCRIT and grid and grid[0] <= 0 and "grid" not in errors:
        errors["grid"] = "accelerations must be positive"

    if errors:
        raise ValidationError({key: [message] for key, message in errors.items()})

    out = values.get("out")
    return RunConfig(
        command=command,
        det=DetectorParams(gap if gap is not None else 0.0, coupling),
        scenario_kind=scenario_kind,
        rate=rate,
        separation=separation,
        grid=grid,
        output_path=Path(out) if out else None,
        format=output_format,
        threads=threads,
        quad_tol=tol,
        figure=figure_id,
    )
