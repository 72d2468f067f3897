"""Reproduce the comparison figures as panel CSVs plus one gnuplot script each.

Figure parameters live in ``data/figures.yaml``; every figure runs its whole
task list on one process pool so panels share the workers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import yaml

from .analysis import RootResult, SweepAxis, l_crit_task, l_max_task, parallel_map, row_task
from .exceptions import DomainError
from .exporters import Panel, write_gnuplot, write_panel_csv
from .harvest import DetectorParams
from .runconfig import SCENARIO_ALIASES, RunConfig, parse_grid

logger = logging.getLogger(__name__)

FIGURES_PATH = Path(__file__).resolve().parent / "data" / "figures.yaml"
PANEL_LETTERS = "abcdefghijklmnopqrstuvwxyz"
RATE_LABEL = "a{/Symbol s}"
SEPARATION_LABEL = "L/{/Symbol s}"


class Layout(StrEnum):
    CONCURRENCE = "concurrence"
    L_MAX = "l_max"
    L_CRIT = "l_crit"


@dataclass(frozen=True)
class FigureSpec:
    number: int
    title: str
    layout: Layout
    grid: tuple[float, ...]
    gaps: tuple[float, ...]
    axis: SweepAxis | None = None
    fixed: tuple[float, ...] = ()
    fixed_label: str = ""
    series: tuple[str, ...] = ()
    dashed: tuple[str, ...] = ()
    reference: str | None = None

    @classmethod
    def from_mapping(cls, number: int, data: dict) -> FigureSpec:
        return cls(
            number=number,
            title=data["title"],
            layout=Layout(data["layout"]),
            grid=parse_grid(data["grid"]),
            gaps=tuple(float(g) for g in data["gaps"]),
            axis=SweepAxis(data["axis"]) if "axis" in data else None,
            fixed=tuple(float(v) for v in data.get("fixed", ())),
            fixed_label=data.get("fixed_label", ""),
            series=tuple(data.get("series", ())),
            dashed=tuple(data.get("dashed", ())),
            reference=data.get("reference"),
        )

    @property
    def panel_count(self) -> int:
        match self.layout:
            case Layout.CONCURRENCE:
                return len(self.gaps) * len(self.fixed)
            case Layout.L_MAX:
                return len(self.gaps)
        return 1


def load_figures(path: Path = FIGURES_PATH) -> dict[int, FigureSpec]:
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    return {int(number): FigureSpec.from_mapping(int(number), entry) for number, entry in data.items()}


def get_figure(fig_id: int) -> FigureSpec:
    figures = load_figures()
    if fig_id not in figures:
        raise DomainError(f"unknown figure {fig_id}; choose one of {sorted(figures)}")
    return figures[fig_id]


def _root_value(result: RootResult | None) -> tuple[float, float]:
    if result is None:
        return math.nan, math.inf
    return result.value, result.bracket[1] - result.bracket[0]


def _concurrence_panels(fig: FigureSpec, coupling: float, tol: float, threads: int) -> list[Panel]:
    layout = [(gap, fixed) for gap in fig.gaps for fixed in fig.fixed]
    tasks = []
    for gap, fixed in layout:
        det = DetectorParams(gap, coupling)
        for name in fig.series:
            for value in fig.grid:
                rate, sep = (fixed, value) if fig.axis is SweepAxis.SEPARATION else (value, fixed)
                tasks.append((SCENARIO_ALIASES[name], det, rate, sep, tol, value))
    rows = iter(parallel_map(row_task, tasks, threads))

    panels = []
    for letter, (gap, fixed) in zip(PANEL_LETTERS, layout, strict=False):
        series, errors = {}, {}
        for name in fig.series:
            chunk = [next(rows) for _ in fig.grid]
            series[name] = [row.concurrence for row in chunk]
            errors[name] = [row.err for row in chunk]
        panels.append(Panel(
            name=f"fig{fig.number}{letter}",
            title=f"({letter}) {{/Symbol W}}{{/Symbol s}}={gap:.2f}, {fig.fixed_label}={fixed:.2f}",
            xlabel=SEPARATION_LABEL if fig.axis is SweepAxis.SEPARATION else RATE_LABEL,
            ylabel="concurrence / {/Symbol l}^2",
            axis=fig.grid,
            series=series,
            errors=errors,
            dashed=fig.dashed,
        ))
    return panels


def _l_max_panels(fig: FigureSpec, coupling: float, tol: float, threads: int) -> list[Panel]:
    tasks = []
    for gap in fig.gaps:
        det = DetectorParams(gap, coupling)
        for name in fig.series:
            # The static vacuum value does not depend on the rate.
            rates = (0.0,) if name == "vacuum" else fig.grid
            tasks += [(SCENARIO_ALIASES[name], det, rate, tol) for rate in rates]
    results = iter(parallel_map(l_max_task, tasks, threads))

    panels = []
    for letter, gap in zip(PANEL_LETTERS, fig.gaps, strict=False):
        series, errors = {}, {}
        for name in fig.series:
            if name == "vacuum":
                value, err = _root_value(next(results))
                points = [(value, err)] * len(fig.grid)
            else:
                points = [_root_value(next(results)) for _ in fig.grid]
            series[name] = [p[0] for p in points]
            errors[name] = [p[1] for p in points]
        panels.append(Panel(
            name=f"fig{fig.number}{letter}" if len(fig.gaps) > 1 else f"fig{fig.number}",
            title=f"{{/Symbol W}}{{/Symbol s}}={gap:.2f}",
            xlabel=RATE_LABEL,
            ylabel="L_{max}/{/Symbol s}",
            axis=fig.grid,
            series=series,
            errors=errors,
            dashed=fig.dashed,
        ))
    return panels


def _l_crit_panels(fig: FigureSpec, coupling: float, tol: float, threads: int) -> list[Panel]:
    tasks = [(DetectorParams(gap, coupling), rate, tol) for gap in fig.gaps for rate in fig.grid]
    results = iter(parallel_map(l_crit_task, tasks, threads))

    series, errors = {}, {}
    for gap in fig.gaps:
        points = [_root_value(next(results)) for _ in fig.grid]
        name = f"gap{gap:g}"
        series[name] = [p[0] for p in points]
        errors[name] = [p[1] for p in points]
    if fig.reference == "inertial":
        series["inertial"] = [1.0 / a for a in fig.grid]
        errors["inertial"] = [0.0] * len(fig.grid)
    return [Panel(
        name=f"fig{fig.number}",
        title=fig.title,
        xlabel=RATE_LABEL,
        ylabel="L_{crit}/{/Symbol s}",
        axis=fig.grid,
        series=series,
        errors=errors,
        dashed=fig.dashed,
    )]


def build_panels(fig: FigureSpec, coupling: float = 1.0, tol: float = 1e-6, threads: int = 1) -> list[Panel]:
    match fig.layout:
        case Layout.CONCURRENCE:
            return _concurrence_panels(fig, coupling, tol, threads)
        case Layout.L_MAX:
            return _l_max_panels(fig, coupling, tol, threads)
        case Layout.L_CRIT:
            return _l_crit_panels(fig, coupling, tol, threads)
    raise DomainError(f"unknown layout {fig.layout!r}")


def run_figure(fig_id: int, config: RunConfig, out_dir: Path) -> list[Path]:
    """Evaluate one figure and write its panels and gnuplot script into ``out_dir``.

    Returns the written paths, panels first. ``OSError`` propagates when the
    directory cannot be created or written.
    """
    fig = get_figure(fig_id)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info("Figure %d: %d panels, %d grid points, %d workers", fig.number, fig.panel_count, len(fig.grid), config.threads)

    panels = build_panels(fig, config.det.coupling, config.quad_tol, config.threads)
    written = [write_panel_csv(panel, out_dir) for panel in panels]
    columns = 3 if len(panels) >= 3 else len(panels)
    written.append(write_gnuplot(fig.title, panels, out_dir, f"fig{fig.number}", columns=columns))
    return written
