"""CSV, JSON and gnuplot output for sweeps, points and figure panels."""

from __future__ import annotations

import csv
import json
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import IO

from .analysis import RootResult, SweepRow
from .harvest import HarvestOutcome

logger = logging.getLogger(__name__)

CSV_HEADER = ("axis", "P", "Xabs", "concurrence", "err")


def fmt(value: float) -> str:
    """Shortest text that reads back to the same double."""
    return f"{value:.17g}"


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def write_rows_csv(rows: Iterable[SweepRow], stream: IO[str]) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for row in rows:
        writer.writerow([fmt(row.axis_value), fmt(row.p), fmt(row.x_abs), fmt(row.concurrence), fmt(row.err)])
        count += 1
    return count


def read_rows_csv(stream: IO[str]) -> list[SweepRow]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [SweepRow(*(float(cell) for cell in record)) for record in reader if record]


def write_rows_json(rows: Iterable[SweepRow], stream: IO[str]) -> int:
    records = [
        {
            "axis": row.axis_value,
            "P": _finite_or_none(row.p),
            "Xabs": _finite_or_none(row.x_abs),
            "concurrence": _finite_or_none(row.concurrence),
            "err": _finite_or_none(row.err),
        }
        for row in rows
    ]
    json.dump(records, stream, indent=2)
    stream.write("\n")
    return len(records)


def write_rows(rows: Sequence[SweepRow], stream: IO[str], output_format: str) -> int:
    if output_format == "json":
        return write_rows_json(rows, stream)
    return write_rows_csv(rows, stream)


def outcome_record(outcome: HarvestOutcome) -> dict:
    return {
        "P_A": outcome.p_a,
        "P_B": outcome.p_b,
        "X_real": outcome.corr_x.real,
        "X_imag": outcome.corr_x.imag,
        "Xabs": outcome.x_abs,
        "concurrence": outcome.concurrence,
        "err": {
            "P": outcome.err.p_a,
            "X": outcome.err.corr_x,
            "concurrence": outcome.err.concurrence,
        },
    }


def write_outcome(outcome: HarvestOutcome, axis_value: float, stream: IO[str], output_format: str) -> None:
    """A point result: a one-row CSV, or the full record as JSON."""
    if output_format == "json":
        json.dump(outcome_record(outcome), stream, indent=2)
        stream.write("\n")
    else:
        write_rows_csv([SweepRow.from_outcome(axis_value, outcome)], stream)


def root_record(rate: float, result: RootResult | None) -> dict:
    if result is None:
        return {"rate": rate, "value": None}
    return {
        "rate": rate,
        "value": result.value,
        "bracket": list(result.bracket),
        "residual": result.residual,
        "iterations": result.iterations,
    }


def write_roots(rates: Sequence[float], results: Sequence[RootResult | None], stream: IO[str], output_format: str) -> None:
    if output_format == "json":
        json.dump([root_record(r, res) for r, res in zip(rates, results, strict=True)], stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("rate", "L", "lo", "hi"))
    for rate, result in zip(rates, results, strict=True):
        if result is None:
            writer.writerow((fmt(rate), "nan", "nan", "nan"))
        else:
            writer.writerow((fmt(rate), fmt(result.value), fmt(result.bracket[0]), fmt(result.bracket[1])))


# -----------------------------------------------------------------------------
# Figure panels
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Panel:
    """One plot: an abscissa and named series, each with a per-point error."""

    name: str
    title: str
    xlabel: str
    ylabel: str
    axis: tuple[float, ...]
    series: Mapping[str, Sequence[float]]
    errors: Mapping[str, Sequence[float]]
    dashed: tuple[str, ...] = ()

    @property
    def filename(self) -> str:
        return f"{self.name}.csv"

    @property
    def columns(self) -> list[str]:
        columns = ["axis"]
        for name in self.series:
            columns += [name, f"{name}_err"]
        return columns


def write_panel_csv(panel: Panel, directory: Path) -> Path:
    path = Path(directory) / panel.filename
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(panel.columns)
        for i, x in enumerate(panel.axis):
            record = [fmt(x)]
            for name, values in panel.series.items():
                record += [fmt(values[i]), fmt(panel.errors[name][i])]
            writer.writerow(record)
    logger.info("Wrote panel %s (%d rows)", path, len(panel.axis))
    return path


def read_panel_csv(path: Path) -> dict[str, list[float]]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        columns: dict[str, list[float]] = {name: [] for name in header}
        for record in reader:
            for name, cell in zip(header, record, strict=True):
                columns[name].append(float(cell))
    return columns


def gnuplot_script(title: str, panels: Sequence[Panel], output: str, *, columns: int = 3) -> str:
    """A multiplot script reading every panel CSV by relative path."""
    rows = math.ceil(len(panels) / columns)
    cmds = 'set term pdfcairo enhanced font "Helvetica,10" size %gin,%gin\n' % (3.2 * columns, 2.6 * rows)
    cmds += 'set output "%s"\n' % output
    cmds += "set datafile separator comma\n"
    cmds += "set key autotitle columnhead\n"
    cmds += 'set multiplot layout %d,%d title "%s"\n' % (rows, columns, title)
    for panel in panels:
        cmds += 'set title "%s"\n' % panel.title
        cmds += 'set xlabel "%s"\n' % panel.xlabel
        cmds += 'set ylabel "%s"\n' % panel.ylabel
        plots = []
        for i, name in enumerate(panel.series):
            dash = "dt 2" if name in panel.dashed else "dt 1"
            plots.append("'%s' u 1:%d t \"%s\" w l lw 2 %s" % (panel.filename, 2 + 2 * i, name, dash))
        cmds += "plot " + ", ".join(plots) + "\n"
    cmds += "unset multiplot\n"
    return cmds


def write_gnuplot(title: str, panels: Sequence[Panel], directory: Path, stem: str, *, columns: int = 3) -> Path:
    path = Path(directory) / f"{stem}.gp"
    path.write_text(gnuplot_script(title, panels, f"{stem}.pdf", columns=columns), encoding="utf-8")
    logger.info("Wrote gnuplot script %s", path)
    return path
