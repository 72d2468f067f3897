"""CSV, JSON and gnuplot output."""

import io
import json
import math

from harvesting.analysis import RootResult, SweepRow
from harvesting.exporters import (
    CSV_HEADER,
    Panel,
    gnuplot_script,
    read_panel_csv,
    read_rows_csv,
    write_gnuplot,
    write_panel_csv,
    write_roots,
    write_rows_csv,
    write_rows_json,
)


def _rows():
    return [
        SweepRow(0.1 + 0.2, 1 / 3, 2 / 3, 1e-300, 5e-17),
        SweepRow(1.0, math.pi, math.e, 0.0, 0.0),
        SweepRow.sentinel(2.0),
    ]


def _panel(name="fig9a"):
    return Panel(
        name=name,
        title="(a) test",
        xlabel="L",
        ylabel="C",
        axis=(0.5, 1.0),
        series={"parallel": [0.1, 0.2], "vacuum": [0.3, 0.4]},
        errors={"parallel": [1e-9, 1e-9], "vacuum": [0.0, 0.0]},
        dashed=("vacuum",),
    )


# -----------------------------------------------------------------------------
# Sweep rows
# -----------------------------------------------------------------------------


class TestRowsCsv:
    def test_header_and_line_endings(self):
        stream = io.StringIO()
        assert write_rows_csv(_rows(), stream) == 3
        text = stream.getvalue()
        assert text.splitlines()[0] == ",".join(CSV_HEADER)
        assert "\r" not in text
        assert text.endswith("\n")

    def test_floats_read_back_bit_exact(self):
        stream = io.StringIO()
        write_rows_csv(_rows()[:2], stream)
        stream.seek(0)
        assert read_rows_csv(stream) == _rows()[:2]

    def test_sentinel_row(self):
        stream = io.StringIO()
        write_rows_csv(_rows()[2:], stream)
        stream.seek(0)
        (row,) = read_rows_csv(stream)
        assert math.isnan(row.p)
        assert row.failed


class TestRowsJson:
    def test_non_finite_values_become_null(self):
        stream = io.StringIO()
        write_rows_json(_rows(), stream)
        records = json.loads(stream.getvalue())
        assert records[0]["axis"] == 0.1 + 0.2
        assert records[2]["P"] is None
        assert records[2]["err"] is None


class TestRoots:
    def test_csv_marks_missing_roots(self):
        stream = io.StringIO()
        write_roots([1.0, 2.0], [RootResult(3.25, (3.2, 3.3), 1e-9, 7), None], stream, "csv")
        lines = stream.getvalue().splitlines()
        assert lines[0] == "rate,L,lo,hi"
        assert lines[1] == "1,3.25,3.2000000000000002,3.2999999999999998"
        assert lines[2] == "2,nan,nan,nan"

    def test_json_keeps_the_bracket(self):
        stream = io.StringIO()
        write_roots([1.0], [RootResult(3.25, (3.2, 3.3), 1e-9, 7)], stream, "json")
        (record,) = json.loads(stream.getvalue())
        assert record["bracket"] == [3.2, 3.3]
        assert record["iterations"] == 7


# -----------------------------------------------------------------------------
# Figure panels
# -----------------------------------------------------------------------------


class TestPanels:
    def test_panel_csv_columns(self, tmp_path):
        path = write_panel_csv(_panel(), tmp_path)
        assert path.name == "fig9a.csv"
        columns = read_panel_csv(path)
        assert list(columns) == ["axis", "parallel", "parallel_err", "vacuum", "vacuum_err"]
        assert columns["vacuum"] == [0.3, 0.4]

    def test_gnuplot_script_uses_relative_paths(self, tmp_path):
        panels = [_panel("fig9a"), _panel("fig9b")]
        path = write_gnuplot("Test figure", panels, tmp_path, "fig9", columns=2)
        script = path.read_text(encoding="utf-8")
        assert path.name == "fig9.gp"
        assert str(tmp_path) not in script
        assert "'fig9a.csv' u 1:2" in script
        assert "'fig9b.csv' u 1:4" in script
        assert 'set output "fig9.pdf"' in script
        assert "set multiplot layout 1,2" in script

    def test_dashed_series(self):
        script = gnuplot_script("t", [_panel()], "out.pdf")
        assert 't "vacuum" w l lw 2 dt 2' in script
        assert 't "parallel" w l lw 2 dt 1' in script
