import math

import numpy as np

from oddeven import __version__
from oddeven.utils.output import format_cell, read_csv, write_columns, write_csv, write_json, write_svg_plot


def test_csv_carries_version_and_config_hash(tmp_path):
    path = write_csv(
        tmp_path / "out" / "table.csv",
        ["gamma", "eta", "flag"],
        [{"gamma": 0.1, "eta": math.inf, "flag": "pure-even"}, {"gamma": np.float64(0.2), "eta": 0.5, "flag": "ok"}],
        config_hash="abc123def456",
    )

    comment, rows = read_csv(path)

    assert comment == f"# oddeven {__version__} config=abc123def456"
    assert rows == [
        {"gamma": "0.1", "eta": "inf", "flag": "pure-even"},
        {"gamma": "0.2", "eta": "0.5", "flag": "ok"},
    ]
    assert b"\r\n" not in path.read_bytes()


def test_columns_are_written_in_order(tmp_path):
    path = write_columns(
        tmp_path / "spectrum.csv",
        {"order": np.array([0.0, 0.5, 1.0]), "intensity": np.array([1e-30, 2.0, math.nan])},
        config_hash="0" * 12,
    )

    _, rows = read_csv(path)

    assert list(rows[0]) == ["order", "intensity"]
    assert [row["intensity"] for row in rows] == ["1e-30", "2", "nan"]


def test_csv_output_is_deterministic(tmp_path):
    rows = [{"x": i / 7, "y": np.exp(i)} for i in range(20)]

    first = write_csv(tmp_path / "a.csv", ["x", "y"], rows, config_hash="h")
    second = write_csv(tmp_path / "b.csv", ["x", "y"], rows, config_hash="h")

    assert first.read_bytes() == second.read_bytes()


def test_format_cell():
    assert format_cell(True) == "true"
    assert format_cell(np.int64(7)) == 7
    assert format_cell(1 / 3) == "0.333333333333"
    assert format_cell(-math.inf) == "-inf"
    assert format_cell(None) == ""


def test_json_reports_are_canonical(tmp_path):
    path = write_json(tmp_path / "report.json", {"b": 1, "a": [math.inf, np.float64(2.0)]})

    assert path.read_text(encoding="utf-8") == '{\n  "a": [\n    "inf",\n    2.0\n  ],\n  "b": 1\n}\n'


def test_svg_plots_are_byte_identical(tmp_path):
    x = np.linspace(0, 10, 200)
    y = np.exp(-x) * (1 + np.cos(3 * x))

    first = write_svg_plot(tmp_path / "a.svg", x, y, xlabel="order", ylabel="intensity", log_y=True)
    second = write_svg_plot(tmp_path / "b.svg", x, y, xlabel="order", ylabel="intensity", log_y=True)

    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").lstrip().startswith("<?xml")


def test_svg_plot_with_several_series(tmp_path):
    x = np.linspace(0, 1, 10)

    path = write_svg_plot(tmp_path / "c.svg", x, {"first": x, "second": x**2}, xlabel="gamma", ylabel="eta")

    text = path.read_text(encoding="utf-8")
    assert "first" in text
    assert "second" in text
