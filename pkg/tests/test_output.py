import csv
import dataclasses
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from sishd.batch import run_batch
from sishd.config import with_overrides
from sishd.output import (
    SUMMARY_HEADER,
    TRAJECTORY_HEADER,
    chart_svg,
    emit_csv,
    emit_svg,
    reserve_column,
)
from sishd.svg import nice_ticks

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def small_batch(paper_scenarios):
    scenarios = with_overrides([paper_scenarios["A1"], paper_scenarios["B2"]], step=0.5, horizon=60.0)
    return run_batch(scenarios)


@pytest.fixture(scope="module")
def b2_full(paper_scenarios):
    s = paper_scenarios["B2"]
    return run_batch([dataclasses.replace(s, initials=s.initials[:1])])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_trajectory_csv_layout(small_batch, tmp_path):
    paths = emit_csv(small_batch, tmp_path)
    assert len(paths) == 11
    a = read_csv(tmp_path / "A1_IC1.csv")
    assert tuple(a[0]) == TRAJECTORY_HEADER  # no benefits, so no reserve columns
    assert len(a) - 1 == 121
    b = read_csv(tmp_path / "B2_IC3.csv")
    assert b[0] == list(TRAJECTORY_HEADER) + ["V_x0.9", "V_x1.0", "V_x1.1"]
    assert float(b[1][0]) == 0.0 and float(b[-1][0]) == 60.0
    assert [float(x) for x in b[1][1:5]] == [500.0, 250.0, 250.0, 0.0]
    assert float(b[-1][-2]) == 0.0


def test_csv_round_trips_floats(small_batch, tmp_path):
    emit_csv(small_batch, tmp_path)
    rows = read_csv(tmp_path / "B2_IC1.csv")[1:]
    traj = small_batch.row("B2", 0).trajectory
    got = np.array([[float(x) for x in r[1:5]] for r in rows])
    np.testing.assert_array_equal(got, traj.states)


def test_summary(small_batch, tmp_path):
    emit_csv(small_batch, tmp_path, trajectories=False)
    rows = read_csv(tmp_path / "summary.csv")
    assert tuple(rows[0]) == SUMMARY_HEADER
    assert len(rows) == 11
    a1 = dict(zip(SUMMARY_HEADER, rows[1]))
    assert a1["S_star"] == "" and a1["pi"] == "" and a1["dfe_stability"] == "LocallyStable"
    b2 = dict(zip(SUMMARY_HEADER, rows[6]))
    assert float(b2["R0"]) == pytest.approx(2.0, rel=0.01)
    assert float(b2["pi_star"]) >= float(b2["pi"])


def test_csv_byte_identical(small_batch, paper_scenarios, tmp_path):
    emit_csv(small_batch, tmp_path / "one")
    again = run_batch(list(small_batch.scenarios))
    emit_csv(again, tmp_path / "two")
    for name in ("summary.csv", "B2_IC4.csv", "A1_IC2.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_reserve_column_names():
    assert reserve_column(0.9) == "V_x0.9"
    assert reserve_column(1.0) == "V_x1.0"


@pytest.mark.parametrize("kind", ["trajectory", "reserve", "sensitivity"])
def test_svg_well_formed(small_batch, tmp_path, kind):
    path = emit_svg(small_batch, kind, tmp_path / "sub" / f"{kind}.svg", "B2")
    root = ET.parse(path).getroot()
    assert root.tag == SVG_NS + "svg"
    text = path.read_text()
    assert "(days)" in text or kind == "sensitivity"


def test_svg_deterministic(small_batch):
    assert chart_svg(small_batch, "trajectory", "B2", 1) == chart_svg(small_batch, "trajectory", "B2", 1)


def test_chart_errors(small_batch):
    with pytest.raises(ValueError, match="unknown chart kind"):
        chart_svg(small_batch, "pie", "B2")
    with pytest.raises(ValueError, match="no reserve series"):
        chart_svg(small_batch, "reserve", "A1")
    with pytest.raises(KeyError):
        chart_svg(small_batch, "trajectory", "Q7")


def test_sensitivity_bar_signs(small_batch):
    root = ET.fromstring(chart_svg(small_batch, "sensitivity", "B2"))
    fills = {}
    for rect in root.iter(SVG_NS + "rect"):
        title = rect.find(SVG_NS + "title")
        if title is not None:
            name, value = title.text.split(" = ")
            fills[name] = (rect.get("fill"), float(value))
    assert len(fills) == 9
    for name, (fill, value) in fills.items():
        assert (fill == "#1f77b4") == (value >= 0), name
    assert fills["β"][1] == pytest.approx(1.0)
    assert fills["γ_I"][0] == "#d62728"


def test_reserve_chart_touches_zero(b2_full):
    pr = b2_full.row("B2", 0).pricing
    v = pr.reserves[1.0]
    scale = pr.pi_star * b2_full.row("B2", 0).trajectory.cum_S[-1]
    assert v.min() >= -1e-6 * scale and abs(v[:-1]).min() < 1e-6 * scale
    assert pr.reserves[0.9].min() < 0
    svg = chart_svg(b2_full, "reserve", "B2")
    # The zero reference line is drawn because the 0.9 curve dips below zero.
    assert 'stroke-dasharray="4 3"' in svg
    assert len(re.findall("<polyline", svg)) == 3


def test_nice_ticks():
    assert nice_ticks(0, 100) == [0, 20, 40, 60, 80, 100]
    ticks = nice_ticks(-3.2, 7.9)
    assert ticks[0] >= -3.2 and ticks[-1] <= 7.9
    assert nice_ticks(5, 5)
