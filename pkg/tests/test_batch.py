import dataclasses

import numpy as np
import pytest

from sishd.analysis import Stability
from sishd.batch import published_values, reproduce_tables, run_batch, run_one
from sishd.config import with_overrides
from sishd.model import State


@pytest.fixture(scope="module")
def b_batch(paper_scenarios):
    return run_batch([paper_scenarios[f"B{k}"] for k in range(1, 6)])


def test_a_batch_all_disease_free(paper_scenarios):
    scenarios = with_overrides([paper_scenarios[f"A{k}"] for k in range(1, 6)], step=0.5)
    result = run_batch(scenarios)
    assert len(result.rows) == 25 and not result.failures
    for row in result.rows:
        assert row.analysis.r0 < 1
        assert row.analysis.dfe_stability is Stability.LOCALLY_STABLE
        assert row.analysis.dee is None
        assert row.pricing is None  # A scenarios carry no benefits


def test_b_batch_equilibria(b_batch):
    pub = published_values()["T3"]["rows"]
    for row in b_batch.rows:
        a = row.analysis
        assert a.dfe_stability is Stability.UNSTABLE
        assert a.dee_stability is Stability.LOCALLY_STABLE
        ref = pub[row.scenario]
        np.testing.assert_allclose([a.dee.S, a.dee.I, a.dee.H], [ref["S*"], ref["I*"], ref["H*"]], rtol=5e-3)


def test_b_batch_premiums(b_batch):
    pub = published_values()["T5"]["pi"]
    assert len(b_batch.rows) == 25
    for row in b_batch.rows:
        expected = pub[row.scenario][f"IC{row.initial_index + 1}"]
        assert row.pricing.pi_zero_profit == pytest.approx(expected, rel=0.01)
        assert set(row.pricing.reserves) == {0.9, 1.0, 1.1}


def test_b_batch_provenance(b_batch):
    prov = b_batch.provenance()
    assert prov["step_sizes"] == [0.01]
    assert prov["death_benefit"] == "flow"
    assert len(prov["config_hash"]) == 64


def test_failure_does_not_abort(paper_scenarios):
    good = with_overrides([paper_scenarios["B1"]], step=1.0)[0]
    bad = dataclasses.replace(
        paper_scenarios["B5"],
        name="B5-coarse",
        initials=(State(400, 300, 300),),
        sim=dataclasses.replace(paper_scenarios["B5"].sim, step=60.0),
    )
    result = run_batch([bad, good])
    assert len(result.rows) == 6
    (failed,) = result.failures
    assert failed.scenario == "B5-coarse" and failed.error_kind == "numerical"
    assert failed.analysis is not None and failed.trajectory is None
    assert all(r.pricing is not None for r in result.rows if r.scenario == "B1")


def test_validation_failure_recorded(paper_scenarios):
    # A single-point S = 0 start makes the admissible-premium base degenerate.
    s = dataclasses.replace(paper_scenarios["B1"], initials=(State(0, 10, 10),))
    row = run_one(with_overrides([s], step=0.5)[0], 0)
    assert row.error_kind == "validation" and "S vanishes" in row.error


def test_ordering_deterministic(paper_scenarios):
    scenarios = with_overrides([paper_scenarios["B3"], paper_scenarios["B1"]], step=0.5, horizon=50.0)
    serial = run_batch(scenarios)
    parallel = run_batch(scenarios, workers=2)
    assert [r.label for r in serial.rows] == [f"B{n}/IC{k}" for n in (1, 3) for k in range(1, 6)]
    assert [r.label for r in parallel.rows] == [r.label for r in serial.rows]
    for a, b in zip(serial.rows, parallel.rows):
        np.testing.assert_array_equal(a.trajectory.states, b.trajectory.states)
        assert a.pricing.pi_star == b.pricing.pi_star


def test_row_lookup(b_batch):
    assert b_batch.row("B2", 0).label == "B2/IC1"
    with pytest.raises(KeyError):
        b_batch.row("Z9")
    assert b_batch.scenario("B4").name == "B4"


@pytest.mark.parametrize("which", ["T1", "T3"])
def test_reproduce_fast_tables(which):
    report = reproduce_tables(which)
    assert report.ok, report.to_text()
    assert report.to_csv().splitlines()[0].startswith("row,column,computed")


def test_reproduce_table_5():
    report = reproduce_tables("T5")
    assert len(report.cells) == 25
    assert report.ok and report.max_deviation < 1e-4
    assert report.provenance["step_sizes"] == [0.01]


def test_unknown_table():
    with pytest.raises(ValueError):
        reproduce_tables("T9")
