import json

import pytest

from sishd.cli import main
from sishd.config import bundled_config_path, dump_config, load_config, with_overrides


@pytest.fixture
def b1_only(tmp_path):
    scenarios = [s for s in load_config(bundled_config_path()) if s.name == "B1"]
    path = tmp_path / "b1.json"
    path.write_text(dump_config(with_overrides(scenarios, step=0.5, horizon=40.0)))
    return path


def test_analyze(capsys):
    assert main(["analyze", str(bundled_config_path())]) == 0
    out = capsys.readouterr().out
    assert "A1" in out and "Unstable" in out and "665.86" in out


def test_simulate_and_price(b1_only, tmp_path, capsys):
    assert main(["simulate", str(b1_only)]) == 0
    assert "B1/IC5" in capsys.readouterr().out
    assert main(["price", str(b1_only), "--out", str(tmp_path / "o")]) == 0
    out = capsys.readouterr().out
    assert "pi*" in out and "wrote 6 CSV" in out


def test_price_modes(b1_only, capsys):
    assert main(["price", str(b1_only), "--death-benefit-mode", "stock", "--interest", "0.001"]) == 0


def test_simulate_out_deterministic(b1_only, tmp_path):
    for d in ("a", "b"):
        assert main(["simulate", str(b1_only), "--out", str(tmp_path / d)]) == 0
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_tables_csv_deterministic(tmp_path, capsys):
    assert main(["tables", "T3", "--csv", str(tmp_path / "x.csv")]) == 0
    assert main(["tables", "T3", "--csv", str(tmp_path / "y.csv")]) == 0
    assert (tmp_path / "x.csv").read_bytes() == (tmp_path / "y.csv").read_bytes()
    assert "all within tolerance" in capsys.readouterr().out


def test_tables_deviation_exit_code(tmp_path, capsys):
    scenarios = load_config(bundled_config_path())
    raw = json.loads(dump_config(scenarios))
    for s in raw["scenarios"]:
        if s["name"] == "A2":
            s["params"]["beta"] *= 1.1
    path = tmp_path / "shifted.json"
    path.write_text(json.dumps(raw))
    assert main(["tables", "T1", "--config", str(path)]) == 3
    assert "OUT OF TOLERANCE" in capsys.readouterr().out


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"scenarios": []}')
    assert main(["analyze", str(bad)]) == 1
    assert "no scenarios" in capsys.readouterr().err
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1


def test_numerical_failure_exit_code(b1_only, capsys):
    assert main(["simulate", str(b1_only), "--step", "60", "--horizon", "365"]) == 2
    assert "ERROR" in capsys.readouterr().out


def test_chart(tmp_path, capsys):
    out = tmp_path / "c.svg"
    assert main(["chart", "reserve", "B2", str(out), "--step", "0.5"]) == 0
    assert out.read_text().startswith("<svg")
    assert main(["chart", "sensitivity", "B4", str(tmp_path / "s.svg"), "--horizon", "1"]) == 0
    assert main(["chart", "reserve", "A1", str(tmp_path / "r.svg"), "--step", "0.5"]) == 1
    assert main(["chart", "trajectory", "ZZ", str(tmp_path / "z.svg")]) == 1
    assert main(["chart", "trajectory", "B1", str(tmp_path / "z.svg"), "--initial", "9"]) == 1


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["chart", "pie", "B1", "x.svg"])
    assert exc.value.code == 2
