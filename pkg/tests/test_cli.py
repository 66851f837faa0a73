import json

import pytest
from click.testing import CliRunner

from zzreps import __version__
from zzreps.cli import main
from zzreps.io import load_report, parse_events


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sim(tmp_path, runner):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 25, "r": 0.15, "T": 3, "failure": {"center": [0.5, 0.5], "radius": 0.0,
                                                                        "growth": 0.1}}))
    adj = tmp_path / "adj.json"
    res = runner.invoke(main, ["simulate", "--config", str(cfg), "--seed", "3", "-o", str(adj)])
    assert res.exit_code == 0, res.output
    return adj


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and __version__ in res.output


def test_track_events_and_render(tmp_path, runner):
    ev = tmp_path / "ev.txt"
    ev.write_text("A 0\nA 1\nA 2\nA 0,1\nA 1,2\nA 0,2\n")
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["track", "--events", str(ev), "-o", str(out), "--svg", str(tmp_path / "r.svg")])
    assert res.exit_code == 0, res.output
    assert load_report(out).barcode.pairs(1) == [(1, 6, None)]
    assert (tmp_path / "r.svg").exists()

    res = runner.invoke(main, ["render", "--report", str(out), "--text"])
    assert res.exit_code == 0 and "[6, inf) dim=1" in res.output

    res = runner.invoke(main, ["oracle-check", "--report", str(out), "--events", str(ev)])
    assert res.exit_code == 0, res.output


def test_track_reports_bad_input(tmp_path, runner):
    ev = tmp_path / "ev.txt"
    ev.write_text("A 0\nR 0,1\n")
    res = runner.invoke(main, ["track", "--events", str(ev), "-o", str(tmp_path / "r.json")])
    assert res.exit_code != 0 and "step 2" in res.output
    ev.write_text("A 1,0\n")
    res = runner.invoke(main, ["track", "--events", str(ev), "-o", str(tmp_path / "r.json")])
    assert res.exit_code != 0 and "line 1" in res.output
    res = runner.invoke(main, ["track", "-o", str(tmp_path / "r.json")])
    assert res.exit_code == 2


def test_simulate_track_refine_check(tmp_path, runner, sim):
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["track", "--adjacency", str(sim), "--sizes", "--seed", "3", "-o", str(out),
                               "--text", str(tmp_path / "r.txt")])
    assert res.exit_code == 0, res.output
    report = load_report(out)
    assert report.seed == 3 and report.coarse is not None and len(report.coarse) == 3
    assert (tmp_path / "r.txt").read_text().startswith("#")

    ev = tmp_path / "ev.txt"
    res = runner.invoke(main, ["refine", "--adjacency", str(sim), "-o", str(ev)])
    assert res.exit_code == 0
    assert len(parse_events(ev)) == report.barcode.n_events

    res = runner.invoke(main, ["oracle-check", "--report", str(out), "--adjacency", str(sim)])
    assert res.exit_code == 0, res.output


def test_oracle_check_flags_tampered_report(tmp_path, runner):
    ev = tmp_path / "ev.txt"
    ev.write_text("A 0\nA 1\nA 2\nA 0,1\nA 1,2\nA 0,2\nA 0,1,2\n")
    out = tmp_path / "r.json"
    assert runner.invoke(main, ["track", "--events", str(ev), "-o", str(out)]).exit_code == 0
    data = json.loads(out.read_text())
    for iv in data["intervals"]:
        if iv["dim"] == 1:
            iv["death"] = None
    out.write_text(json.dumps(data))
    res = runner.invoke(main, ["oracle-check", "--report", str(out), "--events", str(ev)])
    assert res.exit_code == 1


def test_simulate_rejects_bad_config(tmp_path, runner):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": -1}))
    res = runner.invoke(main, ["simulate", "--config", str(cfg), "--seed", "0", "-o", str(tmp_path / "a.json")])
    assert res.exit_code != 0 and "bad config" in res.output
