import json
import subprocess
import sys

import pytest

from effmod.cli import main
from effmod.scenarios import run_scenario


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "effmod.cli", *args], capture_output=True, text=True)


def test_json_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "example1", "--format", "json", "--out", str(a)]) == 0
    assert main(["run", "example1", "--format", "json", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["passed"] and data["scenario"] == "example1" and "duration_seconds" not in data
    assert list(data) == sorted(data)


def test_timing_flag_adds_duration(capsys):
    assert main(["run", "example1", "--format", "json", "--timing"]) == 0
    assert "duration_seconds" in json.loads(capsys.readouterr().out)


def test_exit_status_reflects_failures(monkeypatch, capsys):
    import effmod.scenarios as sc

    def failing(**_):
        rep = sc.ScenarioReport("example1", 3, {})
        rep.check("forced", False)
        return rep

    monkeypatch.setitem(sc.RUNNERS, "example1", failing)
    assert main(["run", "example1"]) == 1
    assert "[FAIL] forced" in capsys.readouterr().out


def test_bad_parameters():
    r = run_cli("run", "example1", "--p", "2")
    assert r.returncode == 2 and "odd prime" in r.stderr
    r = run_cli("run", "example2", "--n1", "0")
    assert r.returncode == 2
    r = run_cli("run", "example1", "--p", "4")
    assert r.returncode == 2


def test_closure_stage_command(capsys):
    assert main(["closure-stage", "--f", "t", "--n", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"]
    names = [c["name"] for c in data["checks"]]
    assert "transition x2 -> t*x1 is well defined" in names
    assert main(["closure-stage", "--f", "0", "--n", "1"]) == 2


def test_closure_stage_with_rules(capsys):
    assert main(["closure-stage", "--gens", "u", "--rule", "u=t*u", "--f", "t*u", "--n", "1"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_univ_inj_command(capsys):
    assert main(["univ-inj", "--matrix", "1,0;0,t", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    cond = data["checks"][0]["witness"]["conditions"]
    assert cond == {"(1)": False, "(2)": False, "(3)": False}
    assert main(["univ-inj", "--matrix", "1,0;0,1;0,0", "--family", "1,0", "--family", "0,1"]) == 0
    out = capsys.readouterr().out
    assert '"(2)": true' in out and "(4) evaluated" in out


def test_seed_controls_sampling(monkeypatch):
    monkeypatch.setenv("EFFMOD_SEED", "5")
    rep = run_scenario("witt-props", samples=5, primes=(3,))
    assert rep.params["seed"] == 5 and rep.passed


@pytest.mark.parametrize("name", ["example1", "counterexample"])
def test_text_and_json_agree(name):
    rep = run_scenario(name)
    data = json.loads(rep.to_json())
    assert data["passed"] == rep.passed
    assert rep.to_text().count("[PASS]") == len(data["checks"])
