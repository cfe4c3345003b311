import json
import subprocess
import sys

import pytest

from germinv.cli import COMMANDS, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, SCHEMA, RunConfig, UsageError, fixture_names, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixtures_are_packaged():
    assert {"surface_cusps", "hypersurface_slice", "determinantal_slice", "crossing_slice", "crossing_suspension"} <= set(
        fixture_names()
    )


def test_cusps_on_surface_fixture(capsys):
    code, out, _ = run_cli(capsys, "cusps", "fixture:surface_cusps")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "ok"
    assert doc["schema"] == SCHEMA
    assert doc["results"][0]["value"] == 9
    assert "seconds" not in doc


def test_chern_reports_linear_and_eta(capsys):
    code, out, _ = run_cli(capsys, "chern", "fixture:surface_cusps", "--seed", "1")
    doc = json.loads(out)
    values = {r["name"]: r["value"] for r in doc["results"]}
    assert code == EXIT_OK
    assert values["chern_linear"] == 0
    assert values["chern_eta1"] == 9 and values["chern_eta2"] == 14


def test_identities_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "identities", "fixture:surface_cusps", "--seed", "2")
    _, second, _ = run_cli(capsys, "identities", "fixture:surface_cusps", "--seed", "2")
    assert first == second
    doc = json.loads(first)
    assert doc["identities"] and all(c["holds"] for c in doc["identities"])


def test_suspension_fixture(capsys):
    code, out, _ = run_cli(capsys, "suspension-check", "fixture:crossing_suspension")
    c = json.loads(out)["identities"][0]
    assert code == EXIT_OK and c["holds"] and c["left"] == 2


def test_infinite_values_serialise_as_strings(tmp_path, capsys):
    p = tmp_path / "line.problem"
    p.write_text("ring: x, y\nmap: x^2*y\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "milnor", str(p))
    assert code == EXIT_OK and json.loads(out)["results"][0]["value"] == "INFINITE"


def test_json_out_and_timing(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "tjurina", "fixture:crossing_slice", "--json-out", str(target), "--timing")
    assert code == EXIT_OK and out == ""
    assert "seconds" in json.loads(target.read_text())


def test_step_budget_exit_code(capsys):
    code, out, _ = run_cli(capsys, "cusps", "fixture:surface_cusps", "--step-budget", "5")
    assert code == EXIT_BUDGET
    assert json.loads(out)["status"] == "budget_exhausted"


@pytest.mark.parametrize(
    "text",
    ["ring: x, y\nmap: x + 1\n", "ring: x, y\nvariety: x + q\n", "ring: x\n"],
)
def test_bad_problems_exit_with_usage(tmp_path, capsys, text):
    p = tmp_path / "bad.problem"
    p.write_text(text, encoding="utf-8")
    code, out, err = run_cli(capsys, "cusps", str(p))
    assert code == EXIT_USAGE and out == ""
    assert err.startswith("germinv: error:")


def test_missing_inputs(capsys):
    assert run_cli(capsys, "cusps", "fixture:nope")[0] == EXIT_USAGE
    assert run_cli(capsys, "cusps", "/nonexistent.problem")[0] == EXIT_USAGE
    assert run_cli(capsys, "cusps", "fixture:surface_cusps", "--step-budget", "0")[0] == EXIT_USAGE


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(seed=2**70)
    with pytest.raises(UsageError):
        RunConfig(commands=["nope"])


FIXTURE_FOR = {"suspension-check": "crossing_suspension", "cusps": "surface_cusps", "chern-index": "surface_cusps"}


@pytest.mark.parametrize("command", [c for c in COMMANDS if c not in ("identities", "chern", "lcv-cm")])
def test_every_command_runs(capsys, command):
    fixture = "fixture:" + FIXTURE_FOR.get(command, "hypersurface_slice")
    code, out, _ = run_cli(capsys, command, fixture)
    assert code == EXIT_OK, out
    assert json.loads(out)["status"] == "ok"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "germinv", "milnor", "fixture:crossing_suspension"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "milnor"
