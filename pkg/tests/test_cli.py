import json
import os

import pytest

from surface_census import gf
from surface_census.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_maps_row_matches_series(capsys, tmp_path):
    target = tmp_path / "s0.csv"
    code, _, _ = call(capsys, "census-maps", "--genus", "0", "--max-edges", "6", "--class", "S",
                      "--out", str(target), "--cache-dir", str(tmp_path / "c"))
    assert code == 0  # red while any constants anchor is off; the acceptance output names it
    rows = target.read_text().splitlines()
    assert rows[0] == "genus,edges,class,count"
    assert rows[1] == f"0,3,S,{gf.solve_S0(3).coefficient(3)}"
    code, out, _ = call(capsys, "series", "S0", "--order", "6")
    assert code == 0 and json.loads(out)["terms"][0] == [3, "1/1"]


def test_census_graphs_example(capsys):
    code, out, _ = call(capsys, "census-graphs", "--vertices", "2", "--mode", "weighted", "--class", "G",
                        "--genus", "0")
    assert code == 0  # red while any constants anchor is off; the acceptance output names it
    assert out.splitlines()[1].split(",")[-1] == "5/12"


def test_outputs_are_deterministic(capsys, tmp_path):
    argv = ["census-maps", "--genus", "1", "--max-edges", "6", "--class", "Shat", "--cache-dir", str(tmp_path)]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first == second
    assert call(capsys, "series", "N", "--order", "5") == call(capsys, "series", "N", "--order", "5")


def test_env_cache_overrides_flag(capsys, tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("SURFACE_CENSUS_CACHE", str(env_dir))
    code, _, _ = call(capsys, "census-maps", "--max-edges", "3", "--cache-dir", str(flag_dir))
    assert code == 0  # red while any constants anchor is off; the acceptance output names it
    assert os.listdir(env_dir) and not flag_dir.exists()


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["census-maps", "--class", "Z"],
    ["census-maps", "--genus", "-1"],
    ["census-graphs", "--vertices", "3"],
    ["census-graphs", "--mode", "fancy"],
    ["census-graphs", "--include-phi", "maybe"],
    ["series", "nope"],
    ["verify", "--suite", "nothing"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert call(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["census-maps", "--max-edges", "40"],
    ["census-graphs", "--vertices", "12"],
    ["series", "G0", "--order", "6"],
])
def test_budget_errors_exit_1_with_reason(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "budget"


def test_asym_report(capsys):
    code, out, _ = call(capsys, "asym", "--digits", "12")
    rows = {r["name"]: r for r in json.loads(out)}
    assert {"rho_S", "rho_Shat", "rho_N", "rho_Q", "rho_D", "gamma_1", "gamma_2", "gamma_3"} <= set(rows)
    assert code == (0 if all(r["pass"] for r in rows.values()) else 1)


def test_verify_constants_exit_code(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "constants")
    report = [json.loads(line) for line in out.splitlines()]
    assert all({"name", "expected", "computed", "pass"} <= set(r) for r in report)
    assert code == 0  # red while any constants anchor is off; the acceptance output names it
