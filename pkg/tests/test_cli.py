import json
import subprocess
import sys

import pytest

from drinfeld_lab.cli import execute, main

CARLITZ = {"p": 3, "rank": 1, "coeffs": ["1"]}
RANK2 = {"p": 3, "rank": 2, "coeffs": ["T", "T+1"]}


@pytest.fixture
def configs(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return {
        "carlitz": write("carlitz.json", CARLITZ),
        "phi": write("phi.json", RANK2),
        "pair": write("pair.json", {"p": 3, "modules": [RANK2, RANK2]}),
        "write": write,
        "out": str(tmp_path / "out"),
    }


def load(out, name):
    with open(f"{out}/{name}.json") as fh:
        return json.load(fh)


def test_charpoly_of_carlitz_at_t(configs):
    assert main(["charpoly", "--config", configs["carlitz"], "--place", "T", "--out", configs["out"]]) == 0
    rep = load(configs["out"], "charpoly")
    assert rep["charpolys"][0]["trace"] == "T"
    assert rep["charpolys"][0]["verified"] is True


def test_scan_of_module_against_itself(configs):
    assert main(["scan", "--config", configs["pair"], "-D", "5", "--mode", "trace", "--out", configs["out"]]) == 0
    rep = load(configs["out"], "scan")
    assert rep["agreement"]["density"] == 1.0


def test_newton_in_small_characteristic_exits_1(configs, capsys):
    assert main(["newton", "-p", "3", "-n", "3", "--traces", "1,2,0", "--out", configs["out"]]) == 1
    assert "CharacteristicDivision" in capsys.readouterr().err


def test_newton_success(configs):
    assert main(["newton", "-p", "5", "-n", "2", "--traces", "2,2", "--out", configs["out"]]) == 0
    assert load(configs["out"], "newton")["elementary"] == [2, 1]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["scan", "--config", "/nonexistent/config.json"],
    ["scan", "-D", "notanint"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_json_reports_position(configs, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 3,\n "rank": }')
    assert main(["scan", "--config", str(bad), "-D", "2"]) == 1
    assert "line 2" in capsys.readouterr().err


def test_bad_reduction_place_exits_1(configs):
    cfg = configs["write"]("badmod.json", {"p": 3, "rank": 2, "coeffs": ["1", "1/T"]})
    assert main(["charpoly", "--config", cfg, "--place", "T", "--out", configs["out"]]) == 1


def test_cap_exceeded_exits_2(configs):
    argv = ["chebotarev", "--config", configs["phi"], "--ell", "T", "-D", "2",
            "--group-cap", "2", "--out", configs["out"]]
    assert main(argv) == 2


def test_twist_torsion_isogeny_density_smo(configs):
    out = configs["out"]
    phi = configs["phi"]
    assert main(["twist", "--config", phi, "--gamma", "T", "-D", "3", "--out", out]) == 0
    assert load(out, "twist")["agreement"]["character"]["decomposition_exact"] is True
    assert main(["torsion", "--config", phi, "--place", "T+2", "--ell", "T", "--out", out]) == 0
    assert load(out, "torsion")["torsion_cardinality"] == 9
    assert main(["isogeny", "--config", configs["pair"], "--tau-bound", "1", "--out", out]) == 0
    assert load(out, "isogeny")["isogeny"] == "1"
    assert main(["density", "--config", phi, "--gamma", "T", "-D", "4", "--out", out]) == 0
    assert main(["smo", "--config", phi, "--gamma", "T", "--ell", "T", "-D", "2", "--out", out]) == 0
    assert load(out, "smo")["smo"]["bases_aligned"] is True


def test_reports_are_byte_identical_across_runs(configs, tmp_path):
    outs = [str(tmp_path / "a"), str(tmp_path / "b")]
    for out in outs:
        assert main(["scan", "--config", configs["pair"], "-D", "3", "--out", out]) == 0
    for name in ("scan.json", "scan.csv"):
        assert open(f"{outs[0]}/{name}", "rb").read() == open(f"{outs[1]}/{name}", "rb").read()


def test_seed_precedence(configs, monkeypatch):
    base = ["scan", "--config", configs["pair"], "-D", "1", "--out", configs["out"]]
    assert execute(base)[0]["seed"] == 0
    assert execute(base + ["--seed", "7"])[0]["seed"] == 7
    monkeypatch.setenv("DRINFELD_LAB_SEED", "11")
    assert execute(base + ["--seed", "7"])[0]["seed"] == 11


def test_module_entry_point(configs):
    proc = subprocess.run(
        [sys.executable, "-m", "drinfeld_lab", "charpoly", "--config", configs["carlitz"],
         "--place", "T+1", "--out", configs["out"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert "charpoly.json" in proc.stdout
