import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from orlicz.cli import main

GOLDEN = Path(__file__).parent / "golden"

NORM_ARGS = ["norm", "--phi", '{"kind":"power","p":2}', "--f", '{"kind":"simple","cells":[{"measure":2,"value":1}]}']


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# -- golden reports -------------------------------------------------------------


@pytest.mark.parametrize("argv, golden, code", [
    (NORM_ARGS, "norm.json", 0),
    (["min-constant", "--phi", "power:2", "--psi", "power:2"], "min_constant.json", 0),
    (["check-inclusion", "--phi", "power:2", "--psi", "power:1"], "check_inclusion.json", 1),
])
def test_golden(capsys, argv, golden, code):
    got_code, out = run(capsys, *argv)
    assert got_code == code
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_golden_values_are_right():
    norm = json.loads((GOLDEN / "norm.json").read_text())
    assert abs(norm["value"] - math.sqrt(2)) < 1e-9
    mc = json.loads((GOLDEN / "min_constant.json").read_text())
    assert mc["C"] == 1.0
    ci = json.loads((GOLDEN / "check_inclusion.json").read_text())
    assert ci["status"] == "fails"
    assert all(s["holds"] is False for s in ci["statements"].values())


def test_module_entry_point_and_numpy_backend():
    env = {**os.environ, "ORLICZ_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-m", "orlicz", *NORM_ARGS], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout == (GOLDEN / "norm.json").read_text(encoding="utf-8")


# -- other subcommands ------------------------------------------------------------


def test_eval_and_inverse(capsys):
    code, out = run(capsys, "eval", "--phi", "power:2", "--t", "0", "3")
    assert code == 0
    assert [v["value"] for v in json.loads(out)["values"]] == [0.0, 9.0]
    code, out = run(capsys, "inverse", "--phi", "power:2", "--s", "9")
    assert code == 0 and json.loads(out)["values"][0]["value"] == pytest.approx(3.0, rel=1e-9)


def test_weak_norm_of_radial_witness(capsys):
    f = '{"kind":"radial_power","c":1,"alpha":0.5,"dim":1,"support":"global"}'
    code, out = run(capsys, "weak-norm", "--phi", "power:2", "--f", f)
    assert code == 0 and json.loads(out)["value"] == pytest.approx(math.sqrt(2), abs=1e-6)
    code, out = run(capsys, "norm", "--phi", "power:2", "--f", f)
    doc = json.loads(out)
    assert code == 0 and doc["value"] is None and doc["infinite"] is True


def test_min_constant_none(capsys):
    code, out = run(capsys, "min-constant", "--phi", "power:2", "--psi", "power:1")
    doc = json.loads(out)
    assert code == 1 and doc["C"] is None and doc["probe"]["verdict"] == "fails"


def test_check_inclusion_holds(capsys):
    psi = '{"kind":"val_scale","c":0.25,"inner":{"kind":"power","p":2}}'
    code, out = run(capsys, "check-inclusion", "--phi", "power:2", "--psi", psi, "--samples", "40")
    doc = json.loads(out)
    assert code == 0 and doc["C"] == pytest.approx(2.0, abs=1e-6)


def test_product_bound(capsys):
    f = '{"kind":"simple","cells":[{"measure":1,"value":2}]}'
    g = '{"kind":"simple","cells":[{"measure":1,"value":3}]}'
    code, out = run(capsys, "product-bound", "--f", f, "--g", g,
                    "--phi1", "power:2", "--phi2", "power:2", "--phi3", "power:1")
    doc = json.loads(out)
    assert code == 0 and doc["ratio"] == pytest.approx(1.0)
    code, out = run(capsys, "product-bound", "--f", f, "--g", g,
                    "--phi1", "power:2", "--phi2", "power:2", "--phi3", "power:2")
    assert code == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out = run(capsys, *NORM_ARGS, "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "norm.json").read_text()


def test_file_inputs(capsys, tmp_path):
    (tmp_path / "phi.json").write_text('{"kind":"power","p":2}')
    code, out = run(capsys, "eval", "--phi", f"@{tmp_path / 'phi.json'}", "--t", "2")
    assert code == 0 and json.loads(out)["values"][0]["value"] == 4.0


# -- errors and configuration ----------------------------------------------------------


@pytest.mark.parametrize("argv, field", [
    (["eval", "--phi", '{"kind":"power","p":-1}', "--t", "1"], "phi.p"),
    (["eval", "--phi", '{"kind":"power","p":2', "--t", "1"], "phi"),
    (["eval", "--phi", "power:2", "--t", "-1"], "t"),
    (["norm", "--phi", "power:2", "--f", '{"kind":"simple","cells":[{"measure":0,"value":1}]}'], "f.cells[0].measure"),
    (["norm", "--phi", "power:2", "--f", '{"kind":"simple","cells":[]}'], "f.cells"),
    (["eval", "--phi", "@/nonexistent/phi.json", "--t", "1"], "phi"),
    (["verify", "--only", "L9.9"], "only"),
    (["eval", "--phi", "power:2", "--t", "1", "--rel-tol", "-1"], "config"),
])
def test_input_errors(capsys, argv, field):
    code, out = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 2
    assert doc["field"] == field and doc["error"]


def test_argparse_errors_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["eval", "--phi", "power:2"]) == 2


def test_config_env_and_flag_override(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grid_points": 129, "grid_range": [1e-3, 1e3]}))
    monkeypatch.setenv("ORLICZ_CONFIG", str(cfg))
    code, out = run(capsys, "min-constant", "--phi", "power:2", "--psi", "power:2")
    grid = json.loads(out)["certificate"]["grid"]
    assert code == 0 and grid == {"t_min": 0.001, "t_max": 1000.0, "count": 129}
    code, out = run(capsys, "min-constant", "--phi", "power:2", "--psi", "power:2", "--grid-points", "65")
    assert json.loads(out)["certificate"]["grid"]["count"] == 65


def test_bad_config_file(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    monkeypatch.setenv("ORLICZ_CONFIG", str(cfg))
    code, out = run(capsys, "eval", "--phi", "power:2", "--t", "1")
    assert code == 2 and json.loads(out)["field"] == "config"


def test_nonconvergent_is_exit_3(capsys):
    code, out = run(capsys, *NORM_ARGS, "--max-iter", "3")
    assert code == 3 and json.loads(out)["converged"] is False
