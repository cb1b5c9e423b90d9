import json
import subprocess
import sys

import pytest

from blochkit.cli import JobSpec, main, render, run
from blochkit.schema import SchemaError


def _write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def _run(tmp_path, *args):
    out = tmp_path / "out.txt"
    code = main([*args, "--output", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_norm_logtest(tmp_path):
    code, text = _run(tmp_path, "norm", "--input", _write(tmp_path, {"kind": "logtest", "theta": 0}))
    assert code == 0
    rep = json.loads(text)
    assert rep["result"]["bloch_norm"] == pytest.approx(1, abs=1e-3)
    assert rep["version"] == "0.1.0" and rep["grid"]["angles_per_ring"] == 512


def test_spectrum_rotation(tmp_path):
    spec = {"kind": "composition", "phi": {"kind": "rotation", "p": 1, "q": 4}}
    code, text = _run(tmp_path, "spectrum", "--input", _write(tmp_path, spec))
    res = json.loads(text)["result"]["spectrum"]
    assert code == 0 and res["variant"] == "finite_set"
    pts = [complex(*p) for p in res["points"]]
    assert pts == pytest.approx([1j, -1, -1j, 1], abs=1e-15)


def test_bounds_csv(tmp_path):
    spec = {"kind": "multiplication", "psi": {"kind": "const", "c": [0.5, 0]}}
    code, text = _run(tmp_path, "bounds", "--input", _write(tmp_path, spec), "--format", "csv")
    rows = dict(line.split(",", 1) for line in text.strip().splitlines()[1:])
    assert code == 0 and float(rows["result.lower"]) == 0.5 and float(rows["result.upper"]) == 0.5


def test_determinism(tmp_path):
    spec = _write(tmp_path, {"kind": "weighted", "psi": {"kind": "identity"},
                             "phi": {"kind": "scale", "c": [0.5, 0], "inner": {"kind": "identity"}}})
    a = _run(tmp_path, "bounds", "--input", spec, "--angles", "64")[1]
    b = _run(tmp_path, "bounds", "--input", spec, "--angles", "64")[1]
    assert a == b and json.loads(a)["grid"]["angles_per_ring"] == 64


def test_isometry_and_resolvent(tmp_path):
    code, text = _run(tmp_path, "check-isometry", "--input",
                      _write(tmp_path, {"kind": "multiplication", "psi": {"kind": "const", "c": [0, 1]}}))
    assert code == 0 and json.loads(text)["result"]["is_isometry"] is True
    spec = {"rotation": {"p": 1, "q": 2}, "mu": [3, 0], "g": {"kind": "identity"}}
    code, text = _run(tmp_path, "resolvent", "--input", _write(tmp_path, spec))
    assert code == 0 and json.loads(text)["result"]["residual"] < 1e-12


def test_exit_codes(tmp_path, capsys):
    assert main(["norm", "--input", _write(tmp_path, {"kind": "const"})]) == 2
    assert capsys.readouterr().err.startswith("blochkit-error validation SchemaError")
    assert main(["norm"]) == 2
    assert main(["norm", "--input", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    pole = {"kind": "reciprocal_shift", "inner": {"kind": "identity"}, "lambda": [0.5, 0]}
    assert main(["norm", "--input", _write(tmp_path, pole)]) == 3
    err = capsys.readouterr().err
    assert err.startswith("blochkit-error numerical PoleError") and err.count("\n") == 1
    sing = {"rotation": {"p": 1, "q": 4}, "mu": [0, 1], "g": {"kind": "identity"}}
    assert main(["resolvent", "--input", _write(tmp_path, sing)]) == 2


def test_overflow_exit(tmp_path):
    spec = {"kind": "composition", "phi": {"kind": "const", "c": [0.9999999999999, 0]}}
    assert main(["bounds", "--input", _write(tmp_path, spec)]) == 3


def test_jobspec_validation():
    with pytest.raises(SchemaError):
        JobSpec("norm").validate()
    with pytest.raises(SchemaError):
        JobSpec("norm", {}, format="xml").validate()


def test_verify_suite_table(monkeypatch):
    from blochkit import cli
    from blochkit.suite import CheckResult

    monkeypatch.setattr(cli, "run_suite", lambda grid, seed: [CheckResult("a", True, "ok"),
                                                              CheckResult("b", False, "bad")])
    code, report = run(JobSpec("verify-suite"))
    assert code == 1
    assert render(report, "csv").splitlines() == ["name,passed,detail", "a,True,ok", "b,False,bad"]


def test_console_entry_point(tmp_path):
    spec = _write(tmp_path, {"kind": "identity"})
    proc = subprocess.run([sys.executable, "-m", "blochkit.cli", "norm", "--input", spec, "--angles", "32"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["bloch_norm"] == pytest.approx(1, abs=1e-9)
