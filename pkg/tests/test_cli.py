import csv
import io as stdio
import json
import subprocess
import sys

import numpy as np
import pytest

from btoplab import io
from btoplab.catalog import case2
from btoplab.cli import main, parse_source, thread_count, UsageError
from btoplab.symbol import LaurentMatrixSymbol as L


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    return {
        "case2": write(tmp_path / "case2.json", io.symbol_to_json(case2().phi)),
        "case2_q": write(tmp_path / "case2_q.json", io.potapov_to_json(case2().Q)),
        "unitary": write(tmp_path / "cu.json",
                         io.symbol_to_json(L.constant(np.array([[0, 1], [1j, 0]])))),
        "c2": write(tmp_path / "sc.json", io.symbol_to_json(L.scalar({1: 1, -1: 2}))),
        "dup": write(tmp_path / "dup.json",
                     {"n": 1, "coeffs": [{"k": 0, "re": [[1]]}, {"k": 0, "re": [[1]]}]}),
        "dir": tmp_path,
    }


# -- analyze ----------------------------------------------------------

def test_analyze_case2(files, capsys):
    code, out, _ = run(["analyze", files["case2"], "--kmax", "2"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"] == "subnormal-evidence"
    assert rep["normal_operator"] is False and rep["analytic"] is False
    assert rep["config"]["k_max"] == 2


def test_analyze_with_potapov(files, capsys):
    code, out, _ = run(["analyze", files["case2"], "--potapov", files["case2_q"]], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["case"] == "case2" and rep["dim_model_space"] == 2


def test_analyze_constant_unitary_and_scalar(files, capsys):
    assert json.loads(run(["analyze", files["unitary"]], capsys)[1])["verdict"] == "normal"
    rep = json.loads(run(["analyze", files["c2"]], capsys)[1])
    assert rep["verdict"] == "not-hyponormal" and rep["min_eigenvalue"] == -3.0


def test_analyze_exit_codes(files, capsys):
    code, _, err = run(["analyze", files["dup"]], capsys)
    assert code == 2 and "duplicate" in err
    code, _, _ = run(["analyze", str(files["dir"] / "nope.json")], capsys)
    assert code == 2
    # Phi != Q Phi^* is a precondition failure
    q = write(files["dir"] / "id.json", {"v": [[1, 0], [0, 1]], "factors": []})
    code, _, err = run(["analyze", files["case2"], "--potapov", q], capsys)
    assert code == 3 and "precondition" in err


def test_analyze_csv_and_out(files, capsys):
    out_path = files["dir"] / "rep.csv"
    code, out, _ = run(["analyze", files["c2"], "--format", "csv", "--out", str(out_path)],
                       capsys)
    assert code == 0 and out == ""
    rows = dict(list(csv.reader(out_path.open()))[1:])
    assert rows["verdict"] == '"not-hyponormal"'
    assert rows["config.grid"] == "512"


# -- configuration ----------------------------------------------------

def test_config_file_and_flag_precedence(files, capsys):
    cfg = write(files["dir"] / "run.json", {"k_max": 2, "grid": 64})
    code, out, _ = run(["analyze", files["c2"], "--config", cfg, "--grid", "128"], capsys)
    rep = json.loads(out)
    assert rep["config"]["k_max"] == 2 and rep["config"]["grid"] == 128


def test_bad_config(files, capsys):
    cfg = write(files["dir"] / "bad.json", {"k_max": 0})
    assert run(["analyze", files["c2"], "--config", cfg], capsys)[0] == 2
    assert run(["analyze", files["c2"], "--kmax", "-1"], capsys)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


# -- verify -----------------------------------------------------------

def test_verify_33_random(capsys):
    code, out, _ = run(["verify", "3.3", "--source", "random:7,50"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 50 and data["all_passed"]


def test_verify_32_case2(capsys):
    code, out, _ = run(["verify", "3.2", "--source", "catalog:case2"], capsys)
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["dims"] == [1, 1] and row["value"] < 1e-6


def test_verify_11_random(capsys):
    code, out, _ = run(["verify", "1.1", "--source", "random:1,100"], capsys)
    data = json.loads(out)
    assert code == 0 and max(r["value"] for r in data["rows"]) < 1e-10


def test_verify_31_csv(capsys):
    code, out, _ = run(["verify", "3.1", "--source", "random:2,5", "--format", "csv"], capsys)
    rows = list(csv.reader(stdio.StringIO(out)))
    assert code == 0 and rows[0] == ["instance", "metric", "value", "passed"] and len(rows) == 6


def test_verify_failure_exit_1(capsys, monkeypatch):
    import btoplab.cli as cli
    monkeypatch.setattr(cli, "IDENTITY_TOL", 0.0)  # no deviation is below zero
    code, out, err = run(["verify", "1.1", "--source", "random:1,3"], capsys)
    assert code == 1 and json.loads(out)["all_passed"] is False
    assert "failed" in err


def test_catalog_failure_exit_1(capsys, monkeypatch):
    import btoplab.cli as cli
    monkeypatch.setattr(cli, "run_entry", lambda e, cfg: {
        "id": e.id, "report": {"verdict": "x"}, "checks": [{"name": "c", "passed": False}],
        "all_checks_passed": False})
    code, _, err = run(["catalog", "case2"], capsys)
    assert code == 1 and "check c failed" in err


def test_verify_errors(capsys):
    assert run(["verify", "2.7", "--source", "random:1,1"], capsys)[0] == 2
    assert run(["verify", "3.3", "--source", "catalog:nope"], capsys)[0] == 2
    assert run(["verify", "3.3", "--source", "random:x"], capsys)[0] == 2
    # case3 has a normal symbol, so the rank bound applies even without bounded type
    assert run(["verify", "3.3", "--source", "catalog:case3"], capsys)[0] == 0


def test_parse_source():
    assert parse_source("random:3,4") == ("random", (3, 4))
    assert parse_source("catalog:case2") == ("catalog", "case2")
    with pytest.raises(UsageError):
        parse_source("random:-1,2")


# -- catalog ----------------------------------------------------------

def test_catalog_single_entry(capsys):
    code, out, _ = run(["catalog", "case2"], capsys)
    data = json.loads(out)
    assert code == 0 and [e["id"] for e in data["entries"]] == ["case2"]
    assert data["entries"][0]["report"]["verdict"] == "subnormal-evidence"


def test_catalog_scalar_c(capsys):
    code, out, _ = run(["catalog", "scalar-czbar", "--c", "0.5"], capsys)
    entry = json.loads(out)["entries"][0]
    rep = entry["report"]
    assert code == 0 and rep["hyponormal"] and not rep["normal_operator"]
    assert rep["qphi_residual"] < 1e-12
    assert len(entry["q_zeros"]) == 2
    assert run(["catalog", "scalar-czbar", "--c", "2"], capsys)[0] == 3
    assert run(["catalog", "scalar-czbar", "--c", "abc"], capsys)[0] == 2
    assert run(["catalog", "case2", "--c", "0.5"], capsys)[0] == 2
    assert run(["catalog", "case7"], capsys)[0] == 2


def test_catalog_csv(capsys):
    code, out, _ = run(["catalog", "case2", "--format", "csv"], capsys)
    rows = list(csv.reader(stdio.StringIO(out)))
    assert rows[0] == ["id", "check", "passed"]
    assert all(r[2] == "True" for r in rows[1:])


def test_threads_env(monkeypatch):
    monkeypatch.setenv("BTOP_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("BTOP_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("BTOP_THREADS", "many")
    with pytest.raises(UsageError):
        thread_count()


def test_parallel_and_serial_agree(monkeypatch, capsys):
    from btoplab.cli import run_catalog
    from btoplab.config import RunConfig
    cfg = RunConfig(k_max=2)
    ids = ["scalar-czbar", "case2"]
    a = io.dumps(run_catalog(ids, cfg, threads=1))
    b = io.dumps(run_catalog(ids, cfg, threads=2))
    assert a == b


# -- gen --------------------------------------------------------------

@pytest.mark.parametrize("kind", ["symbols", "qphi", "potapov"])
def test_gen(kind, capsys, tmp_path):
    code, out, _ = run(["gen", kind, "--count", "3", "--seed", "4"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["instances"]) == 3
    inst = data["instances"][0]
    if kind == "symbols":
        io.symbol_from_json(inst)
    elif kind == "qphi":
        phi, Q = io.symbol_from_json(inst["phi"]), io.potapov_from_json(inst["Q"])
        assert Q.n == phi.n
    else:
        io.potapov_from_json(inst)
    assert run(["gen", kind, "--count", "3", "--seed", "4"], capsys)[1] == out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "btoplab", "analyze", files["unitary"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "normal"
