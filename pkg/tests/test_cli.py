import csv
import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from symprod import hyperelliptic, schemas
from symprod.cli import CAVEAT, EXIT_BAD_INPUT, EXIT_INVARIANT, EXIT_OK, main
from symprod.hyperelliptic import RRBasis, random_curve

COMMANDS = {
    "verify": ["verify", "--genus", "2", "--degree", "3", "--trials", "8"],
    "genus4-example": ["genus4-example", "--prime", "101"],
    "hyperelliptic-kernel": ["hyperelliptic-kernel", "--genus", "3", "--degree", "4"],
    "rr": ["rr", "--genus", "3", "--degree", "2"],
    "chain": ["chain", "--genus", "4", "--degree", "3", "--sections", "2", "--trials", "30",
              "--torsion", "--traces"],
}


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out.read_bytes() if out.exists() else None


@pytest.mark.parametrize("cmd", sorted(COMMANDS))
def test_deterministic_and_schema_valid(cmd, tmp_path):
    argv = COMMANDS[cmd] + ["--seed", "7"]
    c1, b1 = run(argv, tmp_path, "a.json")
    c2, b2 = run(argv, tmp_path, "b.json")
    assert c1 == c2 == EXIT_OK
    assert b1 == b2
    report = json.loads(b1)
    jsonschema.validate(report, schemas.BY_COMMAND[cmd])
    assert not [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]


@pytest.mark.parametrize("cmd", sorted(COMMANDS))
def test_csv_matches_json(cmd, tmp_path):
    argv = COMMANDS[cmd] + ["--seed", "3"]
    _, js = run(argv, tmp_path, "r.json")
    _, cs = run(argv + ["--format", "csv"], tmp_path, "r.csv")
    report = json.loads(js)
    rows = list(csv.DictReader(io.StringIO(cs.decode())))
    assert rows
    if cmd == "verify":
        assert [int(r["kernel_dim"]) for r in rows] == [t["kernel_dim"] for t in report["per_trial"]]
        assert [int(r["rank"]) for r in rows] == [t["rank"] for t in report["per_trial"]]
    elif cmd == "chain":
        (row,) = rows
        for key, v in report["counts"].items():
            assert int(row[key]) == v
        assert int(row["surviving_kernel_candidates"]) == report["surviving_kernel_candidates"]
    elif cmd == "rr":
        (row,) = rows
        assert int(row["h0_D"]) == report["h0_D"] and int(row["h0_K_minus_D"]) == report["h0_K_minus_D"]
    else:
        (row,) = rows
        rep = report["report"]
        assert int(row["rank"]) == rep["rank"] and int(row["kernel_dim"]) == rep["kernel_dim"]


def test_different_seeds_differ(tmp_path):
    _, a = run(COMMANDS["verify"] + ["--seed", "1"], tmp_path, "a")
    _, b = run(COMMANDS["verify"] + ["--seed", "2"], tmp_path, "b")
    assert a != b


def test_verify_histograms(tmp_path):
    code, out = run(["verify", "--genus", "2", "--degree", "3", "--trials", "25"], tmp_path)
    rep = json.loads(out)
    assert code == 0 and rep["kernel_dim_histogram"] == {"0": 25}
    assert "caveat" not in rep
    div = tmp_path / "d.json"
    div.write_text(json.dumps({"points": [], "inf": 4}))
    code, out = run(["verify", "--genus", "3", "--divisor-file", str(div), "--trials", "6"], tmp_path)
    rep = json.loads(out)
    assert rep["kernel_dim_histogram"] == {"1": 6}
    assert rep["caveat"] == CAVEAT
    assert rep["examples_of_nonzero_kernels"][0]["report"]["kernel_basis"] == [
        [{"n": 1, "m": 3, "c": 1}, {"n": 2, "m": 2, "c": -1}]]


def test_fixed_curve_and_divisor_files(tmp_path):
    curve = random_curve(10007, 2, 0)
    cf = tmp_path / "c.json"
    cf.write_text(json.dumps(curve.to_json()))
    rng = __import__("random").Random(0)
    D = hyperelliptic.random_generic_divisor(curve, 3, rng)
    df = tmp_path / "d.json"
    df.write_text(json.dumps(D.to_json()))
    code, out = run(["hyperelliptic-kernel", "--curve-file", str(cf), "--divisor-file", str(df)], tmp_path)
    rep = json.loads(out)
    assert code == 0 and rep["report"]["kernel_dim"] == 0 and rep["curve"] == curve.to_json()
    code, out = run(["rr", "--curve-file", str(cf), "--divisor-file", str(df)], tmp_path)
    rep = json.loads(out)
    assert rep["h0_D"] == 2 and rep["riemann_roch"]


@pytest.mark.parametrize("argv", [
    ["verify", "--prime", "100", "--degree", "3"],
    ["verify", "--prime", "97", "--degree", "3"],
    ["verify", "--genus", "2"],
    ["verify", "--trials", "0", "--degree", "3"],
    ["chain", "--sections", "5", "--degree", "3"],
    ["rr", "--curve-file", "/nonexistent.json", "--degree", "1"],
    ["nonsense"],
])
def test_bad_input_exit_2(argv, tmp_path, capsys):
    assert main(argv) == EXIT_BAD_INPUT


def test_bad_files_exit_2(tmp_path):
    cf = tmp_path / "c.json"
    cf.write_text('{"p": 101, "f": [0, 0, 1, 1]}')        # not squarefree
    assert main(["rr", "--curve-file", str(cf), "--degree", "1"]) == EXIT_BAD_INPUT
    cf.write_text("not json")
    assert main(["rr", "--curve-file", str(cf), "--degree", "1"]) == EXIT_BAD_INPUT
    good = tmp_path / "g.json"
    good.write_text(json.dumps(random_curve(101, 2, 0).to_json()))
    df = tmp_path / "d.json"
    df.write_text(json.dumps({"points": [{"x": 1, "y": 1, "m": 1}], "inf": 0}))
    curve = random_curve(101, 2, 0)
    if not curve.contains(hyperelliptic.CurvePoint(1, 1)):
        assert main(["rr", "--curve-file", str(good), "--divisor-file", str(df)]) == EXIT_BAD_INPUT


def test_chain_warns_on_negative_brill_noether(tmp_path, capsys):
    code, out = run(["chain", "--genus", "3", "--degree", "2", "--sections", "2", "--trials", "3"], tmp_path)
    assert code == 0
    assert "Brill-Noether" in capsys.readouterr().err
    assert json.loads(out)["counts"] == {"infeasible": 3}


def test_selftest_clean(capsys):
    assert main(["selftest"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and "suites passed" in out


def test_selftest_fault_injection(monkeypatch, capsys):
    real = hyperelliptic.rr_space

    def broken(curve, D):
        B = real(curve, D)
        return RRBasis(B.curve, B.divisor, B.basis[:-1], B.denominator, B.numerators[:-1]) if B.dim > 1 else B

    monkeypatch.setattr(hyperelliptic, "rr_space", broken)
    assert main(["selftest"]) == EXIT_INVARIANT
    out = capsys.readouterr().out
    assert "riemann_roch" in out and "FAIL" in out
    assert "Riemann-Roch identity" in out


def test_rr_invariant_failure_exit_1(monkeypatch, tmp_path, capsys):
    real = hyperelliptic.h0
    monkeypatch.setattr("symprod.cli.h0", lambda c, D: real(c, D) + 1)
    code, _ = run(["rr", "--genus", "2", "--degree", "3"], tmp_path)
    assert code == EXIT_INVARIANT
    assert "Riemann-Roch identity" in capsys.readouterr().err


def test_console_entry_point(tmp_path):
    out = tmp_path / "g.json"
    proc = subprocess.run([sys.executable, "-m", "symprod", "genus4-example", "--prime", "101", "--out", str(out)],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["report"]["kernel_dim"] == 1


def test_verify_beyond_range_dimension_bound(tmp_path, capsys):
    # g = 2, d = 5: h0(D) = 4, dim S^2 = 10, h0(2D) = 9, so the kernel is at least 1
    code, out = run(["verify", "--genus", "2", "--degree", "5", "--trials", "10"], tmp_path)
    rep = json.loads(out)
    assert code == 0 and rep["beyond_injectivity_range"]
    assert rep["kernel_dim_histogram"] == {"1": 10}
    assert all(t["kernel_dim"] >= t["dim_sym2"] - 9 == 1 for t in rep["per_trial"])


def test_selftest_fast():
    import time
    t0 = time.perf_counter()
    assert main(["selftest"]) == EXIT_OK
    assert time.perf_counter() - t0 < 60
