import json
from dataclasses import replace
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from tcount_ising.bench import BenchParams, random_circuit, run_bench
from tcount_ising.circuit import CNOT, Rotation
from tcount_ising.cli import EXIT_IO, EXIT_OK, EXIT_PARSE, main
from tcount_ising.pipeline import optimize_circuit
from tcount_ising.qasm import parse
from tcount_ising.su2 import aligned_distance, circuit_unitary

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(resources.files("tcount_ising").joinpath("report.schema.json").read_text())

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --- random circuits --------------------------------------------------------


def test_random_circuit_deterministic():
    p = BenchParams(qubits=4, depth=20, seed=42)
    assert random_circuit(p, 0) == random_circuit(p, 0)
    assert random_circuit(p, 0) != random_circuit(p, 1)
    assert random_circuit(p, 0) != random_circuit(replace(p, seed=43), 0)


def reference_circuit(seed, index, n, depth, p):
    """Decode the documented stream by hand: raw Philox words, 53-bit uniforms."""
    import math
    import numpy as np

    gen = np.random.Philox(key=np.array([seed, index], dtype=np.uint64))
    u = lambda: (int(gen.random_raw()) >> 11) / 2.0**53
    gates = []
    for _ in range(depth):
        busy = set()
        for q in range(n):
            if q in busy:
                continue
            busy.add(q)
            draw = u()
            free = [k for k in range(q + 1, n) if k not in busy]
            if draw < p and free:
                partner = free[math.floor(u() * len(free))]
                busy.add(partner)
                gates.append(CNOT(q, partner) if u() < 0.5 else CNOT(partner, q))
            else:
                axis = "XYZ"[math.floor(u() * 3)]
                gates.append((q, axis, 2 * math.pi * u()))
    return gates


def test_random_circuit_matches_documented_stream():
    for index in range(3):
        c = random_circuit(BenchParams(qubits=4, depth=20, seed=42), index)
        ref = reference_circuit(42, index, 4, 20, 0.3)
        assert len(c.gates) == len(ref)
        for g, r in zip(c.gates, ref):
            if isinstance(g, CNOT):
                assert g == r
            else:
                assert (g.qubit, g.axis.value, g.angle) == r


def test_layers_touch_each_qubit_once():
    p = BenchParams(qubits=5, depth=30, cnot_probability=0.6, seed=7)
    c = random_circuit(p, 3)
    touched = sum(1 if isinstance(g, Rotation) else 2 for g in c.gates)
    assert touched == 5 * 30


def test_rotation_only_line():
    c = random_circuit(BenchParams(qubits=1, depth=15, cnot_probability=0.0), 0)
    assert len(c.gates) == 15 and all(isinstance(g, Rotation) for g in c.gates)
    assert all(0.0 <= g.angle < 6.283185307179587 for g in c.gates)


def test_all_cnot_layers():
    c = random_circuit(BenchParams(qubits=4, depth=10, cnot_probability=1.0), 0)
    assert all(isinstance(g, CNOT) for g in c.gates) and len(c.gates) == 20


@pytest.mark.parametrize("kw", [dict(num_circuits=0), dict(qubits=0), dict(depth=0), dict(cnot_probability=1.5),
                                dict(seed=-1), dict(seed=2**64), dict(eps_total=1.0)])
def test_bench_params_validation(kw):
    with pytest.raises(ValueError):
        BenchParams(**kw)


def test_degenerate_bench_equals_single_report():
    p = BenchParams(num_circuits=1, qubits=1, depth=12, cnot_probability=0.0)
    summary = run_bench(p)
    report, _ = optimize_circuit(random_circuit(p, 0), p.eps_total)
    (row,) = summary.rows
    assert (row.baseline, row.optimized, row.reduction_pct) == (
        report.baseline_tcount, report.optimized_tcount, report.reduction_pct)
    d = summary.to_dict()
    assert d["mean_reduction_pct"] == d["min_reduction_pct"] == report.reduction_pct


def test_summary_internal_consistency():
    s = run_bench(BenchParams(num_circuits=8, qubits=3, depth=15))
    d = s.to_dict()
    assert d["mean_reduction_pct"] == pytest.approx(sum(r["reduction_pct"] for r in d["rows"]) / 8)
    assert d["total_baseline"] == sum(r["baseline"] for r in d["rows"])
    assert all(r["optimized"] <= r["baseline"] for r in d["rows"])
    lines = s.to_csv().splitlines()
    assert lines[0] == "index,baseline,optimized,reduction_pct" and len(lines) == 9


def test_ensemble_golden():
    golden = json.loads((GOLDEN / "bench_default.json").read_text())
    d = run_bench(BenchParams()).to_dict()
    assert d == golden
    assert 15.0 <= d["mean_reduction_pct"] <= 40.0


# --- optimize ---------------------------------------------------------------


def test_optimize_golden_report(capsys):
    code, out, err = run(["optimize", "--input", GOLDEN / "example_2q.qasm", "--epsilon", "1e-3"], capsys)
    assert code == EXIT_OK and err == ""
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report == json.loads((GOLDEN / "example_2q.report.json").read_text())
    assert report["baseline_tcount"] >= report["optimized_tcount"]


def test_optimize_schema_on_random_circuits(tmp_path, capsys):
    from tcount_ising.qasm import emit_qasm

    for i in range(5):
        src = tmp_path / f"c{i}.qasm"
        src.write_text(emit_qasm(random_circuit(BenchParams(qubits=3, depth=12), i)))
        code, out, _ = run(["optimize", "--input", src, "--epsilon", "1e-4", "--timings"], capsys)
        assert code == EXIT_OK
        report = json.loads(out)
        jsonschema.validate(report, SCHEMA)
        assert "timings" in report


def test_optimize_writes_files(tmp_path, capsys):
    out_json, out_qasm = tmp_path / "r.json", tmp_path / "a.qasm"
    code, out, _ = run(["optimize", "--input", GOLDEN / "example_2q.qasm", "--epsilon", "1e-3",
                        "--json", out_json, "--annotate", out_qasm], capsys)
    assert code == EXIT_OK and out == ""
    jsonschema.validate(json.loads(out_json.read_text()), SCHEMA)
    text = out_qasm.read_text()
    assert "// DIAG" in text
    original = parse((GOLDEN / "example_2q.qasm").read_text())
    assert aligned_distance(circuit_unitary(parse(text)), circuit_unitary(original)) <= 1e-9


def test_annotate_marks_ma(tmp_path, capsys):
    src = tmp_path / "euler.qasm"
    src.write_text(HEADER + "qreg q[1];\nrz(0.4) q[0];\nrx(1.1) q[0];\nrz(-0.7) q[0];\n")
    ann = tmp_path / "ann.qasm"
    code, out, _ = run(["optimize", "--input", src, "--epsilon", "1e-3", "--annotate", ann], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["optimized_tcount"] < json.loads(out)["baseline_tcount"]
    lines = [ln for ln in ann.read_text().splitlines() if ln.startswith("r")]
    assert [ln.split("// ")[1] for ln in lines] == ["DIAG", "MA", "DIAG"]
    assert aligned_distance(circuit_unitary(parse(ann.read_text())), circuit_unitary(parse(src.read_text()))) <= 1e-9


def test_optimize_empty_body(tmp_path, capsys):
    src = tmp_path / "empty.qasm"
    src.write_text(HEADER + "qreg q[3];\n")
    code, out, _ = run(["optimize", "--input", src, "--epsilon", "1e-3"], capsys)
    report = json.loads(out)
    assert code == EXIT_OK and report["trivially_clifford"]
    assert report["baseline_tcount"] == report["optimized_tcount"] == 0
    jsonschema.validate(report, SCHEMA)


def test_optimize_parse_error(tmp_path, capsys):
    src = tmp_path / "bad.qasm"
    src.write_text(HEADER + "qreg q[2];\nfoo q[0];\n")
    code, out, err = run(["optimize", "--input", src, "--epsilon", "1e-3"], capsys)
    assert code == EXIT_PARSE and out == ""
    assert "QASM-UNKNOWN-GATE" in err and ":4:" in err


def test_optimize_missing_file(tmp_path, capsys):
    code, out, err = run(["optimize", "--input", tmp_path / "nope.qasm", "--epsilon", "1e-3"], capsys)
    assert code == EXIT_IO and out == "" and "cannot read" in err


def test_optimize_unwritable_output(tmp_path, capsys):
    code, _, _ = run(["optimize", "--input", GOLDEN / "example_2q.qasm", "--epsilon", "1e-3",
                      "--json", tmp_path / "missing_dir" / "r.json"], capsys)
    assert code == EXIT_IO


def test_optimize_bad_epsilon(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["optimize", "--input", str(GOLDEN / "example_2q.qasm"), "--epsilon", "1.5"])
    assert exc.value.code == 2
    capsys.readouterr()


# --- bench / verify ---------------------------------------------------------


def test_bench_byte_identical(tmp_path, capsys):
    argv = ["bench", "--qubits", 3, "--depth", 10, "--circuits", 5, "--seed", 9]
    a = run(argv + ["--csv", tmp_path / "a.csv"], capsys)
    b = run(argv + ["--csv", tmp_path / "b.csv"], capsys)
    assert a[0] == b[0] == EXIT_OK and a[1] == b[1]
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    d = json.loads(a[1])
    assert d["prng"] == "philox4x64-10" and d["params"]["seed"] == 9


def test_bench_io_error(tmp_path, capsys):
    code, _, _ = run(["bench", "--circuits", 1, "--depth", 2, "--json", tmp_path / "x" / "y.json"], capsys)
    assert code == EXIT_IO


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "--max-sites", 8, "--trials", 30, "--seed", 1], capsys)
    assert code == EXIT_OK
    assert out.count("PASS") == 3


def test_verify_site_cap(capsys):
    code, out, err = run(["verify", "--max-sites", 30], capsys)
    assert code == EXIT_IO and "max-sites" in err


def test_verify_zero_trials(capsys):
    code, out, err = run(["verify", "--trials", 0], capsys)
    assert code == EXIT_OK and "warning" in err


@pytest.mark.slow
def test_verify_full(capsys):
    code, _, _ = run(["verify", "--max-sites", 16, "--trials", 500], capsys)
    assert code == EXIT_OK
