"""Command line entry point: ``optimize``, ``bench`` and ``verify``.

Exit codes: 0 success, 1 QASM parse error, 2 I/O or parameter error,
3 oracle failure (verify only).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import BenchParams, run_bench
from .pipeline import annotated_qasm, optimize_circuit
from .qasm import ParseError, parse
from .verify import MAX_VERIFY_SITES, run_verify

log = logging.getLogger("tcount_ising")

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_IO = 2
EXIT_ORACLE = 3


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_optimize(args) -> int:
    try:
        source = Path(args.input).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        circuit = parse(source)
    except ParseError as exc:
        print(f"{args.input}:{exc}", file=sys.stderr)
        return EXIT_PARSE
    report, segmented = optimize_circuit(circuit, args.epsilon)
    try:
        _write(args.json, dumps(report.to_dict(include_timings=args.timings)))
        if args.annotate:
            _write(args.annotate, annotated_qasm(segmented, report))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_bench(args) -> int:
    params = BenchParams(
        num_circuits=args.circuits,
        qubits=args.qubits,
        depth=args.depth,
        cnot_probability=args.cnot_prob,
        eps_total=args.epsilon,
        seed=args.seed,
    )
    summary = run_bench(params)
    try:
        _write(args.json, dumps(summary.to_dict()))
        if args.csv:
            _write(args.csv, summary.to_csv())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    if not 1 <= args.max_sites <= MAX_VERIFY_SITES:
        print(f"parameter error: --max-sites must lie in [1, {MAX_VERIFY_SITES}]", file=sys.stderr)
        return EXIT_IO
    if args.trials == 0:
        print("warning: --trials 0, nothing to verify", file=sys.stderr)
    results = run_verify(args.max_sites, args.trials, args.seed)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.cases} cases, max deviation {r.max_deviation:.3e} (tol {r.tolerance:.1e})")
    return EXIT_OK if all(r.passed for r in results) else EXIT_ORACLE


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _uint64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def _eps(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("must lie in (0, 1)")
    return v


def _probability(text: str) -> float:
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcount-ising", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="choose MA/diagonal strategies for a QASM circuit")
    p.add_argument("--input", required=True, help="OpenQASM 2.0 file")
    p.add_argument("--epsilon", type=_eps, required=True, help="total error budget")
    p.add_argument("--json", help="write the JSON report here instead of stdout")
    p.add_argument("--annotate", help="write the canonical circuit with // MA, // DIAG comments")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (non-deterministic)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bench", help="random-circuit benchmark against the all-diagonal baseline")
    p.add_argument("--qubits", type=_positive_int, default=5)
    p.add_argument("--depth", type=_positive_int, default=40)
    p.add_argument("--cnot-prob", type=_probability, default=0.3)
    p.add_argument("--circuits", type=_positive_int, default=100)
    p.add_argument("--epsilon", type=_eps, default=1e-3)
    p.add_argument("--seed", type=_uint64, default=42)
    p.add_argument("--json", help="write the summary here instead of stdout")
    p.add_argument("--csv", help="also write per-circuit rows as CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the oracle suites")
    p.add_argument("--max-sites", type=int, default=16)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=_uint64, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
