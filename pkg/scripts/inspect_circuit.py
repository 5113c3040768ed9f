#!/usr/bin/env python3
"""Show the canonical segmentation, Ising chains and chosen strategies for a QASM file.

    python scripts/inspect_circuit.py circuit.qasm --epsilon 1e-3
"""

import argparse
from pathlib import Path

from tcount_ising.pipeline import optimize_circuit
from tcount_ising.qasm import parse


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--epsilon", type=float, default=1e-3)
    args = ap.parse_args()

    report, seg = optimize_circuit(parse(Path(args.path).read_text()), args.epsilon)
    if report.trivially_clifford:
        print("no rotations to approximate (trivially Clifford)")
        return
    b = report.budget
    print(f"R={b.R}  eps_gate={b.eps_gate:.3e}  L={b.L:.4f}")
    by_qubit = {q.qubit: q for q in report.qubits}
    for line in seg.lines:
        print(f"\nqubit {line.qubit}")
        q = by_qubit.get(line.qubit)
        for i, s in enumerate(line.segments):
            rots = " ".join(f"R{ax.value}({a:+.4f})" for ax, a in s.confined_angles) or "-"
            strategy = "" if q is None else q.segments[i]["strategy"]
            h = "" if q is None else f"h={q.chain.h_units[i]:+.2f}L"
            print(f"  S{i}  e={s.e} r={s.r}  {rots:<40} {h:<10} {strategy}")
            if i < len(line.boundaries):
                bd = line.boundaries[i]
                J = "" if q is None else f"J={q.chain.J_units[i]:.2f}L"
                print(f"  B{i}  {bd.role.value:<7} R{bd.axis.value}({bd.merged_angle:+.4f}) r_b={bd.r}  {J}")
    print(f"\nbaseline {report.baseline_tcount}  optimized {report.optimized_tcount}  "
          f"reduction {report.reduction_pct:.2f}%")


if __name__ == "__main__":
    main()
