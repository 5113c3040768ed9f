"""Circuit -> segmented canonical form -> Ising chains -> report."""

from __future__ import annotations

import time
from typing import Optional

from .circuit import Circuit
from .cost import DIAG, MA, OptimizationReport, TriviallyClifford, epsilon_budget, tcount_report, trivial_report
from .ising import build_chain, solve_dp
from .qasm import emit_qasm
from .segmenter import SegmentedCircuit, resynthesize_with_origins, segment_circuit


def optimize_segmented(segmented: SegmentedCircuit, eps_total: float) -> OptimizationReport:
    t0 = time.perf_counter()
    try:
        budget = epsilon_budget(segmented, eps_total)
    except TriviallyClifford:
        return trivial_report(eps_total)
    results = {}
    for line in segmented.lines:
        # lines without any rotation have nothing to decide
        if line.rotation_count == 0:
            continue
        results[line.qubit] = solve_dp(build_chain(line, budget.L))
    t1 = time.perf_counter()
    report = tcount_report(segmented, results, budget)
    report.timings = {"solve_s": t1 - t0, "report_s": time.perf_counter() - t1}
    return report


def optimize_circuit(circuit: Circuit, eps_total: float) -> tuple[OptimizationReport, SegmentedCircuit]:
    t0 = time.perf_counter()
    segmented = segment_circuit(circuit)
    t1 = time.perf_counter()
    report = optimize_segmented(segmented, eps_total)
    report.timings = {"segment_s": t1 - t0, **report.timings}
    return report, segmented


def annotated_qasm(segmented: SegmentedCircuit, report: OptimizationReport) -> str:
    """Canonical circuit with ``// MA`` on magnitude-approximated central rotations, ``// DIAG`` elsewhere."""
    circuit, origins = resynthesize_with_origins(segmented)
    sigmas = report.sigmas
    labels: list[Optional[str]] = []
    for o in origins:
        if o.kind == "cnot":
            labels.append(None)
        elif o.kind == "confined" and o.slot == 1 and sigmas.get(o.qubit, {}) and sigmas[o.qubit][o.index] == 1:
            labels.append(MA)
        else:
            labels.append(DIAG)
    return emit_qasm(circuit, labels)
