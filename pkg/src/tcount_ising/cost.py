"""T-count accounting: error budget, direct cost model, and reports.

Costs per synthesized rotation, with ``L = log2(1/eps_gate)``:

* diagonal approximation: ``3 L``
* magnitude approximation (MA) of a segment's central rotation: ``1 L``;
  its two residuals land on the outer slots.  Where a boundary exists the
  residual hops onto it and merges with whatever already sits there, so a
  boundary costs ``3 L`` once if anything ends up on it.  Where the segment
  touches a circuit edge there is nothing to merge with and the residual is
  synthesized diagonally (``3 L``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .ising import ChainSpec, SolveResult, build_chain, energy
from .segmenter import QubitLine, SegmentedCircuit

MA = "MA"
DIAG = "DIAG"
MAX_CONSISTENCY_SITES = 12


class TriviallyClifford(Exception):
    """Raised when there is nothing to approximate (R = 0); not an error condition."""


@dataclass(frozen=True)
class EpsilonBudget:
    eps_total: float
    R: int
    eps_gate: float
    L: float

    def to_dict(self) -> dict:
        return {"eps_total": self.eps_total, "eps_gate": self.eps_gate, "R": self.R, "L": self.L}


def check_eps(eps_total: float) -> float:
    if not 0.0 < eps_total < 1.0:
        raise ValueError(f"eps_total must lie in (0, 1), got {eps_total}")
    return float(eps_total)


def epsilon_budget(segmented: SegmentedCircuit, eps_total: float) -> EpsilonBudget:
    """Split eps_total uniformly over the R canonical rotations."""
    check_eps(eps_total)
    R = segmented.total_rotations
    if R == 0:
        raise TriviallyClifford("circuit has no rotations to approximate")
    eps_gate = eps_total / R
    return EpsilonBudget(eps_total, R, eps_gate, math.log2(1.0 / eps_gate))


def _line_cost_terms(line: QubitLine, sigma: Sequence[int]) -> tuple[int, int]:
    """(number of diagonal syntheses, number of MA syntheses) on one qubit line."""
    if len(sigma) != len(line.segments):
        raise ValueError(f"qubit {line.qubit}: sigma has {len(sigma)} entries for {len(line.segments)} segments")
    diag = ma = 0
    for seg, s in zip(line.segments, sigma):
        if s == 1:
            ma += 1
            diag += seg.e
        else:
            diag += seg.r
    for k, b in enumerate(line.boundaries):
        if b.r or sigma[k] == 1 or sigma[k + 1] == 1:
            diag += 1
    return diag, ma


def _sigma_for(line: QubitLine, sigmas: Mapping[int, Sequence[int]]) -> Sequence[int]:
    return sigmas.get(line.qubit, [-1] * len(line.segments))


def direct_cost(segmented: SegmentedCircuit, sigmas: Mapping[int, Sequence[int]], L: float) -> float:
    """Real-valued T-count of a strategy assignment; qubits absent from ``sigmas`` are all-diagonal."""
    total = 0.0
    for line in segmented.lines:
        diag, ma = _line_cost_terms(line, _sigma_for(line, sigmas))
        total += (3 * diag + ma) * L
    return total


@dataclass
class QubitReport:
    qubit: int
    chain: ChainSpec
    sigma: list[int]
    segments: list[dict]
    boundaries: list[dict]
    energy: float

    def to_dict(self) -> dict:
        return {
            "qubit": self.qubit,
            "h": [float(x) for x in self.chain.h],
            "J": [float(x) for x in self.chain.J],
            "sigma": list(self.sigma),
            "energy": self.energy,
            "segments": self.segments,
            "boundaries": self.boundaries,
        }


@dataclass
class OptimizationReport:
    baseline_tcount: int
    optimized_tcount: int
    reduction_pct: float
    budget: Optional[EpsilonBudget]
    qubits: list[QubitReport] = field(default_factory=list)
    eps_total: Optional[float] = None
    trivially_clifford: bool = False
    timings: dict = field(default_factory=dict)

    VERSION = 1

    @property
    def sigmas(self) -> dict[int, list[int]]:
        return {q.qubit: q.sigma for q in self.qubits}

    def to_dict(self, include_timings: bool = False) -> dict:
        if self.budget is not None:
            budget = self.budget.to_dict()
        else:
            budget = {"eps_total": self.eps_total, "eps_gate": None, "R": 0, "L": None}
        out = {
            "version": self.VERSION,
            "budget": budget,
            "baseline_tcount": self.baseline_tcount,
            "optimized_tcount": self.optimized_tcount,
            "reduction_pct": self.reduction_pct,
            "trivially_clifford": self.trivially_clifford,
            "qubits": [q.to_dict() for q in self.qubits],
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out


def reduction_pct(baseline: int, optimized: int) -> float:
    return 0.0 if baseline == 0 else 100.0 * (1.0 - optimized / baseline)


def trivial_report(eps_total: float) -> OptimizationReport:
    return OptimizationReport(0, 0, 0.0, None, [], eps_total=eps_total, trivially_clifford=True)


def tcount_report(
    segmented: SegmentedCircuit,
    solve_results: Mapping[int, SolveResult],
    budget: EpsilonBudget,
) -> OptimizationReport:
    """Integer T-counts, ceil(3L) per diagonal and ceil(L) per MA synthesis.

    Ceilings are applied per synthesized rotation after the configuration has
    been chosen on the real-valued objective; they never feed back into it.
    """
    L = budget.L
    c_diag, c_ma = math.ceil(3 * L), math.ceil(L)
    baseline = budget.R * c_diag
    optimized = 0
    qubits = []
    for line in segmented.lines:
        res = solve_results.get(line.qubit)
        sigma = [int(s) for s in res.sigma] if res is not None else [-1] * len(line.segments)
        diag, ma = _line_cost_terms(line, sigma)
        optimized += diag * c_diag + ma * c_ma
        if res is None:
            continue
        qubits.append(
            QubitReport(
                qubit=line.qubit,
                chain=build_chain(line, L),
                sigma=sigma,
                segments=[
                    {"r": seg.r, "e": seg.e, "strategy": MA if s == 1 else DIAG}
                    for seg, s in zip(line.segments, sigma)
                ],
                boundaries=[{"r": b.r} for b in line.boundaries],
                energy=res.energy,
            )
        )
    return OptimizationReport(
        baseline, optimized, reduction_pct(baseline, optimized), budget, qubits, eps_total=budget.eps_total
    )


@dataclass(frozen=True)
class ConsistencyResult:
    passed: bool
    max_deviation: float
    configs_checked: int


def consistency_check(segmented: SegmentedCircuit, L: float, rtol: float = 1e-9) -> ConsistencyResult:
    """Exhaustively compare Hamiltonian and direct-cost differences against all-diagonal.

    For every qubit line and every sigma:
    ``H(sigma) - H(all -1) == direct_cost(sigma) - direct_cost(all -1)``.
    """
    worst = 0.0
    checked = 0
    for line in segmented.lines:
        n = len(line.segments)
        if n > MAX_CONSISTENCY_SITES:
            raise ValueError(f"qubit {line.qubit} has {n} sites; exhaustive check is capped at {MAX_CONSISTENCY_SITES}")
        chain = build_chain(line, L)
        ref = [-1] * n
        e_ref = energy(chain, ref)
        c_ref = direct_cost(segmented, {line.qubit: ref}, L)
        for sigma in itertools.product((-1, 1), repeat=n):
            dh = energy(chain, sigma) - e_ref
            dc = direct_cost(segmented, {line.qubit: sigma}, L) - c_ref
            worst = max(worst, abs(dh - dc))
            checked += 1
    return ConsistencyResult(worst <= rtol * L, worst, checked)
