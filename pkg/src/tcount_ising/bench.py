"""Seeded random-circuit ensembles and the baseline-vs-optimized benchmark.

Random stream (pinned so ensembles can be regenerated anywhere): Philox4x64-10
keyed with the two 64-bit words ``(seed, index)``, counter starting at zero,
consumed one 64-bit output word at a time.  A word ``w`` becomes a uniform
``u = (w >> 11) * 2**-53`` in [0, 1) and an integer below ``k`` as
``floor(u * k)``.

A layer touches every qubit exactly once.  Qubits are visited in order
0..n-1, skipping those already paired in this layer; each visited qubit q
consumes a word ``u`` and then

* if ``u < cnot_probability`` and some qubit above q is still free in this
  layer: a partner word (uniform over the free qubits above q, in increasing
  order) and an orientation word (0: q controls, 1: q is the target);
* otherwise: an axis word (X, Y, Z) and an angle word (``2 pi u``) for a
  rotation on q.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import asdict, dataclass, field

import numpy as np

from .circuit import CNOT, Axis, Circuit, Gate, Rotation
from .cost import check_eps
from .pipeline import optimize_circuit

PRNG_NAME = "philox4x64-10"
_AXES = (Axis.X, Axis.Y, Axis.Z)
_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class BenchParams:
    num_circuits: int = 100
    qubits: int = 5
    depth: int = 40
    cnot_probability: float = 0.3
    eps_total: float = 1e-3
    seed: int = 42

    def __post_init__(self):
        if self.num_circuits < 1 or self.qubits < 1 or self.depth < 1:
            raise ValueError("num_circuits, qubits and depth must be >= 1")
        if not 0.0 <= self.cnot_probability <= 1.0:
            raise ValueError("cnot_probability must lie in [0, 1]")
        if not 0 <= self.seed <= _UINT64_MAX:
            raise ValueError("seed must be an unsigned 64-bit integer")
        check_eps(self.eps_total)


class _Stream:
    def __init__(self, seed: int, index: int):
        key = np.array([seed, index], dtype=np.uint64)
        self._gen = np.random.Philox(key=key)

    def uniform(self) -> float:
        word = int(self._gen.random_raw())
        return (word >> 11) * 2.0**-53

    def below(self, k: int) -> int:
        return int(self.uniform() * k)


def random_circuit(params: BenchParams, index: int) -> Circuit:
    n = params.qubits
    rng = _Stream(params.seed, index)
    gates: list[Gate] = []
    for _ in range(params.depth):
        used = [False] * n
        for q in range(n):
            if used[q]:
                continue
            used[q] = True
            pair = rng.uniform() < params.cnot_probability
            free = [k for k in range(q + 1, n) if not used[k]]
            if pair and free:
                partner = free[rng.below(len(free))]
                used[partner] = True
                if rng.below(2) == 0:
                    gates.append(CNOT(q, partner))
                else:
                    gates.append(CNOT(partner, q))
            else:
                axis = _AXES[rng.below(3)]
                gates.append(Rotation(q, axis, 2.0 * math.pi * rng.uniform()))
    return Circuit(n, tuple(gates))


@dataclass
class BenchRow:
    index: int
    baseline: int
    optimized: int
    reduction_pct: float


@dataclass
class BenchSummary:
    params: BenchParams
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def reductions(self) -> list[float]:
        return [r.reduction_pct for r in self.rows]

    def to_dict(self) -> dict:
        red = self.reductions
        return {
            "version": 1,
            "prng": PRNG_NAME,
            "params": asdict(self.params),
            "mean_reduction_pct": statistics.fmean(red),
            "median_reduction_pct": statistics.median(red),
            "min_reduction_pct": min(red),
            "max_reduction_pct": max(red),
            "total_baseline": sum(r.baseline for r in self.rows),
            "total_optimized": sum(r.optimized for r in self.rows),
            "rows": [asdict(r) for r in self.rows],
        }

    def to_csv(self) -> str:
        lines = ["index,baseline,optimized,reduction_pct"]
        lines += [f"{r.index},{r.baseline},{r.optimized},{r.reduction_pct!r}" for r in self.rows]
        return "\n".join(lines) + "\n"


def run_bench(params: BenchParams) -> BenchSummary:
    summary = BenchSummary(params)
    for i in range(params.num_circuits):
        report, _ = optimize_circuit(random_circuit(params, i), params.eps_total)
        summary.rows.append(BenchRow(i, report.baseline_tcount, report.optimized_tcount, report.reduction_pct))
    return summary
