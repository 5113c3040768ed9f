"""Oracle suites behind ``tcount-ising verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bench import BenchParams, random_circuit
from .circuit import Circuit
from .cost import MAX_CONSISTENCY_SITES, consistency_check, epsilon_budget, TriviallyClifford
from .ising import ChainSpec, brute_force_solve, solve_dp
from .segmenter import resynthesize, segment_circuit
from .su2 import aligned_distance, circuit_unitary

MAX_VERIFY_SITES = 16


@dataclass
class SuiteResult:
    name: str
    cases: int
    max_deviation: float
    tolerance: float
    passed: bool


def random_chain(rng: np.random.Generator, max_sites: int) -> ChainSpec:
    n = int(rng.integers(1, max_sites + 1))
    return ChainSpec.from_fields(rng.uniform(-10, 10, n), rng.uniform(-10, 10, n - 1))


def random_small_circuit(rng: np.random.Generator, max_qubits: int, max_layers: int, seed: int) -> Circuit:
    """A bench-style circuit with at most ``max_layers + 1`` segments per qubit."""
    params = BenchParams(
        num_circuits=1,
        qubits=int(rng.integers(1, max_qubits + 1)),
        depth=int(rng.integers(1, max_layers + 1)),
        cnot_probability=float(rng.uniform(0.0, 0.8)),
        seed=seed,
    )
    return random_circuit(params, int(rng.integers(0, 2**32)))


def dp_suite(trials: int, max_sites: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        chain = random_chain(rng, max_sites)
        worst = max(worst, abs(solve_dp(chain).energy - brute_force_solve(chain).energy))
    return SuiteResult("dp_vs_brute_force", trials, worst, 1e-9, worst <= 1e-9)


def consistency_suite(trials: int, max_sites: int, rng: np.random.Generator) -> SuiteResult:
    layers = min(max_sites, MAX_CONSISTENCY_SITES) - 1
    worst_rel = 0.0
    ok = True
    for k in range(trials):
        seg = segment_circuit(random_small_circuit(rng, 4, max(layers, 1), k))
        try:
            L = epsilon_budget(seg, 1e-3).L
        except TriviallyClifford:
            L = 1.0
        res = consistency_check(seg, L)
        ok &= res.passed
        worst_rel = max(worst_rel, res.max_deviation / L)
    return SuiteResult("hamiltonian_vs_direct_cost", trials, worst_rel, 1e-9, ok)


def round_trip_suite(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for k in range(trials):
        n = int(rng.integers(1, 5))
        params = BenchParams(1, n, max(1, 40 // n), float(rng.uniform(0.0, 0.8)), seed=k)
        c = random_circuit(params, 0)
        worst = max(worst, aligned_distance(circuit_unitary(c), circuit_unitary(resynthesize(segment_circuit(c)))))
    return SuiteResult("canonical_round_trip", trials, worst, 1e-9, worst <= 1e-9)


def run_verify(max_sites: int, trials: int, seed: int) -> list[SuiteResult]:
    if not 1 <= max_sites <= MAX_VERIFY_SITES:
        raise ValueError(f"max_sites must lie in [1, {MAX_VERIFY_SITES}]")
    rng = np.random.default_rng(seed)
    return [
        dp_suite(trials, max_sites, rng),
        consistency_suite(trials, max_sites, rng),
        round_trip_suite(trials, rng),
    ]
