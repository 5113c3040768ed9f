"""Per-qubit Ising chains, their energy, and exact ground states.

``H(sigma) = -sum_i (J_i sigma_i sigma_{i+1} + h_i sigma_i)`` with
``sigma_i = +1`` for magnitude approximation on segment i and ``-1`` for
diagonal-only synthesis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numba
import numpy as np

from .segmenter import QubitLine

MAX_BRUTE_FORCE_SITES = 24


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """Fields and couplings stored in units of ``L``; ``h``/``J`` are the scaled values.

    Keeping the unit coefficients (exact multiples of 1/4 for chains built
    from circuits) lets the solver compare energies exactly, so the chosen
    configuration is the same for every L.
    """

    h_units: np.ndarray
    J_units: np.ndarray
    L: float = 1.0
    qubit: int = 0
    site_meta: tuple = ()

    def __post_init__(self):
        h = np.ascontiguousarray(self.h_units, dtype=np.float64)
        J = np.ascontiguousarray(self.J_units, dtype=np.float64)
        if h.ndim != 1 or h.size < 1:
            raise ValueError("a chain needs at least one site")
        if J.shape != (h.size - 1,):
            raise ValueError(f"need {h.size - 1} couplings for {h.size} sites, got {J.size}")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(J)) and np.isfinite(self.L)):
            raise ValueError("chain coefficients must be finite")
        object.__setattr__(self, "h_units", h)
        object.__setattr__(self, "J_units", J)

    @classmethod
    def from_fields(cls, h: Sequence[float], J: Sequence[float], qubit: int = 0) -> "ChainSpec":
        return cls(np.asarray(h, dtype=float), np.asarray(J, dtype=float), 1.0, qubit)

    @property
    def h(self) -> np.ndarray:
        return self.L * self.h_units

    @property
    def J(self) -> np.ndarray:
        return self.L * self.J_units

    def __len__(self) -> int:
        return self.h_units.size


class SolveMethod(enum.Enum):
    DP = "dp"
    BruteForce = "brute_force"


@dataclass(frozen=True, eq=False)
class SolveResult:
    sigma: np.ndarray
    energy: float
    method: SolveMethod


def site_field_units(r: int, e: int, adjacent_r_b: Sequence[int]) -> float:
    """Local field of one segment in units of L.

    h = (3/2) r - 1/2 - (3/2) e - sum over existing neighbouring boundaries of
    (3/4)(1 - r_b).  This is the exact spin expansion of the per-segment cost
    (3 r if diagonal, 1 + 3 e if magnitude-approximated) plus the 3/4 field
    share of each empty boundary.  For an interior segment (e = 0) whose two
    boundaries both carry r_b it equals (3/2)(r + r_b) - 2, the textbook
    interior-only form; the symmetric sum and the e term extend it to chain
    ends and to the left boundary.
    """
    return 1.5 * r - 0.5 - 1.5 * e - sum(0.75 * (1 - rb) for rb in adjacent_r_b)


def coupling_units(r_b: int) -> float:
    """J = (3/4)(1 - r_b): only an empty boundary couples its two segments."""
    return 0.75 * (1 - r_b)


def build_chain(line: QubitLine, L: float) -> ChainSpec:
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    h = [
        site_field_units(seg.r, seg.e, [b.r for b in line.adjacent_boundaries(i)])
        for i, seg in enumerate(line.segments)
    ]
    J = [coupling_units(b.r) for b in line.boundaries]
    return ChainSpec(np.array(h), np.array(J), float(L), line.qubit, tuple(line.segments))


@numba.njit(cache=True)
def _energy_kernel(h_units, J_units, L, sigma):
    # site i contributes (J_i s_i) s_{i+1} + h_i s_i, summed strictly left to right
    n = h_units.shape[0]
    acc = 0.0
    for i in range(n):
        s = float(sigma[i])
        term = (L * h_units[i]) * s
        if i < n - 1:
            term = (L * J_units[i]) * s * float(sigma[i + 1]) + term
        acc = term if i == 0 else acc + term
    return -acc


def energy(chain: ChainSpec, sigma: Sequence[int]) -> float:
    """Evaluate H(sigma), accumulating site terms strictly left to right."""
    s = np.ascontiguousarray(sigma, dtype=np.float64)
    if s.shape != chain.h_units.shape:
        raise ValueError(f"sigma has length {s.size}, chain has {len(chain)} sites")
    return float(_energy_kernel(chain.h_units, chain.J_units, float(chain.L), s))


@numba.njit(cache=True)
def _dp_kernel(h, J):
    n = h.shape[0]
    trace_plus = np.zeros(n, dtype=np.int8)
    trace_minus = np.zeros(n, dtype=np.int8)
    e_plus = -h[0]
    e_minus = h[0]
    for i in range(1, n):
        j = J[i - 1]
        if e_plus - j < e_minus + j:
            new_plus = e_plus - j - h[i]
            trace_plus[i] = 1
        else:
            new_plus = e_minus + j - h[i]
            trace_plus[i] = -1
        if e_plus + j < e_minus - j:
            new_minus = e_plus + j + h[i]
            trace_minus[i] = 1
        else:
            new_minus = e_minus - j + h[i]
            trace_minus[i] = -1
        e_plus = new_plus
        e_minus = new_minus
    sigma = np.empty(n, dtype=np.int8)
    sigma[n - 1] = 1 if e_plus < e_minus else -1
    for i in range(n - 1, 0, -1):
        sigma[i - 1] = trace_plus[i] if sigma[i] == 1 else trace_minus[i]
    return sigma


def solve_dp(chain: ChainSpec) -> SolveResult:
    """Exact ground state in O(N) by forward minimisation and backtracking.

    Comparisons are strict, so a tie records predecessor -1; a tie between
    the two final states picks sigma_N = -1.
    """
    sigma = _dp_kernel(chain.h_units, chain.J_units)
    return SolveResult(sigma, energy(chain, sigma), SolveMethod.DP)


def _spins_from_index(idx: np.ndarray, n: int) -> np.ndarray:
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1
    return (2 * bits - 1).astype(np.float64)


def brute_force_solve(chain: ChainSpec, chunk: int = 1 << 16) -> SolveResult:
    """Exhaustive minimum over all 2^N configurations (N <= 24)."""
    n = len(chain)
    if n > MAX_BRUTE_FORCE_SITES:
        raise ValueError(f"brute force is capped at {MAX_BRUTE_FORCE_SITES} sites, got {n}")
    h, J = chain.h, chain.J
    best_e: Optional[float] = None
    best_idx = 0
    total = 1 << n
    for start in range(0, total, chunk):
        s = _spins_from_index(np.arange(start, min(start + chunk, total), dtype=np.int64), n)
        e = -(s @ h + (s[:, :-1] * s[:, 1:]) @ J)
        k = int(np.argmin(e))
        if best_e is None or e[k] < best_e:
            best_e, best_idx = float(e[k]), start + k
    sigma = _spins_from_index(np.array([best_idx]), n)[0].astype(np.int8)
    return SolveResult(sigma, energy(chain, sigma), SolveMethod.BruteForce)
