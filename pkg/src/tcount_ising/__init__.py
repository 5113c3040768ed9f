"""Magnitude-vs-diagonal rotation synthesis planning via 1D Ising ground states."""

from .circuit import CNOT, Axis, Circuit, FixedGate, Rotation
from .cost import (
    EpsilonBudget,
    OptimizationReport,
    TriviallyClifford,
    consistency_check,
    direct_cost,
    epsilon_budget,
    tcount_report,
)
from .ising import ChainSpec, SolveResult, brute_force_solve, build_chain, energy, solve_dp
from .pipeline import annotated_qasm, optimize_circuit
from .qasm import ParseError, ParseErrorKind, emit_qasm, parse, parse_angle_expr
from .segmenter import SegmentedCircuit, canonicalize, merge_boundaries, resynthesize, segment_circuit
from .su2 import circuit_unitary, euler_decompose, phase_distance, rotation_matrix

__version__ = "0.1.0"
