"""Cut qubit lines at CNOTs and bring each segment into boundary-aligned canonical form.

Every qubit line is an alternating sequence ``S B S B ... S`` of segments
(all single-qubit gates between two CNOT incidences, folded into one SU(2)
block) and boundaries (the CNOT incidences).  A Z rotation commutes with a
CNOT control and an X rotation with a CNOT target, so each boundary has one
*commuting axis*.  Each block is re-decomposed into three rotations, in time
order ``R_left(alpha) R_mid(theta) R_right(beta)``, whose outer axes match the
neighbouring boundaries; the outer rotations are pushed onto the boundaries
and merged there, leaving at most one confined rotation in interior segments.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .circuit import CNOT, Axis, Circuit, Gate, Rotation, gate_qubits
from .su2 import EulerTriple, aligned_distance, euler_decompose, gate_matrix, is_zero_angle, wrap_angle

_FILL_ORDER = (Axis.Z, Axis.X, Axis.Y)


class BoundaryRole(enum.Enum):
    ControlSide = "control"
    TargetSide = "target"

    @property
    def commuting_axis(self) -> Axis:
        return Axis.Z if self is BoundaryRole.ControlSide else Axis.X


@dataclass(frozen=True)
class Boundary:
    qubit: int
    gate_position: int
    role: BoundaryRole
    merged_angle: float = 0.0

    @property
    def axis(self) -> Axis:
        return self.role.commuting_axis

    @property
    def r(self) -> int:
        return 0 if is_zero_angle(self.merged_angle) else 1


@dataclass(frozen=True, eq=False)
class Segment:
    qubit: int
    position: int
    block: np.ndarray
    e: int
    # canonical form, filled by canonicalize()
    axes: Optional[tuple[Axis, Axis, Axis]] = None
    angles: tuple[float, float, float] = (0.0, 0.0, 0.0)
    left_export: float = 0.0
    right_export: float = 0.0
    confined_slots: tuple[int, ...] = ()

    @property
    def confined_angles(self) -> list[tuple[Axis, float]]:
        """Nonzero rotations that stay inside the segment, in time order."""
        return [(self.axes[k], self.angles[k]) for k in self.confined_slots]

    @property
    def r(self) -> int:
        return len(self.confined_slots)

    def __eq__(self, other):
        if not isinstance(other, Segment):
            return NotImplemented
        return (
            (self.qubit, self.position, self.e, self.axes, self.angles)
            == (other.qubit, other.position, other.e, other.axes, other.angles)
            and (self.left_export, self.right_export, self.confined_slots)
            == (other.left_export, other.right_export, other.confined_slots)
            and np.array_equal(self.block, other.block)
        )


@dataclass(frozen=True)
class QubitLine:
    qubit: int
    segments: tuple[Segment, ...]
    boundaries: tuple[Boundary, ...]

    @property
    def rotation_count(self) -> int:
        return sum(s.r for s in self.segments) + sum(b.r for b in self.boundaries)

    def adjacent_boundaries(self, i: int) -> list[Boundary]:
        out = []
        if i > 0:
            out.append(self.boundaries[i - 1])
        if i < len(self.boundaries):
            out.append(self.boundaries[i])
        return out


@dataclass(frozen=True)
class SegmentedCircuit:
    circuit: Circuit
    lines: tuple[QubitLine, ...] = field(default_factory=tuple)

    @property
    def total_rotations(self) -> int:
        """R: confined plus boundary rotations over all qubit lines."""
        return sum(line.rotation_count for line in self.lines)

    def line(self, qubit: int) -> QubitLine:
        for ln in self.lines:
            if ln.qubit == qubit:
                return ln
        raise KeyError(qubit)


def _default_axes(left: Optional[Axis], right: Optional[Axis]) -> tuple[Axis, Axis, Axis]:
    # Missing slots are filled left to right with the first of Z, X, Y that
    # differs from the already-fixed neighbours: Z_Z -> X, Z_X -> Y, none -> ZXZ.
    slots = [left, None, right]
    for k in range(3):
        if slots[k] is None:
            taken = {slots[j] for j in (k - 1, k + 1) if 0 <= j < 3}
            slots[k] = next(a for a in _FILL_ORDER if a not in taken)
    return tuple(slots)


def _candidate_axes(left: Optional[Axis], right: Optional[Axis]) -> list[tuple[Axis, Axis, Axis]]:
    default = _default_axes(left, right)
    out = [default]
    lefts = [left] if left is not None else list(_FILL_ORDER)
    rights = [right] if right is not None else list(_FILL_ORDER)
    for lft, mid, rgt in itertools.product(lefts, _FILL_ORDER, rights):
        if mid not in (lft, rgt) and (lft, mid, rgt) != default:
            out.append((lft, mid, rgt))
    return out


def _snap(theta: float) -> float:
    return 0.0 if is_zero_angle(theta) else theta


def _equivalent_angles(u: np.ndarray, t: EulerTriple) -> list[tuple[float, float, float]]:
    """The returned Euler angles plus the other branch R_A(a+pi) R_B(+-pi - b) R_C(c+pi).

    The fixed middle-angle range can turn a lone rotation into three (e.g.
    Rx(-0.3) = Rz(pi) Rx(0.3) Rz(pi) up to phase); the alternative branch
    recovers the single-rotation form.  Only branches that reproduce u are kept.
    """
    a, b, c = t.angles
    forms = [t.angles]
    mids = (-b,) if t.axes[0] == t.axes[2] else (math.pi - b, -math.pi - b)
    for m in mids:
        alt = (wrap_angle(a + math.pi), m, wrap_angle(c + math.pi))
        if aligned_distance(EulerTriple(t.axes, alt, 0.0).matrix(), u) < 1e-9:
            forms.append(alt)
    return forms


def canonicalize(segment: Segment, left_axis: Optional[Axis], right_axis: Optional[Axis]) -> Segment:
    """Boundary-aligned re-decomposition of ``segment.block``.

    The outer axes are pinned to the neighbouring boundaries' commuting axes
    where those exist.  Among the admissible middle (and free edge) axes the
    triple with the fewest nonzero rotations wins, then the one confining the
    fewest; remaining ties go to the default rule of ``_default_axes``.
    """
    # block = R_right(beta) R_mid(theta) R_left(alpha) as matrices; decomposing
    # the inverse puts the time-first slot first, so a degenerate block lands
    # on the left slot.
    inv = segment.block.conj().T
    free = (left_axis is None, True, right_axis is None)
    best = None
    for axes in _candidate_axes(left_axis, right_axis):
        for form in _equivalent_angles(inv, euler_decompose(inv, axes)):
            angles = tuple(_snap(wrap_angle(-a)) for a in form)
            confined = tuple(k for k, a in enumerate(angles) if free[k] and a != 0.0)
            score = (sum(a != 0.0 for a in angles), len(confined))
            if best is None or score < best[0]:
                best = (score, axes, angles, confined)
    _, axes, (alpha, theta, beta), confined = best
    return replace(
        segment,
        axes=axes,
        angles=(alpha, theta, beta),
        left_export=alpha if left_axis is not None else 0.0,
        right_export=beta if right_axis is not None else 0.0,
        confined_slots=confined,
    )


def merge_boundaries(segmented: SegmentedCircuit) -> SegmentedCircuit:
    """Sum the two exports meeting at each boundary into its single rotation."""
    lines = []
    for line in segmented.lines:
        bounds = tuple(
            replace(b, merged_angle=_snap(wrap_angle(line.segments[k].right_export + line.segments[k + 1].left_export)))
            for k, b in enumerate(line.boundaries)
        )
        lines.append(replace(line, boundaries=bounds))
    return replace(segmented, lines=tuple(lines))


def _raw_lines(circuit: Circuit) -> dict[int, tuple[list, list]]:
    blocks: dict[int, list[np.ndarray]] = {}
    bounds: dict[int, list[Boundary]] = {}
    for pos, g in enumerate(circuit.gates):
        for q in gate_qubits(g):
            if q not in blocks:
                blocks[q] = [np.eye(2, dtype=complex)]
                bounds[q] = []
        if isinstance(g, CNOT):
            for q, role in ((g.control, BoundaryRole.ControlSide), (g.target, BoundaryRole.TargetSide)):
                bounds[q].append(Boundary(q, pos, role))
                blocks[q].append(np.eye(2, dtype=complex))
        else:
            blocks[g.qubit][-1] = gate_matrix(g) @ blocks[g.qubit][-1]
    return {q: (blocks[q], bounds[q]) for q in sorted(blocks)}


def segment_circuit(circuit: Circuit) -> SegmentedCircuit:
    """Segment, canonicalize and merge; qubits without any gate are dropped."""
    lines = []
    for q, (blocks, bounds) in _raw_lines(circuit).items():
        n = len(blocks)
        segs = []
        for i, block in enumerate(blocks):
            left = bounds[i - 1].axis if i > 0 else None
            right = bounds[i].axis if i < n - 1 else None
            e = (left is None) + (right is None)
            segs.append(canonicalize(Segment(q, i, block, e), left, right))
        lines.append(QubitLine(q, tuple(segs), tuple(bounds)))
    return merge_boundaries(SegmentedCircuit(circuit, tuple(lines)))


@dataclass(frozen=True)
class GateOrigin:
    """Where a resynthesized gate came from: a segment slot, a boundary, or a CNOT."""

    kind: str  # "confined", "boundary", "cnot"
    qubit: Optional[int] = None
    index: Optional[int] = None  # segment position or boundary index
    slot: Optional[int] = None  # 0 left, 1 middle, 2 right (confined only)


def _confined_gates(seg: Segment) -> list[tuple[Gate, GateOrigin]]:
    return [
        (Rotation(seg.qubit, seg.axes[k], seg.angles[k]), GateOrigin("confined", seg.qubit, seg.position, k))
        for k in seg.confined_slots
    ]


def resynthesize_with_origins(segmented: SegmentedCircuit) -> tuple[Circuit, list[GateOrigin]]:
    circuit = segmented.circuit
    lines = {ln.qubit: ln for ln in segmented.lines}
    cursor = {q: 0 for q in lines}
    gates: list[Gate] = []
    origins: list[GateOrigin] = []
    for g in circuit.gates:
        if not isinstance(g, CNOT):
            continue
        for q in (g.control, g.target):
            for gate, origin in _confined_gates(lines[q].segments[cursor[q]]):
                gates.append(gate)
                origins.append(origin)
        gates.append(g)
        origins.append(GateOrigin("cnot"))
        for q in (g.control, g.target):
            b = lines[q].boundaries[cursor[q]]
            if b.r:
                gates.append(Rotation(q, b.axis, b.merged_angle))
                origins.append(GateOrigin("boundary", q, cursor[q]))
            cursor[q] += 1
    for q, ln in lines.items():
        for gate, origin in _confined_gates(ln.segments[cursor[q]]):
            gates.append(gate)
            origins.append(origin)
    return Circuit(circuit.num_qubits, tuple(gates)), origins


def resynthesize(segmented: SegmentedCircuit) -> Circuit:
    """Rebuild a circuit from the canonical form; equal to the source up to global phase."""
    return resynthesize_with_origins(segmented)[0]
