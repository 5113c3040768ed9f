"""Circuit intermediate representation: axis rotations, named 1q gates, CNOTs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union


class Axis(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def index(self) -> int:
        return "XYZ".index(self.value)


@dataclass(frozen=True)
class Rotation:
    qubit: int
    axis: Axis
    angle: float


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("CNOT control and target must differ")


# Named single-qubit gates expressed as SU(2) rotations (global phase dropped).
# h is a pi rotation about (X+Z)/sqrt(2) and is handled separately.
FIXED_GATE_ROTATIONS = {
    "x": (Axis.X, math.pi),
    "y": (Axis.Y, math.pi),
    "z": (Axis.Z, math.pi),
    "s": (Axis.Z, math.pi / 2),
    "sdg": (Axis.Z, -math.pi / 2),
    "t": (Axis.Z, math.pi / 4),
    "tdg": (Axis.Z, -math.pi / 4),
}
FIXED_GATES = ("x", "y", "z", "h", "s", "sdg", "t", "tdg")


@dataclass(frozen=True)
class FixedGate:
    qubit: int
    name: str

    def __post_init__(self):
        if self.name not in FIXED_GATES:
            raise ValueError(f"unknown fixed gate {self.name!r}")


Gate = Union[Rotation, CNOT, FixedGate]


def gate_qubits(gate: Gate) -> tuple[int, ...]:
    if isinstance(gate, CNOT):
        return (gate.control, gate.target)
    return (gate.qubit,)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in gate_qubits(g):
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit {q} outside register of size {self.num_qubits}")

    def __len__(self) -> int:
        return len(self.gates)

    def rotation_count(self) -> int:
        return sum(isinstance(g, Rotation) for g in self.gates)
