"""2x2 unitary arithmetic, Euler decompositions and a dense circuit oracle.

Rotation convention throughout: ``R_P(theta) = exp(-i theta P / 2)``.  The
``exp(+i theta P)`` form sometimes seen in the literature is a sign and
half-angle reparameterisation of the same gates; rotation counts, which is
all the cost model consumes, are unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial.transform import Rotation as _SO3

from .circuit import CNOT, Axis, Circuit, FixedGate, Gate, Rotation, FIXED_GATE_ROTATIONS

TWO_PI = 2.0 * math.pi
ZERO_ANGLE_TOL = 1e-12
# Below this |sin| (or |cos|) of the half middle angle the outer angles are
# not separately identifiable; reconstruction error is then at most 2*tol.
GIMBAL_TOL = 1e-12
MAX_ORACLE_QUBITS = 10

I2 = np.eye(2, dtype=complex)
PAULI = {
    Axis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Axis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Axis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def is_zero_angle(theta: float, tol: float = ZERO_ANGLE_TOL) -> bool:
    """True if ``theta`` is a multiple of 2*pi within ``tol`` (identity up to phase)."""
    m = theta % TWO_PI
    return m < tol or TWO_PI - m < tol


def wrap_angle(theta: float) -> float:
    """Map to (-pi, pi].  Shifting by 2*pi only flips the global sign of R_P."""
    w = math.remainder(theta, TWO_PI)
    return math.pi if w == -math.pi else w


def rotation_matrix(axis: Axis, angle: float) -> np.ndarray:
    c = math.cos(angle / 2)
    s = math.sin(angle / 2)
    return c * I2 - 1j * s * PAULI[axis]


_H_SU2 = -1j * (PAULI[Axis.X] + PAULI[Axis.Z]) / math.sqrt(2)


def fixed_gate_matrix(name: str) -> np.ndarray:
    if name == "h":
        return _H_SU2.copy()
    axis, angle = FIXED_GATE_ROTATIONS[name]
    return rotation_matrix(axis, angle)


def gate_matrix(gate: Gate) -> np.ndarray:
    """SU(2) matrix of a single-qubit gate."""
    if isinstance(gate, Rotation):
        return rotation_matrix(gate.axis, gate.angle)
    if isinstance(gate, FixedGate):
        return fixed_gate_matrix(gate.name)
    raise TypeError(f"{gate!r} is not a single-qubit gate")


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    u = np.asarray(u)
    return bool(
        np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol
        and abs(abs(np.linalg.det(u)) - 1) <= tol
    )


@dataclass(frozen=True)
class EulerTriple:
    axes: tuple[Axis, Axis, Axis]
    angles: tuple[float, float, float]
    phase: float

    def matrix(self) -> np.ndarray:
        """``exp(i phase) R_A(t1) R_B(t2) R_C(t3)``."""
        (a, b, c), (t1, t2, t3) = self.axes, self.angles
        m = rotation_matrix(a, t1) @ rotation_matrix(b, t2) @ rotation_matrix(c, t3)
        return np.exp(1j * self.phase) * m


def _third_axis(a: Axis, b: Axis) -> Axis:
    (t,) = set(Axis) - {a, b}
    return t


@lru_cache(maxsize=None)
def _frame(first: Axis, middle: Axis) -> tuple[np.ndarray, float]:
    """SU(2) W with W P_first W^dag = Z, W P_middle W^dag = Y.

    Also returns the sign s with W P_other W^dag = s X for the remaining axis.
    """
    third = _third_axis(first, middle)
    q = np.zeros((3, 3))
    q[2, first.index] = 1.0
    q[1, middle.index] = 1.0
    q[0, third.index] = 1.0
    s = float(np.sign(np.linalg.det(q)))
    q[0, third.index] = s
    x, y, z, w = _SO3.from_matrix(q).as_quat()
    frame = w * I2 - 1j * (x * PAULI[Axis.X] + y * PAULI[Axis.Y] + z * PAULI[Axis.Z])
    return frame, s


def _zyz(u: np.ndarray) -> tuple[float, float, float]:
    """Angles (a, b, c) with u = e^{i phi} Rz(a) Ry(b) Rz(c), b in [0, pi]."""
    u00, u01, u10, u11 = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    cos_half = 0.5 * (abs(u00) + abs(u11))
    sin_half = 0.5 * (abs(u01) + abs(u10))
    b = 2.0 * math.atan2(sin_half, cos_half)
    total = float(np.angle(u11 * np.conj(u00)))  # a + c
    diff = float(np.angle(u10 * np.conj(-u01)))  # a - c
    if sin_half < GIMBAL_TOL:
        return wrap_angle(total), b, 0.0
    if cos_half < GIMBAL_TOL:
        return wrap_angle(diff), b, 0.0
    # (total, diff) fix a only modulo pi; the coarse estimate picks the branch.
    coarse = float(np.angle(u10 * np.conj(u00)))
    a = 0.5 * (total + diff)
    if abs(wrap_angle(a - coarse)) > math.pi / 2:
        a += math.pi
    c = total - a
    return wrap_angle(a), b, wrap_angle(c)


def euler_decompose(u: np.ndarray, axes: tuple[Axis, Axis, Axis]) -> EulerTriple:
    """Decompose u as exp(i phase) R_A(t1) R_B(t2) R_C(t3).

    Proper-Euler triples (A == C) return t2 in [0, pi]; Tait-Bryan triples
    return t2 in [-pi/2, pi/2].  At gimbal lock t3 = 0 and t1 takes the free
    angle.  Outer angles are reported in (-pi, pi]; angles within
    ``ZERO_ANGLE_TOL`` of zero are returned as exactly 0.
    """
    a_ax, b_ax, c_ax = axes
    if a_ax == b_ax or b_ax == c_ax:
        raise ValueError(f"adjacent Euler axes must differ, got {axes}")
    u = np.asarray(u, dtype=complex)
    frame, sign = _frame(a_ax, b_ax)
    local = frame @ u @ frame.conj().T
    if c_ax == a_ax:
        t1, t2, t3 = _zyz(local)
    else:
        # Rz(a) Ry(b) Rx(c) Ry(pi/2) = Rz(a) Ry(b + pi/2) Rz(c)
        t1, t2p, t3 = _zyz(local @ rotation_matrix(Axis.Y, math.pi / 2))
        t2 = t2p - math.pi / 2
        t3 = wrap_angle(sign * t3)
    # frame conjugation leaves ~1e-17 residue on angles that are exactly zero
    t1, t2, t3 = (0.0 if is_zero_angle(t) else t for t in (t1, t2, t3))
    recon = EulerTriple(axes, (t1, t2, t3), 0.0).matrix()
    phase = float(np.angle(np.trace(recon.conj().T @ u)))
    return EulerTriple(tuple(axes), (t1, t2, t3), phase)


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """``sqrt(max(0, 2 - |tr(u^dag v)|))`` for 2x2 unitaries.

    Evaluated without the cancellation in ``2 - |tr|``: with w = u^dag v
    normalised to SU(2), w = cos(t) I - i sin(t) n.P and
    2 - 2|cos t| = 2 sin^2 t / (1 + |cos t|).
    """
    if np.array_equal(u, v):
        return 0.0
    w = np.asarray(u).conj().T @ np.asarray(v)
    w = w / np.sqrt(np.linalg.det(w))
    cos_t = min(1.0, abs(np.trace(w)) / 2)
    sin2 = sum(abs(np.trace(PAULI[a] @ w)) ** 2 for a in Axis) / 4
    return math.sqrt(2.0 * sin2 / (1.0 + cos_t))


def aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of a - e^{i phi} b with phi chosen to align global phases."""
    a = np.asarray(a)
    b = np.asarray(b)
    ov = np.vdot(b, a)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(a - ph * b))


def _apply_1q(state: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    state = np.tensordot(m, state, axes=([1], [q]))
    return np.moveaxis(state, 0, q)


def _apply_cnot(state: np.ndarray, control: int, target: int) -> np.ndarray:
    state = state.copy()
    idx = [slice(None)] * state.ndim
    idx[control] = 1
    sub = state[tuple(idx)]
    t = target if target < control else target - 1
    state[tuple(idx)] = np.flip(sub, axis=t)
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n unitary, qubit 0 as the most significant tensor factor."""
    n = circuit.num_qubits
    if n > MAX_ORACLE_QUBITS:
        raise ValueError(f"dense oracle is capped at {MAX_ORACLE_QUBITS} qubits, got {n}")
    dim = 2**n
    state = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in circuit.gates:
        if isinstance(g, CNOT):
            state = _apply_cnot(state, g.control, g.target)
        else:
            state = _apply_1q(state, gate_matrix(g), g.qubit)
    return state.reshape(dim, dim)
