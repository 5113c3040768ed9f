import math

import hypothesis
import hypothesis.strategies as st
import numpy as np
import pytest

from tcount_ising.circuit import CNOT, FIXED_GATES, Axis, Circuit, FixedGate, Rotation

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False, allow_infinity=False)


@st.composite
def circuits(draw, max_qubits=4, max_gates=40, fixed=True):
    n = draw(st.integers(1, max_qubits))
    kinds = ["rot", "cx"] + (["fixed"] if fixed else [])
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        kind = draw(st.sampled_from(kinds))
        if kind == "cx" and n > 1:
            c = draw(st.integers(0, n - 1))
            t = draw(st.integers(0, n - 2))
            gates.append(CNOT(c, t + (t >= c)))
        elif kind == "fixed":
            gates.append(FixedGate(draw(st.integers(0, n - 1)), draw(st.sampled_from(FIXED_GATES))))
        else:
            gates.append(Rotation(draw(st.integers(0, n - 1)), draw(st.sampled_from(list(Axis))), draw(angles)))
    return Circuit(n, tuple(gates))


def haar_su2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert on it."""

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} [{number:>2}] {title}: {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
