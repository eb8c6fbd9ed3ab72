"""Gate algebra: named gates, controlled construction, and indexed application.

Gate matrices act on their own k qubits with targets[0] as the most
significant index, matching the package-wide leftmost-ket convention.  For
controlled gates the control qubits come first in the target list.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qstate import RENORM_ATOL, StateVector

UNITARY_ATOL = 1e-10

SQ2 = 1.0 / math.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) * SQ2
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
CNOT = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
TOFFOLI = np.eye(8, dtype=complex)[[0, 1, 2, 3, 4, 5, 7, 6]]


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -cmath.exp(1j * lam) * s],
         [cmath.exp(1j * phi) * s, cmath.exp(1j * (lam + phi)) * c]],
        dtype=complex,
    )


def _rx(t): return np.array([[math.cos(t / 2), -1j * math.sin(t / 2)],
                             [-1j * math.sin(t / 2), math.cos(t / 2)]], dtype=complex)


def _ry(t): return np.array([[math.cos(t / 2), -math.sin(t / 2)],
                             [math.sin(t / 2), math.cos(t / 2)]], dtype=complex)


def _rz(t): return np.diag([cmath.exp(-0.5j * t), cmath.exp(0.5j * t)]).astype(complex)


def _phase(t): return np.diag([1.0, cmath.exp(1j * t)]).astype(complex)


@dataclass(frozen=True)
class Gate:
    """A unitary on `arity` qubits with a display name."""

    name: str
    arity: int
    matrix: np.ndarray
    params: tuple[float, ...] = ()

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        dim = 2**self.arity
        if m.shape != (dim, dim):
            raise ValueError(f"gate {self.name!r}: matrix shape {m.shape} != {dim}x{dim}")
        if np.max(np.abs(m @ m.conj().T - np.eye(dim))) > max(UNITARY_ATOL, 1e-10):
            raise ValueError(f"gate {self.name!r} is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def dagger(self) -> "Gate":
        return Gate(self.name + "dg", self.arity, self.matrix.conj().T, self.params)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gate)
            and self.name == other.name
            and self.params == other.params
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.name, self.params, self.arity))


@dataclass(frozen=True)
class GateApplication:
    gate: Gate
    targets: tuple[int, ...]

    def __post_init__(self):
        ts = tuple(int(t) for t in self.targets)
        if len(ts) != self.gate.arity:
            raise ValueError(f"{self.gate.name}: {len(ts)} targets for arity {self.gate.arity}")
        if len(set(ts)) != len(ts):
            raise ValueError(f"duplicate targets {ts}")
        object.__setattr__(self, "targets", ts)


_FIXED = {
    "i": I2, "id": I2, "x": X, "y": Y, "z": Z, "h": H,
    "s": S, "sdg": S.conj().T, "t": T, "tdg": T.conj().T,
    "cx": CNOT, "cz": CZ, "swap": SWAP, "ccx": TOFFOLI,
}
_PARAM = {
    "r": (1, lambda p: _phase(p[0])),
    "p": (1, lambda p: _phase(p[0])),
    "u1": (1, lambda p: _phase(p[0])),
    "u2": (2, lambda p: SQ2 * np.array(
        [[1, -cmath.exp(1j * p[1])],
         [cmath.exp(1j * p[0]), cmath.exp(1j * (p[0] + p[1]))]], dtype=complex)),
    "u3": (3, lambda p: _u3(*p)),
    "rx": (1, lambda p: _rx(p[0])),
    "ry": (1, lambda p: _ry(p[0])),
    "rz": (1, lambda p: _rz(p[0])),
    "cu1": (1, lambda p: np.diag([1, 1, 1, cmath.exp(1j * p[0])]).astype(complex)),
    "cp": (1, lambda p: np.diag([1, 1, 1, cmath.exp(1j * p[0])]).astype(complex)),
    "cu3": (3, lambda p: np.block(
        [[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), _u3(*p)]]).astype(complex)),
}
_ARITY = {"cx": 2, "cz": 2, "swap": 2, "cu1": 2, "cp": 2, "cu3": 2, "ccx": 3}


_ALIASES = {"i": "id", "r": "u1", "p": "u1", "cp": "cu1"}


def standard_gate(name: str, params: tuple[float, ...] | list[float] = ()) -> Gate:
    """Named gate with QASM-style parameter order (u2(phi,lam), u3(theta,phi,lam)).

    Aliases collapse to canonical QASM names (i->id, r/p->u1, cp->cu1) so any
    standard gate serializes and round-trips through the text format.
    """
    key = name.lower()
    key = _ALIASES.get(key, key)
    params = tuple(float(p) for p in params)
    if key in _FIXED:
        if params:
            raise ValueError(f"gate {name!r} takes no parameters")
        mat = _FIXED[key]
    elif key in _PARAM:
        count, make = _PARAM[key]
        if len(params) != count:
            raise ValueError(f"gate {name!r} takes {count} parameter(s), got {len(params)}")
        mat = make(params)
    else:
        raise ValueError(f"unknown gate {name!r}")
    return Gate(key, _ARITY.get(key, 1), mat, params)


def controlled(u: Gate, name: str | None = None) -> Gate:
    """|0><0| (x) I  +  |1><1| (x) U, the control being the new first qubit."""
    dim = 2**u.arity
    mat = np.zeros((2 * dim, 2 * dim), dtype=complex)
    mat[:dim, :dim] = np.eye(dim)
    mat[dim:, dim:] = u.matrix
    return Gate(name or f"c{u.name}", u.arity + 1, mat, u.params)


def gate_from_matrix(m, name: str, atol: float = 1e-8) -> Gate:
    """Wrap an explicit matrix, rejecting non-unitaries and bad dimensions."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    d = m.shape[0]
    if d < 2 or (d & (d - 1)) != 0:
        raise ValueError(f"dimension {d} is not a power of two")
    if np.max(np.abs(m @ m.conj().T - np.eye(d))) > atol:
        raise ValueError(f"matrix {name!r} is not unitary within {atol}")
    return Gate(name, d.bit_length() - 1, m)


def exp_hermitian_gate(h, t: float, name: str = "exp") -> Gate:
    """exp(-i h t) by dense eigendecomposition of the Hermitian generator h."""
    h = np.asarray(h, dtype=complex)
    if np.max(np.abs(h - h.conj().T)) > UNITARY_ATOL:
        raise ValueError("generator is not Hermitian")
    w, v = np.linalg.eigh(h)
    mat = (v * np.exp(-1j * w * t)) @ v.conj().T
    return Gate(name, h.shape[0].bit_length() - 1, mat)


def apply_matrix(amps: np.ndarray, n: int, matrix: np.ndarray, targets: tuple[int, ...]) -> np.ndarray:
    """Multiply a k-qubit matrix into an n-qubit amplitude vector by stride iteration."""
    k = len(targets)
    st = amps.reshape([2] * n)
    st = np.moveaxis(st, targets, range(k))
    st = matrix @ st.reshape(2**k, -1)
    st = np.moveaxis(st.reshape([2] * n), range(k), targets)
    return np.ascontiguousarray(st).reshape(-1)


def apply(s: StateVector, app: GateApplication) -> StateVector:
    """Act with app.gate on the indexed qubits of s (identity elsewhere)."""
    n = s.n_qubits
    if any(not 0 <= t < n for t in app.targets):
        raise ValueError(f"targets {app.targets} out of range for {n} qubits")
    return StateVector(apply_matrix(np.array(s.amps), n, app.gate.matrix, app.targets),
                       atol=RENORM_ATOL)


def apply_gate(s: StateVector, gate: Gate, *targets: int) -> StateVector:
    return apply(s, GateApplication(gate, tuple(targets)))


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - |Tr(A^dag B)| / dim: zero iff the matrices agree up to global phase."""
    d = a.shape[0]
    return float(1.0 - abs(np.trace(a.conj().T @ b)) / d)


def gates_equal_up_to_phase(a: Gate, b: Gate, atol: float = 1e-8) -> bool:
    return a.arity == b.arity and phase_distance(a.matrix, b.matrix) < atol
