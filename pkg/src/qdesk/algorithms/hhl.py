"""HHL linear-system solver for the desk-scale 2x2 instance.

The eigenvalue register holds lambda in {1, 2} as the two-bit integers
|01> and |10>, which pins the phase-estimation unitary to exp(2 pi i A / 4);
the conditioned ancilla rotations are then Ry(pi) and Ry(pi/3), i.e.
theta = 2 asin(C / lambda) with C = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import gates as G
from ..qstate import RENORM_ATOL, StateVector

_PAULI = {"x": G.X, "y": G.Y, "z": G.Z}


@dataclass(frozen=True)
class HhlProblem:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        if a.shape != (2, 2) or np.max(np.abs(a - a.T)) > 1e-10:
            raise ValueError("matrix must be 2x2 real symmetric")
        eig = np.sort(np.linalg.eigvalsh(a))
        if abs(eig[0] - 1.0) > 1e-9 or abs(eig[1] - 2.0) > 1e-9:
            raise ValueError(f"eigenvalues must be (1, 2), got {eig}")
        if abs(np.linalg.norm(b) - 1.0) > 1e-9:
            raise ValueError("b must be a unit vector")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def _prep_gate(b: np.ndarray) -> np.ndarray:
    """A unitary whose first column is b."""
    col = b / np.linalg.norm(b)
    other = np.array([-np.conj(col[1]), np.conj(col[0])])
    return np.stack([col, other], axis=1)


def hhl_state(p: HhlProblem) -> StateVector:
    """Full four-qubit state before ancilla post-selection.

    Layout: q0 rotation ancilla, q1 q2 eigenvalue register (q1 MSB),
    q3 memory holding |b| -> |x|.
    """
    n = 4
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    amps = G.apply_matrix(amps, n, _prep_gate(p.b), (3,))
    u = G.exp_hermitian_gate(p.a, -2 * math.pi / 4, name="expA").matrix  # exp(+i 2 pi A/4)

    def controlled(mat):
        dim = mat.shape[0]
        out = np.eye(2 * dim, dtype=complex)
        out[dim:, dim:] = mat
        return out

    from ..transforms import inverse_qft_circuit, qft_circuit

    # forward phase estimation: lambda lands in the register as an integer
    forward = [
        (G.H, (1,)), (G.H, (2,)),
        (controlled(u), (2, 3)), (controlled(u @ u), (1, 3)),
    ] + [
        (op.gate.matrix, tuple(t + 1 for t in op.targets))
        for op in inverse_qft_circuit(2).ops
    ]
    for mat, targets in forward:
        amps = G.apply_matrix(amps, n, mat, targets)
    # conditioned ancilla rotations: |01> -> Ry(pi), |10> -> Ry(pi/3)
    amps = G.apply_matrix(amps, n, controlled(_ry(math.pi)), (2, 0))
    amps = G.apply_matrix(amps, n, controlled(_ry(math.pi / 3)), (1, 0))
    # inverse phase estimation to disentangle the register
    backward = [
        (op.gate.matrix, tuple(t + 1 for t in op.targets))
        for op in qft_circuit(2).ops
    ] + [
        (controlled(u.conj().T @ u.conj().T), (1, 3)), (controlled(u.conj().T), (2, 3)),
        (G.H, (1,)), (G.H, (2,)),
    ]
    for mat, targets in backward:
        amps = G.apply_matrix(amps, n, mat, targets)
    return StateVector(amps, atol=RENORM_ATOL)


def _ry(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def hhl_solve(
    p: HhlProblem,
    observable: str,
    rng: np.random.Generator | None = None,
    shots: int | None = None,
) -> float:
    """<x|O|x> for |x> ~ A^-1 |b>, post-selecting the rotation ancilla on |1>.

    Exact mode computes the conditioned expectation from amplitudes; sampled
    mode measures `shots` trajectories in the rotated basis and keeps the
    ancilla-1 events.
    """
    obs = observable.lower()
    if obs not in _PAULI:
        raise ValueError("observable must be one of x, y, z")
    state = hhl_state(p)
    amps = np.array(state.amps).reshape(2, 8)      # ancilla axis first
    kept = amps[1].reshape(4, 2)                    # register x memory
    weight = float(np.sum(np.abs(kept) ** 2))
    if weight <= 0:
        raise RuntimeError("post-selection has zero weight")
    if shots is None:
        op = _PAULI[obs]
        val = complex(np.einsum("rm,mn,rn->", kept.conj(), op, kept)) / weight
        return float(val.real)
    if rng is None:
        raise ValueError("sampled mode needs an rng")
    # rotate memory to the measurement basis, then sample (ancilla, memory)
    rot = {"z": G.I2, "x": G.H, "y": G.H @ G.S.conj().T}[obs]
    rotated = G.apply_matrix(np.array(state.amps), 4, rot, (3,))
    probs = (np.abs(rotated.reshape(2, 4, 2)) ** 2).sum(axis=1).reshape(-1)
    draws = rng.multinomial(shots, probs / probs.sum())
    kept_counts = draws[2], draws[3]                # ancilla=1, memory in {0,1}
    total = kept_counts[0] + kept_counts[1]
    if total == 0:
        raise RuntimeError("post-selection yielded zero shots")
    return (kept_counts[0] - kept_counts[1]) / total


def hhl_theory(p: HhlProblem, observable: str) -> float:
    """Direct classical value of <x|O|x> with x = A^-1 b normalized."""
    x = np.linalg.solve(p.a, p.b)
    x = x / np.linalg.norm(x)
    op = _PAULI[observable.lower()]
    return float(np.real(np.conj(x) @ (op @ x)))
