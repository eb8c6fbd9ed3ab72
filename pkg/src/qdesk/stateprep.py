"""Circuit synthesis for 1-, 2-, and 4-qubit states and 2-qubit gates.

CNOT budgets: an arbitrary two-qubit state costs exactly 1 CNOT (Schmidt
circuit B, CNOT, U x V), an arbitrary two-qubit gate exactly 3 (the
Rz/Ry-core template), and an arbitrary four-qubit state at most 9
(two-qubit Schmidt coefficients + two cross CNOTs + two synthesized basis
gates).  Every synthesis is verified by simulation against its target; the
constructors raise if the bound is missed.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import gates as G
from .circuit import Circuit, circuit_unitary, run_statevector
from .qstate import StateVector

# The magic basis: SU(2) x SU(2) becomes SO(4) under conjugation by MAGIC.
MAGIC = np.array(
    [[1, 1j, 0, 0], [0, 0, 1j, 1], [0, 0, 1j, -1], [1, -1j, 0, 0]], dtype=complex
) / math.sqrt(2)


@dataclass(frozen=True)
class EulerAngles:
    """u = exp(i alpha) Rz(beta) Ry(gamma) Rz(delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def reconstruct(self) -> np.ndarray:
        return cmath.exp(1j * self.alpha) * (_rz(self.beta) @ _ry(self.gamma) @ _rz(self.delta))


@dataclass(frozen=True)
class SynthesizedCircuit:
    """A synthesis result.

    `fidelity` is |<target|prepared>|^2 for state preparation and the
    phase-invariant matrix distance 1 - |Tr(U_target^dag U)|/dim for gate
    synthesis (near 1 and near 0 respectively when the synthesis is good).
    """

    circuit: Circuit
    fidelity: float
    cnot_count: int


def _rz(t: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * t), cmath.exp(0.5j * t)])


def _ry(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def euler_decompose(u) -> EulerAngles:
    """ZYZ Euler angles of a 2x2 unitary; gamma lands in [0, pi] and beta in
    (-pi, pi], with the global phase soaking up branch flips."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.max(np.abs(u @ u.conj().T - np.eye(2))) > 1e-10:
        raise ValueError("input is not a 2x2 unitary")
    alpha = cmath.phase(np.linalg.det(u)) / 2
    v = cmath.exp(-1j * alpha) * u
    gamma = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    if abs(v[0, 0]) > 1e-9 and abs(v[1, 0]) > 1e-9:
        splus = -2 * cmath.phase(v[0, 0])
        sminus = 2 * cmath.phase(v[1, 0])
        beta, delta = (splus + sminus) / 2, (splus - sminus) / 2
    elif abs(v[0, 0]) > 1e-9:
        beta, delta = -2 * cmath.phase(v[0, 0]), 0.0
    else:
        beta, delta = 2 * cmath.phase(v[1, 0]), 0.0
    beta = (beta + math.pi) % (2 * math.pi) - math.pi
    delta = (delta + math.pi) % (2 * math.pi) - math.pi
    angles = EulerAngles(alpha, beta, gamma, delta)
    if np.max(np.abs(angles.reconstruct() - u)) > 1e-9:
        angles = EulerAngles(alpha + math.pi, beta, gamma, delta)
    if np.max(np.abs(angles.reconstruct() - u)) > 1e-10:
        raise AssertionError("Euler reconstruction failed")
    return angles


def _emit_1q(c: Circuit, u: np.ndarray, qubit: int, tol: float = 1e-12) -> None:
    """Append a 2x2 unitary as a single u3 (global phase dropped); identity
    up to phase is skipped."""
    if G.phase_distance(u, np.eye(2)) < tol:
        return
    ang = euler_decompose(u)
    c.u3(qubit, ang.gamma, ang.beta, ang.delta)


# ---------------------------------------------------------------------------
# single-qubit state preparation

def prep_single(alpha: complex, beta: complex) -> SynthesizedCircuit:
    """One u3 taking |0> to alpha|0> + beta|1> (the cos/sin column gate)."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-9:
        raise ValueError("amplitudes must be normalized")
    c = Circuit(1)
    if abs(beta) > 1e-12:
        rel = cmath.phase(beta) - cmath.phase(alpha)
        theta = 2 * math.atan2(abs(beta), abs(alpha))
        # lambda = pi - phi completes the column to the natural reflection,
        # e.g. (1,1)/sqrt(2) synthesizes H itself
        c.u3(0, theta, rel, math.pi - rel)
    prepared = run_statevector(c)
    target = StateVector(np.array([alpha, beta], dtype=complex))
    fid = prepared.fidelity(target)
    out = SynthesizedCircuit(circuit=c, fidelity=fid, cnot_count=0)
    if fid < 1 - 1e-12:
        raise AssertionError(f"single-qubit prep fidelity {fid}")
    return out


# ---------------------------------------------------------------------------
# two-qubit state preparation (1 CNOT)

def prep_two_qubit(target) -> SynthesizedCircuit:
    """Schmidt circuit (U x V) CNOT (B x I) |00>: exactly one CNOT."""
    t = np.asarray(target, dtype=complex).reshape(-1)
    if t.shape != (4,) or abs(np.linalg.norm(t) - 1) > 1e-9:
        raise ValueError("target must be a normalized 4-vector")
    a = t.reshape(2, 2)
    w, lam, vh = np.linalg.svd(a)                    # a = W diag(lam) Vh
    u_gate = w                                       # columns xi_i
    v_gate = vh.T                                    # columns phi_i = Vh rows
    b_gate = np.array([[lam[0], -lam[1]], [lam[1], lam[0]]], dtype=complex)
    c = Circuit(2)
    _emit_1q(c, b_gate, 0)
    c.cx(0, 1)
    _emit_1q(c, u_gate, 0)
    _emit_1q(c, v_gate, 1)
    prepared = run_statevector(c)
    fid = float(abs(np.vdot(t, prepared.amps)) ** 2)
    if fid < 1 - 1e-10:
        raise AssertionError(f"two-qubit prep fidelity {fid}")
    return SynthesizedCircuit(circuit=c, fidelity=fid, cnot_count=1)


# ---------------------------------------------------------------------------
# arbitrary two-qubit gates (3 CNOTs)

def _orth_diagonalize_symmetric_unitary(w: np.ndarray, tol: float = 1e-7) -> np.ndarray:
    """Real orthogonal P with P^T W P diagonal, for unitary symmetric W.

    Re(W) and Im(W) are commuting real symmetric matrices; diagonalize the
    real part, then rotate inside each degenerate block to settle the
    imaginary part.
    """
    re, im = w.real, w.imag
    vals, p = np.linalg.eigh(re)
    i = 0
    dim = w.shape[0]
    while i < dim:
        j = i
        while j + 1 < dim and vals[j + 1] - vals[i] < tol:
            j += 1
        if j > i:
            block = p[:, i: j + 1]
            s = block.T @ im @ block
            _, rot = np.linalg.eigh((s + s.T) / 2)
            p[:, i: j + 1] = block @ rot
        i = j + 1
    return p


def _match_columns(p: np.ndarray, dp: np.ndarray, dq: np.ndarray, q: np.ndarray):
    """Reorder q's columns so its diagonal eigenvalues line up with p's."""
    order: list[int] = []
    used = [False] * len(dp)
    for lam in dp:
        j = min(
            (k for k in range(len(dq)) if not used[k]),
            key=lambda k: abs(dq[k] - lam),
        )
        used[j] = True
        order.append(j)
    return q[:, order]


def _extract_su2su2_prefactors(u4: np.ndarray, v4: np.ndarray):
    """A,B,C,D in SU(2) with (A x B) v4 (C x D) = u4 for same-coset SU(4) pairs."""
    u = MAGIC.conj().T @ u4 @ MAGIC
    v = MAGIC.conj().T @ v4 @ MAGIC
    uu, vv = u @ u.T, v @ v.T
    p = _orth_diagonalize_symmetric_unitary(uu)
    q = _orth_diagonalize_symmetric_unitary(vv)
    q = _match_columns(p, np.diag(p.T @ uu @ p), np.diag(q.T @ vv @ q), q)
    if np.linalg.det(p) < 0:
        p = p.copy()
        p[:, -1] *= -1
    if np.linalg.det(q) < 0:
        q = q.copy()
        q[:, -1] *= -1
    g = p @ q.T
    h = v.conj().T @ q @ p.T @ u
    if np.max(np.abs(h.imag)) > 1e-8:
        raise AssertionError("coset extraction failed: H not real")
    ab = MAGIC @ g @ MAGIC.conj().T
    cd = MAGIC @ h.real @ MAGIC.conj().T
    return (*_kron_factor(ab), *_kron_factor(cd))


def _kron_factor(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split m = A x B by the rank-one rearrangement SVD."""
    k = m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    u, s, vh = np.linalg.svd(k)
    a = math.sqrt(s[0]) * u[:, 0].reshape(2, 2)
    b = math.sqrt(s[0]) * vh[0, :].reshape(2, 2)
    return a, b


def synth_two_qubit_gate(target) -> SynthesizedCircuit:
    """Arbitrary 4x4 unitary as the 3-CNOT template.

    The core rotation angles come from the eigenphases e^(ix), e^(iy),
    e^(iz) of U (Y x Y) U^T (Y x Y) in the magic basis: R1 = Rz((y+z)/2) on
    the top wire and R2 = Ry((x+z)/2), R3 = Ry((x+y)/2) on the bottom,
    bracketed by local gates recovered from the coset decomposition.  The
    result is checked against the target up to global phase.
    """
    t = np.asarray(target, dtype=complex)
    if t.shape != (4, 4) or np.max(np.abs(t @ t.conj().T - np.eye(4))) > 1e-9:
        raise ValueError("target must be a 4x4 unitary")
    su = t / np.linalg.det(t) ** 0.25
    swap_u = cmath.exp(1j * math.pi / 4) * (G.SWAP @ su)
    m = MAGIC.conj().T @ swap_u @ MAGIC
    gamma = m @ m.T
    p = _orth_diagonalize_symmetric_unitary(gamma)
    phases = sorted(np.angle(np.diag(p.T @ gamma @ p)))
    x, y, z = phases[0], phases[1], phases[2]
    alpha, beta, delta = (x + y) / 2, (x + z) / 2, (z + y) / 2

    cnot10 = np.eye(4, dtype=complex)[[0, 3, 2, 1]]
    cnot01 = G.CNOT
    core = (
        G.SWAP
        @ cnot10
        @ np.kron(np.eye(2), _ry(alpha))
        @ cnot01
        @ np.kron(_rz(delta), _ry(beta))
        @ cnot10
    )
    a_top, b_bot, c_top, d_bot = _extract_su2su2_prefactors(swap_u, core)

    c = Circuit(2)
    _emit_1q(c, c_top, 0)
    _emit_1q(c, d_bot, 1)
    c.cx(1, 0)
    _emit_1q(c, _rz(delta), 0)
    _emit_1q(c, _ry(beta), 1)
    c.cx(0, 1)
    _emit_1q(c, _ry(alpha), 1)
    c.cx(1, 0)
    # the trailing SWAP of the core cancels against the one added to the
    # target, exchanging which wire receives each closing local gate
    _emit_1q(c, b_bot, 0)
    _emit_1q(c, a_top, 1)
    dist = G.phase_distance(t, circuit_unitary(c))
    if dist > 1e-8:
        raise AssertionError(f"two-qubit synthesis distance {dist:.3e}")
    return SynthesizedCircuit(circuit=c, fidelity=dist, cnot_count=3)


# ---------------------------------------------------------------------------
# four-qubit state preparation (<= 9 CNOTs)

def prep_four_qubit(target) -> SynthesizedCircuit:
    """Schmidt cut 2|2: coefficient prep, two cross CNOTs, two synthesized
    basis gates; at most 9 CNOTs in total."""
    t = np.asarray(target, dtype=complex).reshape(-1)
    if t.shape != (16,) or abs(np.linalg.norm(t) - 1) > 1e-9:
        raise ValueError("target must be a normalized 16-vector")
    c = Circuit(4)
    if abs(t[0]) ** 2 < 1 - 1e-12:
        a = t.reshape(4, 4)
        w, lam, vh = np.linalg.svd(a)
        v4 = vh.T                                    # columns phi_i
        coeff = prep_two_qubit(lam)
        for op in coeff.circuit.ops:
            c.ops.append(op)
        c.cx(0, 2)
        c.cx(1, 3)
        u_part = synth_two_qubit_gate(w)
        for op in u_part.circuit.ops:
            c.ops.append(op)
        v_part = synth_two_qubit_gate(v4)
        for op in v_part.circuit.ops:
            c.append(op.gate, *(q + 2 for q in op.targets))
    prepared = run_statevector(c)
    fid = float(abs(np.vdot(t, prepared.amps)) ** 2)
    from .circuit import metrics

    cnots = metrics(c).cnot_count
    if fid < 1 - 1e-8 or cnots > 9:
        raise AssertionError(f"four-qubit prep fidelity {fid}, {cnots} CNOTs")
    return SynthesizedCircuit(circuit=c, fidelity=fid, cnot_count=cnots)
