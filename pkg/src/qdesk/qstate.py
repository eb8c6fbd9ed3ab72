"""Pure and mixed quantum states with dense amplitudes.

Basis convention used everywhere in this package: the leftmost symbol of a
ket |q0 q1 ... q_{n-1}> is qubit 0 and maps to the MOST significant bit of
the basis-state integer.  So for two qubits, |10> is index 2, and qubit 0
owns the 2^(n-1) bit.  The QASM layer documents the conversion for callers
used to little-endian registers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_ATOL = 1e-10          # construction tolerance
RENORM_ATOL = 1e-9         # post-measurement tolerance
PSD_ATOL = 1e-9


def _as_complex_vector(amps) -> np.ndarray:
    v = np.asarray(amps, dtype=complex).reshape(-1)
    n = v.shape[0]
    if n == 0 or (n & (n - 1)) != 0:
        raise ValueError(f"amplitude count must be a power of two, got {n}")
    return v


class StateVector:
    """Normalized complex amplitudes over the 2^n computational basis states."""

    __slots__ = ("amps",)

    def __init__(self, amps, *, atol: float = NORM_ATOL):
        v = _as_complex_vector(amps)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > atol:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        v = v / norm
        v.setflags(write=False)
        self.amps = v

    @property
    def n_qubits(self) -> int:
        return int(self.amps.shape[0]).bit_length() - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def fidelity(self, other: "StateVector") -> float:
        return float(abs(np.vdot(self.amps, other.amps)) ** 2)

    def __eq__(self, other) -> bool:
        return isinstance(other, StateVector) and np.array_equal(self.amps, other.amps)

    def __repr__(self) -> str:
        terms = [
            f"{a:.4g}|{i:0{self.n_qubits}b}>"
            for i, a in enumerate(self.amps)
            if abs(a) > 1e-9
        ]
        return " + ".join(terms) if terms else "0"


def zero_state(n_qubits: int) -> StateVector:
    """|0...0> on n qubits."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    v = np.zeros(2**n_qubits, dtype=complex)
    v[0] = 1.0
    return StateVector(v)


def basis_state(n_qubits: int, index: int) -> StateVector:
    if not 0 <= index < 2**n_qubits:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    v = np.zeros(2**n_qubits, dtype=complex)
    v[index] = 1.0
    return StateVector(v)


def from_bits(bits: str) -> StateVector:
    """Product state from a string over '0', '1', '+', '-'."""
    single = {
        "0": np.array([1.0, 0.0], dtype=complex),
        "1": np.array([0.0, 1.0], dtype=complex),
        "+": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2),
        "-": np.array([1.0, -1.0], dtype=complex) / np.sqrt(2),
    }
    if not bits or any(b not in single for b in bits):
        raise ValueError(f"bad ket string {bits!r}")
    v = np.array([1.0], dtype=complex)
    for b in bits:
        v = np.kron(v, single[b])
    return StateVector(v)


class DensityMatrix:
    """Trace-one Hermitian PSD matrix; mixed states for tomography and PCA."""

    __slots__ = ("elems",)

    def __init__(self, elems, *, atol: float = NORM_ATOL):
        m = np.asarray(elems, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValueError("density matrix must be square")
        if abs(np.trace(m) - 1.0) > max(atol, 1e-10):
            raise ValueError(f"trace is {np.trace(m):.6g}, expected 1")
        if np.max(np.abs(m - m.conj().T)) > max(atol, 1e-10):
            raise ValueError("matrix is not Hermitian")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -PSD_ATOL:
            raise ValueError("matrix has a negative eigenvalue")
        m.setflags(write=False)
        self.elems = m

    @property
    def n_qubits(self) -> int:
        d = int(self.elems.shape[0])
        if d & (d - 1):
            raise ValueError(f"dimension {d} is not a qubit register")
        return d.bit_length() - 1

    def purity(self) -> float:
        return float(np.real(np.trace(self.elems @ self.elems)))


@dataclass(frozen=True)
class Observable:
    """Hermitian operator tied to a real-valued experiment."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if np.max(np.abs(m - m.conj().T)) > NORM_ATOL:
            raise ValueError(f"observable {self.label!r} is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class MeasurementOutcome:
    bits: str
    probability: float
    post_state: StateVector


@dataclass(frozen=True)
class SchmidtForm:
    """Bipartite singular-value form sum_i lambda_i |xi_i>|phi_i>."""

    coefficients: np.ndarray
    left_basis: tuple[StateVector, ...]
    right_basis: tuple[StateVector, ...]

    def reconstruct(self) -> StateVector:
        v = sum(
            lam * np.kron(l.amps, r.amps)
            for lam, l, r in zip(self.coefficients, self.left_basis, self.right_basis)
        )
        return StateVector(v, atol=RENORM_ATOL)


# ---------------------------------------------------------------------------
# operations on pure states

def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product |a>|b>; qubit indices of b follow those of a."""
    return StateVector(np.kron(a.amps, b.amps), atol=RENORM_ATOL)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> = sum_i conj(a_i) b_i."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("inner product needs equal qubit counts")
    return complex(np.vdot(a.amps, b.amps))


def outer_product(a: StateVector, b: StateVector) -> np.ndarray:
    """|a><b| as a dense matrix."""
    return np.outer(a.amps, b.amps.conj())


def measure_all(s: StateVector, rng: np.random.Generator) -> MeasurementOutcome:
    """Sample a full computational-basis measurement."""
    probs = s.probabilities()
    probs = probs / probs.sum()
    idx = int(rng.choice(probs.shape[0], p=probs))
    n = s.n_qubits
    return MeasurementOutcome(
        bits=format(idx, f"0{n}b"),
        probability=float(probs[idx]),
        post_state=basis_state(n, idx),
    )


def measure_subset(
    s: StateVector, qubits: list[int], rng: np.random.Generator
) -> MeasurementOutcome:
    """Measure a subset of qubits; the post-state keeps every qubit.

    Outcome probabilities are the marginals of |amps|^2 over the measured
    qubits; the post-state is the renormalized projection onto the outcome.
    """
    n = s.n_qubits
    if len(qubits) == 0:
        raise ValueError("empty qubit list")
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n for q in qubits):
        raise ValueError(f"bad qubit indices {qubits} for {n} qubits")
    probs = s.probabilities().reshape([2] * n)
    others = tuple(q for q in range(n) if q not in qubits)
    marg = probs.sum(axis=others) if others else probs
    # marg axes are the measured qubits in ascending order; reorder to `qubits`
    asc = sorted(qubits)
    marg = np.moveaxis(marg, range(len(qubits)), [qubits.index(q) for q in asc])
    flat = marg.reshape(-1)
    flat = flat / flat.sum()
    outcome = int(rng.choice(flat.shape[0], p=flat))
    bits = format(outcome, f"0{len(qubits)}b")

    proj = np.array(s.amps).reshape([2] * n)
    index: list[slice | int] = [slice(None)] * n
    for b, q in zip(bits, qubits):
        index[q] = int(b)
    keep = proj[tuple(index)].copy()
    proj = np.zeros_like(proj)
    proj[tuple(index)] = keep
    post = proj.reshape(-1)
    post = post / np.linalg.norm(post)
    return MeasurementOutcome(bits=bits, probability=float(flat[outcome]),
                              post_state=StateVector(post, atol=RENORM_ATOL))


def expectation(s: StateVector, o: Observable) -> float:
    """<s|O|s>, checked to be real to 1e-9."""
    if o.matrix.shape[0] != s.amps.shape[0]:
        raise ValueError("observable dimension does not match state")
    val = complex(np.vdot(s.amps, o.matrix @ s.amps))
    if abs(val.imag) > 1e-9:
        raise ValueError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def basis_change_measure(
    s: StateVector, basis: list[StateVector], rng: np.random.Generator
) -> MeasurementOutcome:
    """Measure onto an orthonormal basis by rotating it to the computational one."""
    dim = s.amps.shape[0]
    if len(basis) != dim:
        raise ValueError(f"need {dim} basis states, got {len(basis)}")
    mat = np.stack([b.amps for b in basis])          # rows are <Phi_i| before conj
    gram = mat.conj() @ mat.T
    if np.max(np.abs(gram - np.eye(dim))) > 1e-8:
        raise ValueError("basis is not orthonormal")
    rotated = StateVector(mat.conj() @ s.amps, atol=RENORM_ATOL)  # U = sum |i><Phi_i|
    return measure_all(rotated, rng)


# ---------------------------------------------------------------------------
# mixed states

def density_from_ensemble(pairs: list[tuple[float, StateVector]]) -> DensityMatrix:
    """rho = sum_i p_i |psi_i><psi_i| from an ensemble of pure states."""
    if not pairs:
        raise ValueError("empty ensemble")
    ps = np.array([p for p, _ in pairs], dtype=float)
    if ps.min() < 0 or abs(ps.sum() - 1.0) > 1e-9:
        raise ValueError("probabilities must be nonnegative and sum to 1")
    dim = pairs[0][1].amps.shape[0]
    rho = np.zeros((dim, dim), dtype=complex)
    for p, psi in pairs:
        if psi.amps.shape[0] != dim:
            raise ValueError("ensemble states differ in qubit count")
        rho += p * np.outer(psi.amps, psi.amps.conj())
    return DensityMatrix(rho)


def partial_trace(rho: DensityMatrix, keep: list[int]) -> DensityMatrix:
    """Reduced density matrix on `keep` (in the order given)."""
    n = rho.n_qubits
    if len(set(keep)) != len(keep) or any(not 0 <= q < n for q in keep):
        raise ValueError(f"bad kept indices {keep}")
    traced = [q for q in range(n) if q not in keep]
    t = np.array(rho.elems).reshape([2] * (2 * n))
    perm = list(keep) + traced + [n + q for q in keep] + [n + q for q in traced]
    t = t.transpose(perm)
    k, m = len(keep), len(traced)
    t = t.reshape(2**k, 2**m, 2**k, 2**m)
    return DensityMatrix(np.einsum("ajbj->ab", t))


def schmidt_decompose(s: StateVector, cut: int) -> SchmidtForm:
    """SVD of the amplitude matrix across qubits [0, cut) | [cut, n).

    Coefficients come out descending.  Each left vector's first nonzero
    component is made real positive (phase pushed into the right vector) so
    that repeated runs are bitwise reproducible.
    """
    n = s.n_qubits
    if not 0 < cut < n:
        raise ValueError(f"cut must be interior, got {cut} for n={n}")
    a = np.array(s.amps).reshape(2**cut, 2 ** (n - cut))
    u, lam, vh = np.linalg.svd(a)
    k = min(a.shape)
    left, right = [], []
    for i in range(k):
        col = u[:, i].copy()
        row = vh[i, :].copy()
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            ph = col[nz[0]] / abs(col[nz[0]])
            col = col / ph
            row = row * ph
        left.append(StateVector(col, atol=RENORM_ATOL))
        right.append(StateVector(row, atol=RENORM_ATOL))
    return SchmidtForm(coefficients=lam[:k], left_basis=tuple(left), right_basis=tuple(right))


def purify(rho: DensityMatrix) -> StateVector:
    """2n-qubit pure state sum_i sqrt(p_i) |psi_i>|i> whose left trace is rho."""
    p, v = np.linalg.eigh(rho.elems)
    p = np.clip(p, 0.0, None)
    amps = (v * np.sqrt(p)).reshape(-1)     # amps[j, i] = sqrt(p_i) v[j, i]
    return StateVector(amps, atol=RENORM_ATOL)
