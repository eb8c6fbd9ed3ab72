"""Quantum state estimation from measurement frequencies.

POVM simulation, least-squares linear inversion, the optimal 2-norm PSD
projection, and projected-gradient maximum likelihood.  The single-qubit
quorum is {z, y, x}; two qubits use the product bases {zz, yy, xx, zx, yz}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import DensityMatrix, StateVector

_SINGLE_BASIS_VECTORS = {
    "z": (np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)),
    "y": (
        np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2),
        np.array([1.0, -1.0j], dtype=complex) / math.sqrt(2),
    ),
    "x": (
        np.array([1.0, 1.0], dtype=complex) / math.sqrt(2),
        np.array([1.0, -1.0], dtype=complex) / math.sqrt(2),
    ),
}


@dataclass(frozen=True)
class Povm:
    """Projector groups; within each group the projectors sum to identity."""

    groups: tuple[tuple[str, tuple[np.ndarray, ...]], ...]

    def __post_init__(self):
        for name, projectors in self.groups:
            dim = projectors[0].shape[0]
            total = np.zeros((dim, dim), dtype=complex)
            for p in projectors:
                if np.max(np.abs(p - p.conj().T)) > 1e-9:
                    raise ValueError(f"projector in group {name!r} is not Hermitian")
                if np.linalg.eigvalsh(p).min() < -1e-9:
                    raise ValueError(f"projector in group {name!r} is not PSD")
                total += p
            if np.max(np.abs(total - np.eye(dim))) > 1e-9:
                raise ValueError(f"group {name!r} does not resolve the identity")

    @property
    def dim(self) -> int:
        return self.groups[0][1][0].shape[0]

    def labelled(self):
        for name, projectors in self.groups:
            for k, p in enumerate(projectors):
                yield f"{name}:{k}", name, p


def single_qubit_povm(bases: str = "zyx") -> Povm:
    groups = []
    for b in bases:
        vs = _SINGLE_BASIS_VECTORS[b]
        groups.append((b, tuple(np.outer(v, v.conj()) for v in vs)))
    return Povm(groups=tuple(groups))


ALL_PAIR_BASES = ("zz", "zy", "zx", "yz", "yy", "yx", "xz", "xy", "xx")

# The five-group quorum of the Bell experiment.  It spans an 11-dimensional
# traceless subspace, enough to identify the Bell family; full tomography of
# arbitrary two-qubit states needs ALL_PAIR_BASES.
def two_qubit_povm(bases: tuple[str, ...] = ("zz", "yy", "xx", "zx", "yz")) -> Povm:
    groups = []
    for pair in bases:
        vs0 = _SINGLE_BASIS_VECTORS[pair[0]]
        vs1 = _SINGLE_BASIS_VECTORS[pair[1]]
        projectors = tuple(
            np.kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
            for a in vs0
            for b in vs1
        )
        groups.append((pair, projectors))
    return Povm(groups=tuple(groups))


@dataclass(frozen=True)
class MeasurementRecord:
    """Counts per projector label, with per-group shot totals."""

    counts: dict[str, int]
    shots_per_group: dict[str, int]

    def frequency(self, label: str, group: str) -> float:
        return self.counts[label] / self.shots_per_group[group]

    def to_json_dict(self) -> dict[str, dict[str, int]]:
        """Serialize as {basis -> {projector label -> count}}."""
        out: dict[str, dict[str, int]] = {}
        for key, count in self.counts.items():
            group, label = key.split(":")
            out.setdefault(group, {})[label] = count
        return out


def record_from_json(data: dict[str, dict[str, int]]) -> MeasurementRecord:
    """Rebuild a record from the {basis -> {label -> count}} serialization."""
    counts: dict[str, int] = {}
    shots: dict[str, int] = {}
    for group, labels in data.items():
        total = 0
        for label, count in labels.items():
            counts[f"{group}:{label}"] = count
            total += count
        if total <= 0:
            raise ValueError(f"group {group!r} has no counts")
        shots[group] = total
    if not counts:
        raise ValueError("empty measurement record")
    return MeasurementRecord(counts=counts, shots_per_group=shots)


def _born_probabilities(state, povm: Povm) -> dict[str, float]:
    if isinstance(state, StateVector):
        rho = np.outer(state.amps, state.amps.conj())
    else:
        rho = np.asarray(state.elems if isinstance(state, DensityMatrix) else state)
    out = {}
    for label, _, proj in povm.labelled():
        out[label] = float(np.real(np.trace(proj @ rho)))
    return out


def simulate_povm(
    state, povm: Povm, shots: int, rng: np.random.Generator
) -> MeasurementRecord:
    """Multinomial counts with probabilities Tr(P_i rho), shots per group."""
    probs = _born_probabilities(state, povm)
    counts: dict[str, int] = {}
    shots_per_group: dict[str, int] = {}
    for name, projectors in povm.groups:
        labels = [f"{name}:{k}" for k in range(len(projectors))]
        p = np.clip(np.array([probs[l] for l in labels]), 0, None)
        draw = rng.multinomial(shots, p / p.sum())
        for l, cnt in zip(labels, draw):
            counts[l] = int(cnt)
        shots_per_group[name] = shots
    return MeasurementRecord(counts=counts, shots_per_group=shots_per_group)


def exact_record(state, povm: Povm, scale: int = 10**9) -> MeasurementRecord:
    """Infinite-shot record: frequencies equal the Born probabilities."""
    probs = _born_probabilities(state, povm)
    counts = {l: probs[l] * scale for l, _, _ in povm.labelled()}
    return MeasurementRecord(counts=counts, shots_per_group={
        name: scale for name, _ in povm.groups
    })


def _hermitian_basis(dim: int) -> list[np.ndarray]:
    """Orthonormal (Frobenius) basis of traceless Hermitian matrices."""
    out = []
    for i in range(dim):
        for j in range(i + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[i, j] = m[j, i] = 1 / math.sqrt(2)
            out.append(m)
            m = np.zeros((dim, dim), dtype=complex)
            m[i, j] = -1j / math.sqrt(2)
            m[j, i] = 1j / math.sqrt(2)
            out.append(m)
    for k in range(1, dim):
        m = np.zeros((dim, dim), dtype=complex)
        for i in range(k):
            m[i, i] = 1.0
        m[k, k] = -k
        out.append(m / math.sqrt(k * (k + 1)))
    return out


def linear_inversion(rec: MeasurementRecord, povm: Povm) -> np.ndarray:
    """Least-squares solution of Tr(P_i rho) = omega_i with Tr rho pinned to 1.

    The result is Hermitian by construction but may fail PSD for noisy
    frequencies; project it with psd_project before using it as a state.
    """
    dim = povm.dim
    basis = _hermitian_basis(dim)
    rows, rhs = [], []
    for label, group, proj in povm.labelled():
        omega = rec.frequency(label, group)
        rows.append([float(np.real(np.trace(proj @ b))) for b in basis])
        rhs.append(omega - float(np.real(np.trace(proj))) / dim)
    design = np.array(rows)
    rank = np.linalg.matrix_rank(design, tol=1e-9)
    if rank < len(basis):
        raise ValueError(
            f"projector set is informationally incomplete (rank {rank} < {len(basis)})"
        )
    coeff, *_ = np.linalg.lstsq(design, np.array(rhs), rcond=None)
    rho = np.eye(dim, dtype=complex) / dim
    for c, b in zip(coeff, basis):
        rho = rho + c * b
    return rho


def psd_project(m) -> DensityMatrix:
    """Nearest (Frobenius) trace-one PSD matrix via eigenvalue simplex
    projection (the water-filling rule)."""
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m - m.conj().T)) > 1e-8:
        raise ValueError("input must be Hermitian")
    if abs(np.trace(m).real - 1.0) > 1e-6:
        raise ValueError("input trace must be 1 within 1e-6")
    return DensityMatrix(_simplex_project(m), atol=1e-8)


def _simplex_project(m: np.ndarray) -> np.ndarray:
    """Eigenvalue projection onto the trace-one PSD cone for Hermitian m."""
    vals, vecs = np.linalg.eigh(m)
    vals = vals.real
    # project eigenvalues onto the probability simplex
    order = np.argsort(vals)[::-1]
    sorted_vals = vals[order]
    csum = np.cumsum(sorted_vals)
    k = 0
    for i in range(len(vals)):
        if sorted_vals[i] + (1 - csum[i]) / (i + 1) > 0:
            k = i
    shift = (1 - csum[k]) / (k + 1)
    new_sorted = np.clip(sorted_vals + shift, 0, None)
    new_sorted[k + 1:] = 0.0
    new_vals = np.empty_like(vals)
    new_vals[order] = new_sorted
    rho = (vecs * new_vals) @ vecs.conj().T
    return rho / np.trace(rho).real


@dataclass(frozen=True)
class MlConfig:
    max_iters: int = 5000
    # 1e-13 rather than 1e-10: near-pure two-qubit targets sit ~5e-6 from the
    # iterate where gains first dip below 1e-10, which would break the 1e-6
    # estimator-consistency guarantee
    min_gain: float = 1e-13


@dataclass(frozen=True)
class MlResult:
    rho: DensityMatrix
    log_likelihood: float
    iterations: int
    objective_trace: tuple[float, ...]


def ml_estimate(rec: MeasurementRecord, povm: Povm, config: MlConfig | None = None) -> MlResult:
    """Projected-gradient ascent on sum_i omega_i ln Tr(P_i rho).

    The line search starts at 0.5/L with L read from the projector norms,
    doubles along the gradient ray while the projected objective keeps
    rising, and backtracks by halving otherwise; the accepted objective
    trace is therefore non-decreasing.  Zero-frequency terms drop out.
    """
    config = config or MlConfig()
    dim = povm.dim
    terms = []
    for label, group, proj in povm.labelled():
        omega = rec.frequency(label, group)
        if omega > 0:
            terms.append((omega, proj))

    def objective(rho: np.ndarray) -> float:
        total = 0.0
        for omega, proj in terms:
            val = float(np.real(np.trace(proj @ rho)))
            if val <= 1e-300:
                return -np.inf
            total += omega * math.log(val)
        return total

    def gradient(rho: np.ndarray) -> np.ndarray:
        grad = np.zeros((dim, dim), dtype=complex)
        for omega, proj in terms:
            grad += (omega / float(np.real(np.trace(proj @ rho)))) * proj
        return grad

    lipschitz = sum(omega * np.linalg.norm(proj, 2) for omega, proj in terms)
    step0 = 0.5 / max(lipschitz, 1e-12)
    rho = np.eye(dim, dtype=complex) / dim
    obj = objective(rho)
    trace = [obj]
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        grad = gradient(rho)
        step = step0
        cand = _simplex_project(rho + step * grad)
        cand_obj = objective(cand)
        if cand_obj >= obj:
            while True:
                bigger = _simplex_project(rho + 2 * step * grad)
                bigger_obj = objective(bigger)
                if bigger_obj > cand_obj:
                    step, cand, cand_obj = 2 * step, bigger, bigger_obj
                else:
                    break
        else:
            accepted = False
            while step > 1e-18 * step0:
                step *= 0.5
                cand = _simplex_project(rho + step * grad)
                cand_obj = objective(cand)
                if cand_obj >= obj:
                    accepted = True
                    break
            if not accepted:
                break
        gain = cand_obj - obj
        rho, obj = cand, cand_obj
        trace.append(obj)
        if gain < config.min_gain:
            break
    return MlResult(
        rho=DensityMatrix(rho, atol=1e-8),
        log_likelihood=obj,
        iterations=iterations,
        objective_trace=tuple(trace),
    )


def spectral_report(rho: DensityMatrix) -> list[tuple[float, np.ndarray]]:
    """Descending (eigenvalue, eigenvector) pairs; each eigenvector's first
    nonzero component is made real positive."""
    vals, vecs = np.linalg.eigh(rho.elems)
    out = []
    for i in np.argsort(vals)[::-1]:
        v = vecs[:, i].copy()
        nz = np.flatnonzero(np.abs(v) > 1e-12)
        if nz.size:
            v = v * (abs(v[nz[0]]) / v[nz[0]])
        out.append((float(vals[i].real), v))
    return out
