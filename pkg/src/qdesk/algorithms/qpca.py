"""Two-feature principal component analysis via the purity circuit.

Pipeline: mean-center the features, form the sample covariance Sigma,
normalize to rho = Sigma/Tr(Sigma), purify to a two-qubit state, prepare two
copies, and run the controlled-SWAP interference test whose ancilla bias
<Z> equals the purity Tr(rho^2).  The eigenvalues of Sigma follow from
e = Tr(Sigma) (1 +- sqrt(2P - 1)) / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import gates as G
from ..qstate import DensityMatrix, purify
from ..stateprep import prep_two_qubit


@dataclass(frozen=True)
class QpcaReport:
    covariance: np.ndarray
    purity: float
    eigenvalues: tuple[float, float]
    shots: int | None


def purity_circuit_bias(psi_amps: np.ndarray) -> float:
    """<Z> on the ancilla of the 5-qubit controlled-SWAP purity circuit.

    Layout: q0 ancilla, (q1,q2) first copy, (q3,q4) second copy; H on q0,
    CSWAP(q0; q1, q3), H on q0.
    """
    n = 5
    amps = np.kron(np.array([1.0, 0.0], dtype=complex), np.kron(psi_amps, psi_amps))
    amps = G.apply_matrix(amps, n, G.H, (0,))
    cswap = G.controlled(G.Gate("swap", 2, G.SWAP)).matrix
    amps = G.apply_matrix(amps, n, cswap, (0, 1, 3))
    amps = G.apply_matrix(amps, n, G.H, (0,))
    p0 = float(np.sum(np.abs(amps.reshape(2, -1)[0]) ** 2))
    return 2 * p0 - 1


def qpca_two_feature(
    x1,
    x2,
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> QpcaReport:
    """Covariance eigenvalues of two features through the quantum purity test."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.shape != x2.shape or x1.ndim != 1 or x1.size < 2:
        raise ValueError("need two equal-length feature vectors (>= 2 samples)")
    sigma = np.cov(np.stack([x1 - x1.mean(), x2 - x2.mean()]))
    tr = float(np.trace(sigma))
    if tr <= 1e-12:
        raise ValueError("covariance trace is zero; features carry no variance")
    rho = DensityMatrix(sigma / tr)
    psi = purify(rho)
    prepared = prep_two_qubit(psi.amps)          # the U_prep = (U x V) CNOT (B x I) circuit
    from ..circuit import run_statevector

    psi_amps = run_statevector(prepared.circuit).amps
    bias = purity_circuit_bias(np.array(psi_amps))
    if shots is not None:
        if rng is None:
            raise ValueError("sampled mode needs an rng")
        p0 = (1 + bias) / 2
        hits = int(rng.binomial(shots, min(max(p0, 0.0), 1.0)))
        bias = 2 * hits / shots - 1
    purity = float(np.clip(bias, 0.5, 1.0))
    root = math.sqrt(max(2 * purity - 1, 0.0))
    e1 = tr * (1 + root) / 2
    e2 = tr * (1 - root) / 2
    return QpcaReport(covariance=sigma, purity=purity,
                      eigenvalues=(e1, e2), shots=shots)
