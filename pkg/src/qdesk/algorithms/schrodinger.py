"""Split-operator simulation of the Schrodinger equation on a 2^n grid.

One step applies: QFT, momentum-centering X on qubit 0, the diagonal kinetic
phase exp(-i phi kappa^2) with kappa(m) = m - 2^(n-1) (the integer momentum
map), the centering undone, the inverse QFT, and finally the potential phase
exp(-i V(x) dt) in the coordinate basis.  phi is the characteristic phase a
unit momentum component acquires per step.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..qstate import RENORM_ATOL, StateVector
from ..transforms import qft_amplitudes


def schrodinger_evolve(
    initial: StateVector,
    potential: Callable[[int], float] | Sequence[float] | None,
    phi: float,
    steps: int,
) -> StateVector:
    """Evolve `initial` for `steps` split-operator steps."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    n = initial.n_qubits
    dim = 2**n
    if potential is None:
        vphase = np.zeros(dim)
    elif callable(potential):
        vphase = np.array([float(potential(x)) for x in range(dim)])
    else:
        vphase = np.asarray(potential, dtype=float)
        if vphase.shape != (dim,):
            raise ValueError(f"potential must list {dim} grid phases")
    center = np.arange(dim) ^ (dim // 2)            # X on the top qubit
    kappa = np.arange(dim) - dim // 2
    kinetic = np.exp(-1j * phi * kappa.astype(float) ** 2)
    vfactor = np.exp(-1j * vphase)
    amps = np.array(initial.amps)
    for _ in range(steps):
        amps = qft_amplitudes(amps)
        amps = amps[center]
        amps = amps * kinetic
        amps = amps[center]
        amps = qft_amplitudes(amps, inverse=True)
        amps = amps * vfactor
    return StateVector(amps, atol=RENORM_ATOL)
