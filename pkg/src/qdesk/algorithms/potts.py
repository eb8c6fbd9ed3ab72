"""Potts-model partition function by exact enumeration, plus the two-qubit
QFT fragment the quantum pipeline runs on |+>, |->."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit, run_statevector
from ..transforms import qft_circuit

ENUMERATION_GUARD = 10**6


@dataclass(frozen=True)
class PottsModel:
    """q-state Potts model on a weighted graph at inverse temperature beta.

    H(sigma) = -sum_(i~j) J_ij [sigma_i = sigma_j].
    """

    n_vertices: int
    edges: tuple[tuple[int, int, float], ...]    # (i, j, J_ij)
    q: int
    beta: float

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("need q >= 2 states per vertex")
        edges = []
        for i, j, w in self.edges:
            i, j = int(i), int(j)
            if i == j or not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise ValueError(f"bad edge ({i},{j})")
            if not math.isfinite(w):
                raise ValueError("edge weights must be finite")
            edges.append((i, j, float(w)))
        object.__setattr__(self, "edges", tuple(edges))


def potts_partition(m: PottsModel) -> float:
    """Z = sum over all q^n configurations of exp(-beta H(sigma))."""
    n_conf = m.q**m.n_vertices
    if n_conf > ENUMERATION_GUARD:
        raise ValueError(f"{n_conf} configurations exceed the {ENUMERATION_GUARD} guard")
    # mixed-radix digits of every configuration, vectorized per edge
    confs = np.arange(n_conf)
    digits = [(confs // m.q**v) % m.q for v in range(m.n_vertices)]
    energy = np.zeros(n_conf)
    for i, j, w in m.edges:
        energy -= w * (digits[i] == digits[j])
    return float(np.exp(-m.beta * energy).sum())


def potts_qft_fragment(
    rng: np.random.Generator | None = None, shots: int | None = None
) -> dict[int, float] | dict[int, int]:
    """The QFT2 step on the cocycle inputs q[0]=|+>, q[1]=|-> (little-endian
    register order as scored; our qubit 0 therefore carries |->).

    Returns the exact gamma distribution, or sampled counts when shots is
    given.  Noiseless, the mass sits evenly on gamma = 1 and gamma = 3.
    """
    c = Circuit(2, 2)
    c.x(0).h(0)      # |-> on the most significant qubit
    c.h(1)           # |+> on the least significant qubit
    c.barrier()
    c.extend(qft_circuit(2))
    state = run_statevector(c)
    probs = state.probabilities()
    if shots is None:
        return {gamma: float(p) for gamma, p in enumerate(probs) if p > 1e-15}
    if rng is None:
        raise ValueError("sampling needs an rng")
    draws = rng.multinomial(shots, probs / probs.sum())
    return {gamma: int(cnt) for gamma, cnt in enumerate(draws) if cnt}
