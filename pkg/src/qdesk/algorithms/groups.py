"""Finite groups by composition table, their regular representations as
permutation gates, and Hadamard-test matrix elements."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import gates as G
from ..qstate import StateVector
from ..transforms import hadamard_test


@dataclass(frozen=True)
class FiniteGroup:
    """Group of order N given by table[i][j] = index of g_i . g_j."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        t = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(t)
        if any(len(row) != n for row in t):
            raise ValueError("composition table must be square")
        if any(not 0 <= v < n for row in t for v in row):
            raise ValueError("closure violated: entry out of range")
        identity = None
        for e in range(n):
            if all(t[e][j] == j and t[j][e] == j for j in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element")
        for i in range(n):
            if not any(t[i][p] == identity and t[p][i] == identity for p in range(n)):
                raise ValueError(f"element {i} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise ValueError("associativity violated")
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "_identity", identity)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self._identity

    def compose(self, i: int, j: int) -> int:
        return self.table[i][j]


def cyclic_group(n: int) -> FiniteGroup:
    """Addition mod n: a_i . a_j = a_(i+j mod n)."""
    if n < 1:
        raise ValueError("order must be positive")
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


_S3_PERMS = ((1, 2, 3), (2, 3, 1), (3, 1, 2), (2, 1, 3), (1, 3, 2), (3, 2, 1))


def symmetric_group_s3() -> FiniteGroup:
    """S3 with elements ordered [123],[231],[312],[213],[132],[321] and
    composition (s_i . s_j)(x) = s_j(s_i(x)), which gives s4.s2 = s6."""
    def compose(i: int, j: int) -> int:
        pi, pj = _S3_PERMS[i], _S3_PERMS[j]
        out = tuple(pj[pi[x] - 1] for x in range(3))
        return _S3_PERMS.index(out)

    return FiniteGroup(tuple(tuple(compose(i, j) for j in range(6)) for i in range(6)))


def regular_representation(g: FiniteGroup, element: int) -> G.Gate:
    """Permutation gate R(g_k) with R_ij = [g_i = g_k . g_j], padded with
    identity rows up to the next power of two."""
    n = g.order
    if not 0 <= element < n:
        raise ValueError(f"element {element} out of range")
    dim = 1 << max(1, (n - 1).bit_length())
    mat = np.eye(dim, dtype=complex)
    mat[:n, :n] = 0.0
    for j in range(n):
        mat[g.compose(element, j), j] = 1.0
    return G.Gate(f"R(g{element})", dim.bit_length() - 1, mat)


def rep_matrix_element(
    g: FiniteGroup,
    element: int,
    psi: StateVector,
    part: str = "real",
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """Hadamard-test estimate of Re or Im <psi| R(g_element) |psi>."""
    gate = regular_representation(g, element)
    if psi.n_qubits != gate.arity:
        raise ValueError(
            f"state must live on the padded representation ({gate.arity} qubits)"
        )
    return hadamard_test(gate, psi, part=part, shots=shots, rng=rng)


def group_element_state(g: FiniteGroup, elements: list[int]) -> StateVector:
    """Equal superposition of the kets |g_i> for the listed elements."""
    dim = 1 << max(1, (g.order - 1).bit_length())
    v = np.zeros(dim, dtype=complex)
    for e in elements:
        if not 0 <= e < g.order:
            raise ValueError(f"element {e} out of range")
        v[e] = 1.0
    v /= np.linalg.norm(v)
    return StateVector(v)
