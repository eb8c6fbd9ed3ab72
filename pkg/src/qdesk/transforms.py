"""Reusable algorithm paradigms: QFT, phase estimation, Hadamard test,
Grover/diffusion operators, amplitude amplification, and the unknown-count
search schedule."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gates as G
from .circuit import Circuit
from .qstate import RENORM_ATOL, StateVector


# ---------------------------------------------------------------------------
# oracles

@dataclass(frozen=True)
class Oracle:
    """Black-box |x>|q> -> |x>|f(x) XOR q> with the ancilla as the last qubit."""

    n_inputs: int
    marked: frozenset[int]
    realized_gate: G.Gate

    @staticmethod
    def from_predicate(n_inputs: int, predicate: Callable[[int], bool]) -> "Oracle":
        marked = frozenset(x for x in range(2**n_inputs) if predicate(x))
        return Oracle.from_marked(n_inputs, marked)

    @staticmethod
    def from_marked(n_inputs: int, marked) -> "Oracle":
        marked = frozenset(int(m) for m in marked)
        if any(not 0 <= m < 2**n_inputs for m in marked):
            raise ValueError("marked item out of range")
        dim = 2 ** (n_inputs + 1)
        mat = np.zeros((dim, dim), dtype=complex)
        for x in range(2**n_inputs):
            block = G.X if x in marked else G.I2
            mat[2 * x: 2 * x + 2, 2 * x: 2 * x + 2] = block
        return Oracle(n_inputs, marked, G.Gate("oracle", n_inputs + 1, mat))

    def predicate(self, x: int) -> bool:
        return x in self.marked


@dataclass(frozen=True)
class PhaseEstimate:
    bits: str
    t: int

    @property
    def phase(self) -> float:
        return int(self.bits, 2) / 2**self.t


@dataclass(frozen=True)
class BoyerOutcome:
    result: int | None
    grover_iterations: int
    oracle_calls: int


# ---------------------------------------------------------------------------
# quantum Fourier transform

def qft_circuit(n: int, include_swaps: bool = True) -> Circuit:
    """QFT on n qubits: H plus controlled phases, then the reversal network
    so the circuit matrix literally equals the Fourier matrix W."""
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    c = Circuit(n)
    for j in range(n):
        c.h(j)
        for k in range(j + 1, n):
            c.cu1(k, j, math.pi / 2 ** (k - j))
    if include_swaps:
        for q in range(n // 2):
            c.swap(q, n - 1 - q)
    return c


def inverse_qft_circuit(n: int, include_swaps: bool = True) -> Circuit:
    """Adjoint of qft_circuit (ops reversed, phases conjugated)."""
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    c = Circuit(n)
    if include_swaps:
        for q in reversed(range(n // 2)):
            c.swap(q, n - 1 - q)
    for j in reversed(range(n)):
        for k in reversed(range(j + 1, n)):
            c.cu1(k, j, -math.pi / 2 ** (k - j))
        c.h(j)
    return c


def qft_amplitudes(amps: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Apply the Fourier matrix W (or its adjoint) to an amplitude vector.

    W_jk = omega^(jk)/sqrt(N) with omega = exp(2 pi i / N), which is the
    unitary the QFT circuit realizes; evaluated via the FFT for speed.
    """
    n = amps.shape[0]
    if inverse:
        return np.fft.fft(amps) / math.sqrt(n)
    return np.fft.ifft(amps) * math.sqrt(n)


# ---------------------------------------------------------------------------
# phase estimation

def phase_distribution(u: G.Gate, state: StateVector, t: int) -> np.ndarray:
    """Exact outcome probabilities of the t ancilla qubits (ancilla 0 is the
    most significant bit of the estimated phase)."""
    if t < 1:
        raise ValueError("need at least one ancilla")
    n_sys = u.arity
    if state.n_qubits != n_sys:
        raise ValueError("eigenstate dimension does not match the unitary")
    n = t + n_sys
    amps = np.zeros(2**n, dtype=complex)
    amps.reshape(2**t, 2**n_sys)[0, :] = state.amps
    h = G.H
    for a in range(t):
        amps = G.apply_matrix(amps, n, h, (a,))
    power = u.matrix
    for i in range(t):
        ctrl = t - 1 - i
        cu = np.zeros((2 ** (n_sys + 1),) * 2, dtype=complex)
        cu[: 2**n_sys, : 2**n_sys] = np.eye(2**n_sys)
        cu[2**n_sys:, 2**n_sys:] = power
        amps = G.apply_matrix(amps, n, cu, (ctrl, *range(t, n)))
        power = power @ power
    for op in inverse_qft_circuit(t).ops:
        amps = G.apply_matrix(amps, n, op.gate.matrix, op.targets)
    probs = np.abs(amps.reshape(2**t, 2**n_sys)) ** 2
    return probs.sum(axis=1)


def phase_estimate(
    u: G.Gate, eigenstate: StateVector, t: int, rng: np.random.Generator
) -> PhaseEstimate:
    """Sample the t-bit phase register; exact eigenphases j/2^t come out
    deterministically."""
    probs = phase_distribution(u, eigenstate, t)
    outcome = int(rng.choice(probs.shape[0], p=probs / probs.sum()))
    return PhaseEstimate(bits=format(outcome, f"0{t}b"), t=t)


# ---------------------------------------------------------------------------
# Hadamard test

def hadamard_test(
    u: G.Gate,
    psi: StateVector,
    part: str = "real",
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """Estimate Re or Im of <psi|U|psi> from the ancilla bias 2 P0 - 1.

    shots=None is the exact mode (P0 from amplitudes); otherwise P0 is a
    binomial estimate over `shots` samples.
    """
    if part not in ("real", "imaginary"):
        raise ValueError("part must be 'real' or 'imaginary'")
    if psi.n_qubits != u.arity:
        raise ValueError("state dimension does not match the unitary")
    dim = psi.amps.shape[0]
    anc0 = psi.amps / math.sqrt(2)
    anc1 = psi.amps / math.sqrt(2)
    if part == "imaginary":
        anc1 = -1j * anc1
    anc1 = u.matrix @ anc1
    # final Hadamard on the ancilla
    top = (anc0 + anc1) / math.sqrt(2)
    p0 = float(np.sum(np.abs(top) ** 2))
    if shots is None:
        return 2 * p0 - 1
    if rng is None:
        raise ValueError("sampled mode needs an rng")
    hits = int(rng.binomial(shots, min(max(p0, 0.0), 1.0)))
    return 2 * hits / shots - 1


# ---------------------------------------------------------------------------
# Grover machinery

def diffusion_matrix(n: int) -> np.ndarray:
    """2|psi><psi| - I over n qubits, psi the uniform superposition."""
    dim = 2**n
    return 2.0 / dim * np.ones((dim, dim), dtype=complex) - np.eye(dim)


def grover_operator(o: Oracle) -> G.Gate:
    """G = (2|psi><psi| - I) O on the n+1 qubits of the realized oracle."""
    full = np.kron(diffusion_matrix(o.n_inputs), G.I2) @ o.realized_gate.matrix
    return G.Gate("grover", o.n_inputs + 1, full)


def grover_iterations(n_marked: int, n_items: int, ceiling_formula: bool = False) -> int:
    """Iteration count: round(pi / (4 asin(sqrt(M/N))) - 1/2) clamped to >= 1.

    ceiling_formula=True selects the textbook ceil(pi sqrt(N/M) / 4) instead;
    the two differ already at N=4, M=1 (1 vs 2) where a single iteration is
    exact.
    """
    if not 0 < n_marked <= n_items:
        raise ValueError("need 0 < marked <= items")
    if ceiling_formula:
        return math.ceil(math.pi * math.sqrt(n_items / n_marked) / 4)
    theta = math.asin(math.sqrt(n_marked / n_items))
    return max(1, round(math.pi / (4 * theta) - 0.5))


def grover_state(o: Oracle, iterations: int) -> StateVector:
    """Exact main-register plus |-> ancilla state after k Grover iterations."""
    n = o.n_inputs
    minus = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)
    amps = np.kron(np.full(2**n, 1 / math.sqrt(2**n), dtype=complex), minus)
    g = grover_operator(o).matrix
    for _ in range(iterations):
        amps = g @ amps
    return StateVector(amps, atol=RENORM_ATOL)


def grover_success_probability(o: Oracle, iterations: int) -> float:
    """Probability that measuring the main register yields a marked item."""
    state = grover_state(o, iterations)
    probs = state.probabilities().reshape(2**o.n_inputs, 2).sum(axis=1)
    return float(sum(probs[m] for m in o.marked))


def _measure_main_register(amps: np.ndarray, n: int, rng: np.random.Generator) -> int:
    probs = np.abs(amps.reshape(2**n, 2)) ** 2
    probs = probs.sum(axis=1)
    return int(rng.choice(probs.shape[0], p=probs / probs.sum()))


def amplitude_amplify(
    prep: G.Gate, o: Oracle, iterations: int, rng: np.random.Generator
) -> str:
    """Apply G_U = U (2|0><0| - I) U^dag O `iterations` times to U|0...0> and
    measure the main register."""
    n = o.n_inputs
    if prep.arity != n:
        raise ValueError("prep gate must act on the oracle inputs")
    dim = 2**n
    refl0 = -np.eye(dim, dtype=complex)
    refl0[0, 0] = 1.0
    refl = prep.matrix @ refl0 @ prep.matrix.conj().T
    gu = np.kron(refl, G.I2) @ o.realized_gate.matrix
    minus = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)
    amps = np.kron(prep.matrix[:, 0], minus)
    for _ in range(iterations):
        amps = gu @ amps
    return format(_measure_main_register(amps, n, rng), f"0{n}b")


def amplitude_amplify_success(prep: G.Gate, o: Oracle, iterations: int) -> float:
    """Exact marked-outcome probability of amplitude_amplify (test oracle hook)."""
    n = o.n_inputs
    dim = 2**n
    refl0 = -np.eye(dim, dtype=complex)
    refl0[0, 0] = 1.0
    refl = prep.matrix @ refl0 @ prep.matrix.conj().T
    gu = np.kron(refl, G.I2) @ o.realized_gate.matrix
    minus = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)
    amps = np.kron(prep.matrix[:, 0], minus)
    for _ in range(iterations):
        amps = gu @ amps
    probs = (np.abs(amps.reshape(dim, 2)) ** 2).sum(axis=1)
    return float(sum(probs[m] for m in o.marked))


def boyer_search(
    o: Oracle,
    rng: np.random.Generator,
    iteration_budget: int | None = None,
) -> BoyerOutcome:
    """Search with an unknown number of marked items.

    Schedule: m starts at 1; each failed attempt draws the iteration count
    uniformly from [0, m) and grows m by 6/5 up to ceil(sqrt(N)); after m has
    sat at the cap for 3 consecutive failed rounds the search reports None.
    Each attempt succeeds with probability >= 1/4 when anything is marked.
    """
    n = o.n_inputs
    n_items = 2**n
    cap = math.ceil(math.sqrt(n_items))
    g = grover_operator(o).matrix
    minus = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)
    uniform = np.kron(np.full(n_items, 1 / math.sqrt(n_items), dtype=complex), minus)

    m = 1
    rounds_at_cap = 0
    used = 0
    calls = 0
    while True:
        j = int(rng.integers(0, m))
        if iteration_budget is not None:
            j = min(j, max(iteration_budget - used, 0))
        amps = uniform
        for _ in range(j):
            amps = g @ amps
        used += j
        calls += j + 1  # the classical check of the measured item counts once
        candidate = _measure_main_register(amps, n, rng)
        if o.predicate(candidate):
            return BoyerOutcome(result=candidate, grover_iterations=used, oracle_calls=calls)
        if iteration_budget is not None and used >= iteration_budget:
            return BoyerOutcome(result=None, grover_iterations=used, oracle_calls=calls)
        if m >= cap:
            rounds_at_cap += 1
            if rounds_at_cap >= 3:
                return BoyerOutcome(result=None, grover_iterations=used, oracle_calls=calls)
        m = min(math.ceil(1.2 * m), cap)
