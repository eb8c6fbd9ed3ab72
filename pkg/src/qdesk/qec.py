"""Repetition-code experiments: unencoded vs three-qubit encoded circuits
under configurable noise channels, decoded by majority voting.

Channels (combinable):
  gate_over_rotation_sigma  per-gate angle error, Z-axis for T gates and the
                            Hadamard axis for H, as in the circuit noise model;
  readout_flip_p            independent bit flip on every measured bit;
  rotation_sigma            a single correlated angle error on the final
                            logical rotation, flipping all encoded qubits
                            together (the channel majority voting cannot see).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gates as G

_H_AXIS = (G.X + G.Z) / math.sqrt(2)


@dataclass(frozen=True)
class QecNoise:
    gate_over_rotation_sigma: float = 0.0
    readout_flip_p: float = 0.0
    rotation_sigma: float = 0.0

    def __post_init__(self):
        if self.gate_over_rotation_sigma < 0 or self.rotation_sigma < 0:
            raise ValueError("sigmas must be nonnegative")
        if not 0 <= self.readout_flip_p <= 1:
            raise ValueError("readout flip probability must lie in [0,1]")


@dataclass(frozen=True)
class QecReport:
    p_unencoded: float
    p_encoded: float
    outcome_breakdown: dict[str, float]
    shots: int


def majority_decode(bits: str) -> int:
    """Majority vote over a 3-bit readout."""
    if len(bits) != 3 or any(b not in "01" for b in bits):
        raise ValueError("need a 3-bit string")
    return 1 if bits.count("1") >= 2 else 0


def _batched_1q(states: np.ndarray, mat: np.ndarray) -> np.ndarray:
    return states @ mat.T


def _apply_gate_noise_batch(
    states: np.ndarray,
    axis: np.ndarray,
    embed,
    sigma: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Compose exp(-i dphi G) with G^2 = I over a batch of states."""
    dphi = rng.normal(0.0, sigma, size=states.shape[0])
    rotated = embed(states, axis)
    return np.cos(dphi)[:, None] * states - 1j * np.sin(dphi)[:, None] * rotated


def run_single_qubit_test(
    idle_gates: int,
    noise: QecNoise,
    shots: int,
    rng: np.random.Generator,
) -> float:
    """|0> -> H -> T^idle_gates -> H -> measure; returns the wrong-outcome rate.

    idle_gates must be a multiple of 8 so the T chain is the identity.
    """
    if idle_gates % 8 != 0 or idle_gates < 0:
        raise ValueError("idle_gates must be a nonnegative multiple of 8")
    if shots < 1:
        raise ValueError("shots must be positive")
    states = np.zeros((shots, 2), dtype=complex)
    states[:, 0] = 1.0
    sig = noise.gate_over_rotation_sigma

    def embed1(st, axis):
        return st @ axis.T

    states = _batched_1q(states, G.H)
    if sig > 0:
        states = _apply_gate_noise_batch(states, _H_AXIS, embed1, sig, rng)
    for _ in range(idle_gates):
        states = _batched_1q(states, G.T)
        if sig > 0:
            states = _apply_gate_noise_batch(states, G.Z, embed1, sig, rng)
    states = _batched_1q(states, G.H)
    if sig > 0:
        states = _apply_gate_noise_batch(states, _H_AXIS, embed1, sig, rng)
    if noise.rotation_sigma > 0:
        # matched-strength analogue of the correlated logical-rotation error
        states = _apply_gate_noise_batch(states, G.Y, embed1, noise.rotation_sigma, rng)
    p1 = np.abs(states[:, 1]) ** 2
    outcomes = (rng.random(shots) < p1).astype(int)
    if noise.readout_flip_p > 0:
        outcomes ^= rng.random(shots) < noise.readout_flip_p
    return float(np.mean(outcomes))


_XXX = np.zeros((8, 8), dtype=complex)
for _i in range(8):
    _XXX[7 - _i, _i] = 1.0


def run_ghz_test(
    idle_gates: int,
    noise: QecNoise,
    shots: int,
    rng: np.random.Generator,
) -> QecReport:
    """GHZ encode, T-chain identity, decode to |000>, measure all.

    Outcomes with a single 1 are corrected by majority voting; two or more
    1s are misinterpreted as the logical |111>.  Reports the misinterpretation
    rate beside the matched unencoded rate.  The idle T gates are dealt
    round-robin across the three qubits (their total phase on the GHZ
    subspace is what matters).
    """
    if idle_gates % 8 != 0 or idle_gates < 0:
        raise ValueError("idle_gates must be a nonnegative multiple of 8")
    if shots < 1:
        raise ValueError("shots must be positive")
    n = 3
    states = np.zeros((shots, 8), dtype=complex)
    states[:, 0] = 1.0
    sig = noise.gate_over_rotation_sigma

    def embed_at(mat: np.ndarray, targets: tuple[int, ...]) -> np.ndarray:
        full = np.eye(8, dtype=complex).reshape(-1)
        return G.apply_matrix(full, 2 * n, mat, targets).reshape(8, 8)

    def gate(states, mat, targets, axis):
        full = embed_at(mat, targets)
        states = states @ full.T
        if sig > 0 and axis is not None:
            ax = embed_at(axis, targets)
            states = _apply_gate_noise_batch(states, ax, lambda st, a: st @ a.T, sig, rng)
        return states

    # encode |-_L> = (|000> - |111>)/sqrt(2)
    states = gate(states, G.X, (0,), G.X)
    states = gate(states, G.H, (0,), _H_AXIS)
    states = gate(states, G.CNOT, (0, 1), G.CNOT)
    states = gate(states, G.CNOT, (0, 2), G.CNOT)
    for k in range(idle_gates):
        states = gate(states, G.T, (k % 3,), G.Z)
    # decode back to |000>
    states = gate(states, G.CNOT, (0, 2), G.CNOT)
    states = gate(states, G.CNOT, (0, 1), G.CNOT)
    states = gate(states, G.H, (0,), _H_AXIS)
    states = gate(states, G.X, (0,), G.X)
    if noise.rotation_sigma > 0:
        states = _apply_gate_noise_batch(
            states, _XXX, lambda st, a: st @ a.T, noise.rotation_sigma, rng
        )

    probs = np.abs(states) ** 2
    probs = probs / probs.sum(axis=1, keepdims=True)
    cum = np.cumsum(probs, axis=1)
    draws = (cum < rng.random((shots, 1))).sum(axis=1)
    if noise.readout_flip_p > 0:
        flips = (rng.random((shots, 3)) < noise.readout_flip_p).astype(int)
        mask = flips[:, 0] * 4 + flips[:, 1] * 2 + flips[:, 2]
        draws = draws ^ mask
    breakdown: dict[str, float] = {}
    for pattern in range(8):
        frac = float(np.mean(draws == pattern))
        if frac > 0:
            breakdown[format(pattern, "03b")] = frac
    p_encoded = sum(frac for bits, frac in breakdown.items() if majority_decode(bits) == 1)
    p_unencoded = run_single_qubit_test(idle_gates, noise, shots, rng)
    return QecReport(
        p_unencoded=p_unencoded,
        p_encoded=p_encoded,
        outcome_breakdown=breakdown,
        shots=shots,
    )
