"""Discrete-time coined quantum walk on a cycle of 2^k nodes.

Register layout: position qubits first (most significant), the single coin
qubit last, so printed basis labels match the walk literature's scores.
The shift moves the walker one node down for coin 0 and one node up for
coin 1, then flips the coin (flip-flop walk).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WalkReport:
    n_nodes: int
    steps: int
    probabilities: dict[str, float]          # bitstring |pos, coin> -> probability
    node_coin: dict[tuple[int, int], float]  # (node, coin) -> probability
    counts: dict[str, int]


def quantum_walk_cycle(
    n_nodes: int,
    steps: int,
    start: int = 0,
    rng: np.random.Generator | None = None,
    shots: int | None = None,
) -> WalkReport:
    """Run (S C)^steps from |start, coin=0> and report the distribution."""
    if n_nodes < 2 or (n_nodes & (n_nodes - 1)) != 0:
        raise ValueError("node count must be a power of two >= 2")
    if not 0 <= start < n_nodes:
        raise ValueError("start node out of range")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    k = n_nodes.bit_length() - 1
    state = np.zeros((n_nodes, 2), dtype=complex)
    state[start, 0] = 1.0
    inv = 1 / math.sqrt(2)
    down = np.roll(np.arange(n_nodes), 1)    # node -> node - 1 source map
    up = np.roll(np.arange(n_nodes), -1)
    for _ in range(steps):
        c0 = (state[:, 0] + state[:, 1]) * inv
        c1 = (state[:, 0] - state[:, 1]) * inv
        new = np.empty_like(state)
        # coin 0 walked down and flipped to 1; coin 1 walked up and flipped to 0
        new[:, 1] = c0[up]
        new[:, 0] = c1[down]
        state = new
    probs = np.abs(state) ** 2
    bit_probs = {
        format(node, f"0{k}b") + str(coin): float(probs[node, coin])
        for node in range(n_nodes)
        for coin in (0, 1)
        if probs[node, coin] > 1e-15
    }
    node_coin = {
        (node, coin): float(probs[node, coin])
        for node in range(n_nodes)
        for coin in (0, 1)
        if probs[node, coin] > 1e-15
    }
    counts: dict[str, int] = {}
    if shots is not None:
        if rng is None:
            raise ValueError("sampling needs an rng")
        flat = probs.reshape(-1)
        draws = rng.multinomial(shots, flat / flat.sum())
        for idx, cnt in enumerate(draws):
            if cnt:
                counts[format(idx, f"0{k + 1}b")] = int(cnt)
    return WalkReport(n_nodes=n_nodes, steps=steps, probabilities=bit_probs,
                      node_coin=node_coin, counts=counts)
