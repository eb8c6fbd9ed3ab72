"""Grover-accelerated graph kernels: minimum finding and layered BFS
partitioning, both built on the unknown-count search schedule."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..transforms import Oracle, boyer_search

UNREACHED = -1   # the infinity sentinel in layer arrays


@dataclass(frozen=True)
class MinFindResult:
    index: int
    grover_iterations: int
    budget: int


def min_find_budget(n_items: int) -> int:
    """Total Grover-iteration allowance: 22.5 sqrt(N) + 1.4 log2(N)^2."""
    return math.floor(22.5 * math.sqrt(n_items) + 1.4 * math.log2(n_items) ** 2) \
        if n_items > 1 else 0


def min_find(values, rng: np.random.Generator) -> MinFindResult:
    """Index of the minimum via the threshold-oracle pivot loop.

    The oracle marks {i : F(i) <= F(pivot)} (the pivot marks itself, so the
    inner search always has a target); each inner run uses the unknown-count
    schedule, strict improvements move the pivot, and the loop stops when
    the total Grover-iteration budget is spent.
    """
    values = list(values)
    n_items = len(values)
    if n_items == 0:
        raise ValueError("empty list")
    if n_items == 1:
        return MinFindResult(index=0, grover_iterations=0, budget=0)
    n_bits = max(1, math.ceil(math.log2(n_items)))
    budget = min_find_budget(n_items)
    used = 0
    pivot = int(rng.integers(0, n_items))
    while used < budget:
        threshold = values[pivot]
        oracle = Oracle.from_predicate(
            n_bits, lambda x: x < n_items and values[x] <= threshold
        )
        outcome = boyer_search(oracle, rng, iteration_budget=budget - used)
        used += outcome.grover_iterations
        if outcome.result is not None and values[outcome.result] < values[pivot]:
            pivot = outcome.result
    return MinFindResult(index=pivot, grover_iterations=used, budget=budget)


@dataclass(frozen=True)
class LayeredResult:
    layers: tuple[int, ...]      # UNREACHED marks vertices never discovered
    unreached: tuple[int, ...]


def layered_partition(adjacency, source: int) -> LayeredResult:
    """BFS layer numbers with Grover-driven neighbor discovery.

    For each dequeued vertex x, the oracle marks {y : adjacent(x, y) and
    L[y] = infinity}; repeated unknown-count searches pull out neighbors one
    at a time (each discovery unmarks itself).  The cutoff schedule's empty
    verdict has one-sided error, so it is accepted only after several
    consecutive independent cutoffs; the result then matches classical BFS
    distances on every connected component.
    """
    adj = np.asarray(adjacency, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency must be square")
    n = adj.shape[0]
    if n > 16:
        raise ValueError("layered partitioning is desk scale (n <= 16)")
    if not 0 <= source < n:
        raise ValueError("source out of range")
    if np.any(adj != adj.T):
        raise ValueError("adjacency must be symmetric")
    n_bits = max(1, math.ceil(math.log2(n)))
    rng = np.random.default_rng(0xBF5)   # discovery order only; layers are unique
    layers = [UNREACHED] * n
    layers[source] = 0
    queue = [source]
    while queue:
        x = queue.pop(0)
        empty_streak = 0
        while empty_streak < 8:
            oracle = Oracle.from_predicate(
                n_bits, lambda y: y < n and adj[x, y] and layers[y] == UNREACHED
            )
            outcome = boyer_search(oracle, rng)
            if outcome.result is None:
                empty_streak += 1
                continue
            empty_streak = 0
            y = outcome.result
            layers[y] = layers[x] + 1
            queue.append(y)
    unreached = tuple(v for v in range(n) if layers[v] == UNREACHED)
    return LayeredResult(layers=tuple(layers), unreached=unreached)
