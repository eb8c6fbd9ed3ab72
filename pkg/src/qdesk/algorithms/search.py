"""Grover search for a unique marked item and the Bernstein-Vazirani
hidden-string algorithm."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import transforms
from ..transforms import Oracle


@dataclass(frozen=True)
class GroverResult:
    bits: str
    iterations: int
    success_probability: float


def grover_search(
    marked_predicate: Callable[[int], bool] | Oracle,
    n: int,
    rng: np.random.Generator,
    iterations: int | None = None,
    ceiling_formula: bool = False,
) -> GroverResult:
    """Search for the unique marked n-bit string.

    Initializes the uniform superposition with a |-> ancilla, applies the
    Grover operator the optimal number of times (or `iterations` if given),
    and measures the main register.  Callers with several marked items
    should use transforms.boyer_search.
    """
    oracle = (
        marked_predicate
        if isinstance(marked_predicate, Oracle)
        else Oracle.from_predicate(n, marked_predicate)
    )
    if len(oracle.marked) == 0:
        raise ValueError("oracle marks nothing")
    if iterations is None:
        iterations = transforms.grover_iterations(len(oracle.marked), 2**n, ceiling_formula)
    state = transforms.grover_state(oracle, iterations)
    probs = state.probabilities().reshape(2**n, 2).sum(axis=1)
    outcome = int(rng.choice(probs.shape[0], p=probs / probs.sum()))
    success = float(sum(probs[m] for m in oracle.marked))
    return GroverResult(bits=format(outcome, f"0{n}b"),
                        iterations=iterations, success_probability=success)


def bv_oracle(hidden: str) -> Oracle:
    """Oracle for f_s(x) = <s, x> mod 2 with hidden string s."""
    n = len(hidden)
    s = int(hidden, 2)
    return Oracle.from_predicate(n, lambda x: bin(x & s).count("1") % 2 == 1)


def bv_hidden_string(
    s_oracle: Oracle | str, n: int | None = None, rng: np.random.Generator | None = None
) -> str:
    """Recover the hidden string with a single oracle query.

    H-layer, one phase-kickback query against the |-> ancilla, H-layer,
    measure.  Noiseless recovery is exact, so the measurement is
    deterministic; an rng is accepted for interface parity.
    """
    oracle = bv_oracle(s_oracle) if isinstance(s_oracle, str) else s_oracle
    n = oracle.n_inputs
    dim = 2**n
    # phase oracle on the main register: |x> -> (-1)^f(x) |x>
    signs = np.array([-1.0 if oracle.predicate(x) else 1.0 for x in range(dim)])
    amps = np.full(dim, 1 / math.sqrt(dim)) * signs
    # H^n: Walsh-Hadamard transform
    amps = amps.reshape([2] * n)
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    for q in range(n):
        amps = np.moveaxis(np.tensordot(h, np.moveaxis(amps, q, 0), axes=(1, 0)), 0, q)
    amps = amps.reshape(-1)
    probs = np.abs(amps) ** 2
    if rng is None:
        outcome = int(np.argmax(probs))
    else:
        outcome = int(rng.choice(dim, p=probs / probs.sum()))
    return format(outcome, f"0{n}b")
