"""Shor factoring: quantum period finding plus continued-fraction
postprocessing, and the five-qubit compiled N=15 circuit."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..circuit import Circuit, run_statevector


def period_find_classical(k: int, n_mod: int) -> int:
    """Least r > 0 with k^r = 1 (mod n_mod); the classical oracle for tests."""
    if math.gcd(k, n_mod) != 1:
        raise ValueError(f"gcd({k},{n_mod}) != 1")
    r, value = 1, k % n_mod
    while value != 1:
        value = (value * k) % n_mod
        r += 1
    return r


def period_find_quantum(
    k: int, n_mod: int, rng: np.random.Generator, max_measurements: int = 32
) -> tuple[int | None, list[int]]:
    """Measure the period register of the textbook period-finding circuit.

    Uses m = 2n counting qubits over an n-bit function register: uniform
    superposition, modular exponentiation into the second register, a QFT on
    the first, then measurement.  Continued-fraction convergents of
    (measured / 2^m) supply candidate periods, each verified by modular
    exponentiation.  Returns (period, measured values used).
    """
    if math.gcd(k, n_mod) != 1:
        raise ValueError(f"gcd({k},{n_mod}) != 1")
    n = n_mod.bit_length()
    m = 2 * n
    big_m = 2**m
    f = np.empty(big_m, dtype=np.int64)
    value = 1
    for i in range(big_m):
        f[i] = value
        value = (value * k) % n_mod
    joint = np.zeros((big_m, 2**n), dtype=complex)
    joint[np.arange(big_m), f] = 1.0 / math.sqrt(big_m)
    # QFT on the period register = Fourier matrix along axis 0
    joint = np.fft.ifft(joint, axis=0) * math.sqrt(big_m)
    probs = (np.abs(joint) ** 2).sum(axis=1)
    probs = probs / probs.sum()

    measured: list[int] = []
    for _ in range(max_measurements):
        a = int(rng.choice(big_m, p=probs))
        measured.append(a)
        if a == 0:
            continue
        frac = Fraction(a, big_m)
        denominators = {
            cand.denominator
            for cand in _convergents(frac)
            if 0 < cand.denominator <= n_mod
        }
        for d in sorted(denominators):
            for mult in range(1, 5):
                r = d * mult
                if r <= big_m and pow(k, r, n_mod) == 1:
                    return r, measured
    return None, measured


def _convergents(frac: Fraction):
    a, b = frac.numerator, frac.denominator
    coeffs = []
    while b:
        coeffs.append(a // b)
        a, b = b, a % b
    out = []
    for i in range(len(coeffs)):
        c = Fraction(coeffs[i])
        for q in reversed(coeffs[:i]):
            c = q + 1 / c
        out.append(Fraction(c))
    return out


@dataclass(frozen=True)
class ShorResult:
    n: int
    factors: tuple[int, int] | None
    method: str                       # quantum | gcd | even | prime_power | prime
    k: int | None = None
    period: int | None = None
    attempts: int = 0
    measured: tuple[int, ...] = ()


def _prime_power_root(n: int) -> int | None:
    for j in range(2, n.bit_length() + 1):
        p = round(n ** (1.0 / j))
        for cand in (p - 1, p, p + 1):
            if cand > 1 and cand**j == n:
                return cand
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def shor_factor(n: int, rng: np.random.Generator, max_attempts: int = 16) -> ShorResult:
    """Factor an integer via quantum period finding.

    Even inputs, prime powers, and primes short-circuit classically and are
    flagged as such; otherwise random bases k feed the period-finding
    circuit, retrying on odd periods or trivial gcds.
    """
    if n < 4:
        raise ValueError("need a composite n >= 4")
    if n % 2 == 0:
        return ShorResult(n, (2, n // 2), "even")
    root = _prime_power_root(n)
    if root is not None:
        return ShorResult(n, (root, n // root), "prime_power")
    if _is_prime(n):
        return ShorResult(n, None, "prime")

    for attempt in range(1, max_attempts + 1):
        k = int(rng.integers(2, n - 1))
        g = math.gcd(k, n)
        if g > 1:
            return ShorResult(n, tuple(sorted((g, n // g))), "gcd", k=k, attempts=attempt)
        r, measured = period_find_quantum(k, n, rng)
        if r is None or r % 2 == 1:
            continue
        half = pow(k, r // 2, n)
        if half == n - 1:
            continue
        f1, f2 = math.gcd(half - 1, n), math.gcd(half + 1, n)
        for f in (f1, f2):
            if 1 < f < n:
                return ShorResult(
                    n, tuple(sorted((f, n // f))), "quantum",
                    k=k, period=r, attempts=attempt, measured=tuple(measured),
                )
    raise RuntimeError(f"no factor found for {n} after {max_attempts} attempts")


# ---------------------------------------------------------------------------
# compiled N=15, x=11 circuit

def compiled_shor_15_circuit() -> Circuit:
    """The 11-gate five-qubit compiled period-finding circuit for N=15, x=11.

    Register q0..q2 is the 3-bit period register (read in reversed qubit
    order, the usual swapless-QFT convention), q3..q4 hold the two function
    bits that distinguish 11^i mod 15 in {1, 11}; the X initializes the
    function register.
    """
    c = Circuit(5, 3)
    c.x(4)
    c.h(0).h(1).h(2)
    c.cx(2, 3)
    c.cx(2, 4)
    c.h(1)
    c.cu1(1, 0, math.pi / 2)
    c.h(0)
    c.cu1(1, 2, math.pi / 4)
    c.cu1(0, 2, math.pi / 2)
    # reversed read: q2 is the most significant measured bit
    c.measure(2, 0).measure(1, 1).measure(0, 2)
    return c


@dataclass(frozen=True)
class CompiledShorReport:
    register_probabilities: dict[int, float]
    period: int
    factors: tuple[int, int]
    counts: dict[str, int] = field(default_factory=dict)


def compiled_shor_15(
    rng: np.random.Generator | None = None, shots: int | None = None
) -> CompiledShorReport:
    """Run the compiled circuit; the register concentrates on {0, 4}, giving
    period 2 and the factors gcd(11 -+ 1, 15) = (3, 5)."""
    from ..circuit import sample

    c = compiled_shor_15_circuit()
    state = run_statevector(c)
    probs = state.probabilities()
    register: dict[int, float] = {}
    for idx, p in enumerate(probs):
        if p < 1e-15:
            continue
        bits = format(idx, "05b")
        a = int(bits[2] + bits[1] + bits[0], 2)   # reversed read of q0..q2
        register[a] = register.get(a, 0.0) + float(p)
    nonzero = sorted(a for a, p in register.items() if p > 1e-9 and a != 0)
    p_meas = nonzero[0]                            # 4 on the noiseless simulator
    period = (2**3) // p_meas                      # r divides M / p = 2
    half = pow(11, period // 2, 15)
    factors = tuple(sorted((math.gcd(half - 1, 15), math.gcd(half + 1, 15))))
    counts: dict[str, int] = {}
    if shots is not None:
        if rng is None:
            raise ValueError("sampling needs an rng")
        counts = sample(c, shots, rng=rng).counts
    return CompiledShorReport(
        register_probabilities=register, period=period, factors=factors, counts=counts
    )
