"""Circuits over named quantum/classical registers, shot sampling, and noise.

A circuit is an ordered op list: gate applications, measurements into
classical bits, barriers, and resets.  Execution is dense statevector
simulation; noisy sampling runs independent per-shot trajectories.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates as G
from .qstate import RENORM_ATOL, StateVector


@dataclass(frozen=True)
class Measure:
    qubit: int
    clbit: int


@dataclass(frozen=True)
class Barrier:
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Reset:
    qubit: int


@dataclass(frozen=True)
class Topology:
    """Directed CNOT connectivity of a device."""

    n_qubits: int
    cnot_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset((int(a), int(b)) for a, b in self.cnot_edges)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop edge ({a},{b})")
            if not (0 <= a < self.n_qubits and 0 <= b < self.n_qubits):
                raise ValueError(f"edge ({a},{b}) out of range")
        object.__setattr__(self, "cnot_edges", edges)

    def has_edge(self, c: int, t: int) -> bool:
        return (c, t) in self.cnot_edges

    def undirected(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.cnot_edges}


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate over-rotation spread, bit-flip rate, and idle decoherence rate.

    over_rotation_sigma: std-dev (radians) of the angle error composed with
        every gate as exp(-i dphi G); G is Z for phase-family gates and the
        gate's own principal axis otherwise.
    bitflip_p: probability of an X error on each touched qubit after a gate.
    idle_flip_p: probability of an X error per qubit per idle timestep
        (idle timesteps are written as `id` gates).
    """

    over_rotation_sigma: float = 0.0
    bitflip_p: float = 0.0
    idle_flip_p: float = 0.0

    def __post_init__(self):
        if self.over_rotation_sigma < 0:
            raise ValueError("sigma must be nonnegative")
        for p in (self.bitflip_p, self.idle_flip_p):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")


@dataclass
class ShotHistogram:
    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")

    def probability(self, key: str) -> float:
        return self.counts.get(key, 0) / self.shots

    def to_json_dict(self) -> dict:
        return {"counts": dict(sorted(self.counts.items())), "shots": self.shots}


_PHASE_FAMILY = {"s", "sdg", "t", "tdg", "r", "p", "u1", "rz", "cz", "cu1", "cp"}


class Circuit:
    """Ordered gate/measure/barrier/reset list over q[n_qubits], c[n_clbits]."""

    def __init__(self, n_qubits: int, n_clbits: int = 0):
        if n_qubits < 1 or n_clbits < 0:
            raise ValueError("bad register sizes")
        self.n_qubits = n_qubits
        self.n_clbits = n_clbits
        self.ops: list = []

    # -- construction -----------------------------------------------------
    def append(self, gate: G.Gate, *targets: int) -> "Circuit":
        app = G.GateApplication(gate, tuple(targets))
        if any(not 0 <= t < self.n_qubits for t in app.targets):
            raise ValueError(f"targets {targets} out of range")
        self.ops.append(app)
        return self

    def add(self, name: str, targets, params=()) -> "Circuit":
        return self.append(G.standard_gate(name, params), *targets)

    def measure(self, qubit: int, clbit: int) -> "Circuit":
        if not 0 <= qubit < self.n_qubits or not 0 <= clbit < self.n_clbits:
            raise ValueError(f"measure q[{qubit}] -> c[{clbit}] out of range")
        self.ops.append(Measure(qubit, clbit))
        return self

    def measure_all(self) -> "Circuit":
        if self.n_clbits < self.n_qubits:
            raise ValueError("not enough classical bits")
        for q in range(self.n_qubits):
            self.measure(q, q)
        return self

    def barrier(self, *qubits: int) -> "Circuit":
        qs = tuple(qubits) if qubits else tuple(range(self.n_qubits))
        self.ops.append(Barrier(qs))
        return self

    def reset(self, qubit: int) -> "Circuit":
        if not 0 <= qubit < self.n_qubits:
            raise ValueError("reset target out of range")
        self.ops.append(Reset(qubit))
        return self

    def extend(self, other: "Circuit") -> "Circuit":
        if other.n_qubits > self.n_qubits or other.n_clbits > self.n_clbits:
            raise ValueError("extending with a larger circuit")
        self.ops.extend(other.ops)
        return self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Circuit)
            and self.n_qubits == other.n_qubits
            and self.n_clbits == other.n_clbits
            and self.ops == other.ops
        )

    def __getattr__(self, name: str):
        # c.h(0), c.cx(0, 1), c.rx(0, theta), ... for every standard gate
        if name in G._FIXED or name in G._PARAM:
            def build(*args):
                arity = G._ARITY.get(name, 1)
                targets, params = args[:arity], args[arity:]
                return self.add(name, targets, params)
            return build
        raise AttributeError(name)


# ---------------------------------------------------------------------------
# execution

def _check_measure_layout(c: Circuit, allow_trailing: bool = True) -> None:
    seen_measure = False
    for op in c.ops:
        if isinstance(op, Measure):
            seen_measure = True
        elif isinstance(op, Barrier):
            continue
        elif seen_measure:
            raise ValueError("mid-circuit measurement is not supported here")
    if not allow_trailing and seen_measure:
        raise ValueError("circuit contains measurements")


def run_statevector(c: Circuit) -> StateVector:
    """Exact final state from |0...0>.  Trailing measurements are ignored;
    mid-circuit measurement or reset is an error."""
    for op in c.ops:
        if isinstance(op, Reset):
            raise ValueError("reset is not supported in statevector mode")
    _check_measure_layout(c)
    amps = np.zeros(2**c.n_qubits, dtype=complex)
    amps[0] = 1.0
    for op in c.ops:
        if isinstance(op, G.GateApplication):
            amps = G.apply_matrix(amps, c.n_qubits, op.gate.matrix, op.targets)
    return StateVector(amps, atol=RENORM_ATOL)


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Full 2^n x 2^n unitary of a measurement-free circuit (small n only)."""
    _check_measure_layout(c, allow_trailing=False)
    n = c.n_qubits
    if n > 12:
        raise ValueError("circuit_unitary is limited to 12 qubits")
    u = np.eye(2**n, dtype=complex)
    for op in c.ops:
        if isinstance(op, G.GateApplication):
            u = G.apply_matrix(u.reshape(-1), 2 * n, op.gate.matrix, op.targets).reshape(2**n, 2**n)
    return u


def _clbit_probabilities(c: Circuit) -> tuple[np.ndarray, list[str]]:
    """Exact joint distribution over classical bitstrings, measure-at-end only."""
    measures = [op for op in c.ops if isinstance(op, Measure)]
    if not measures:
        raise ValueError("circuit has no measurements")
    written = [m.clbit for m in measures]
    if len(set(written)) != len(written):
        raise ValueError("a classical bit is written more than once")
    state = run_statevector(c)
    probs = state.probabilities()
    n, m = c.n_qubits, c.n_clbits
    keys: dict[str, float] = {}
    for idx, p in enumerate(probs):
        if p < 1e-18:
            continue
        bits = ["0"] * m
        for meas in measures:
            bits[meas.clbit] = str((idx >> (n - 1 - meas.qubit)) & 1)
        key = "".join(bits)
        keys[key] = keys.get(key, 0.0) + p
    labels = sorted(keys)
    return np.array([keys[k] for k in labels]), labels


def _principal_generator(gate: G.Gate) -> np.ndarray | None:
    """Hermitian unit-norm error generator for a gate family.

    Phase-family gates drift about Z; anything else drifts about its own
    rotation axis, read off the anti-Hermitian part of the SU-normalized
    matrix.  Returns None when no axis is defined (identity-like gates).
    """
    if gate.name in _PHASE_FAMILY:
        if gate.arity == 1:
            return G.Z
        return np.kron(np.eye(2 ** (gate.arity - 1), dtype=complex), G.Z)
    d = gate.matrix.shape[0]
    det = np.linalg.det(gate.matrix)
    su = gate.matrix / det ** (1.0 / d)
    m = (su - su.conj().T) / (-2j)
    norm = np.linalg.norm(m, ord=2)
    if norm < 1e-12:
        return None
    return m / norm


def _trajectory(c: Circuit, noise: NoiseModel, rng: np.random.Generator) -> str:
    n, m = c.n_qubits, c.n_clbits
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    clbits = ["0"] * m

    def collapse(q: int) -> int:
        nonlocal amps
        st = amps.reshape([2] * n)
        p1 = float(np.sum(np.abs(np.take(st, 1, axis=q)) ** 2))
        out = 1 if rng.random() < p1 else 0
        idx = [slice(None)] * n
        idx[q] = 1 - out
        st = st.copy()
        st[tuple(idx)] = 0.0
        amps = st.reshape(-1)
        amps = amps / np.linalg.norm(amps)
        return out

    for op in c.ops:
        if isinstance(op, Barrier):
            continue
        if isinstance(op, Measure):
            clbits[op.clbit] = str(collapse(op.qubit))
            continue
        if isinstance(op, Reset):
            if collapse(op.qubit) == 1:
                amps = G.apply_matrix(amps, n, G.X, (op.qubit,))
            continue
        if op.gate.name == "id":
            # idle timestep: only idle decoherence applies
            if noise.idle_flip_p > 0 and rng.random() < noise.idle_flip_p:
                amps = G.apply_matrix(amps, n, G.X, op.targets)
            continue
        amps = G.apply_matrix(amps, n, op.gate.matrix, op.targets)
        if noise.over_rotation_sigma > 0:
            gen = _principal_generator(op.gate)
            if gen is not None:
                dphi = rng.normal(0.0, noise.over_rotation_sigma)
                err = np.cos(dphi) * np.eye(gen.shape[0]) - 1j * np.sin(dphi) * gen \
                    if np.allclose(gen @ gen, np.eye(gen.shape[0]), atol=1e-9) \
                    else _expm_herm(gen, dphi)
                amps = G.apply_matrix(amps, n, err, op.targets)
        if noise.bitflip_p > 0:
            for q in op.targets:
                if rng.random() < noise.bitflip_p:
                    amps = G.apply_matrix(amps, n, G.X, (q,))
    return "".join(clbits)


def _expm_herm(gen: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh(gen)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def sample(
    c: Circuit,
    shots: int,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> ShotHistogram:
    """Run `shots` independent trajectories and histogram the classical bits.

    The random stream is injected, never ambient: pass a seeded Generator.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if rng is None:
        raise ValueError("sample needs an explicitly seeded random generator")
    noiseless = noise is None or (
        noise.over_rotation_sigma == 0 and noise.bitflip_p == 0 and noise.idle_flip_p == 0
    )
    mid_circuit = False
    try:
        _check_measure_layout(c)
    except ValueError:
        mid_circuit = True
    has_reset = any(isinstance(op, Reset) for op in c.ops)

    if noiseless and not mid_circuit and not has_reset:
        probs, labels = _clbit_probabilities(c)
        draw = rng.multinomial(shots, probs / probs.sum())
        counts = {k: int(v) for k, v in zip(labels, draw) if v > 0}
        return ShotHistogram(counts=counts, shots=shots)

    written = [op.clbit for op in c.ops if isinstance(op, Measure)]
    if len(set(written)) != len(written):
        raise ValueError("a classical bit is written more than once")
    counts: dict[str, int] = {}
    nm = noise or NoiseModel()
    for _ in range(shots):
        key = _trajectory(c, nm, rng)
        counts[key] = counts.get(key, 0) + 1
    return ShotHistogram(counts=counts, shots=shots)


# ---------------------------------------------------------------------------
# metrics and rerouting

@dataclass(frozen=True)
class CircuitMetrics:
    gate_count: int
    cnot_count: int
    depth: int


def metrics(c: Circuit) -> CircuitMetrics:
    """Gate counts and depth.  Barriers synchronize at zero cost; a measure
    costs depth 1; gate_count covers unitary gate applications only."""
    gate_count = cnot_count = 0
    level = [0] * max(c.n_qubits, 1)
    for op in c.ops:
        if isinstance(op, Barrier):
            sync = max((level[q] for q in op.qubits), default=0)
            for q in op.qubits:
                level[q] = sync
            continue
        if isinstance(op, Measure):
            level[op.qubit] += 1
            continue
        if isinstance(op, Reset):
            level[op.qubit] += 1
            continue
        gate_count += 1
        if op.gate.name == "cx":
            cnot_count += 1
        d = max(level[q] for q in op.targets) + 1
        for q in op.targets:
            level[q] = d
    return CircuitMetrics(gate_count, cnot_count, max(level, default=0))


class UnroutableError(ValueError):
    pass


def _legal_cnot(control: int, target: int, topo: Topology) -> list:
    """CNOT(control, target) as topology-legal ops, using the H-sandwich
    reversal when only the opposite edge exists."""
    h = G.standard_gate("h")
    cx = G.standard_gate("cx")
    if topo.has_edge(control, target):
        return [G.GateApplication(cx, (control, target))]
    if topo.has_edge(target, control):
        return [
            G.GateApplication(h, (control,)),
            G.GateApplication(h, (target,)),
            G.GateApplication(cx, (target, control)),
            G.GateApplication(h, (control,)),
            G.GateApplication(h, (target,)),
        ]
    raise UnroutableError(f"no edge between {control} and {target}")


def reroute_for_topology(c: Circuit, topo: Topology) -> Circuit:
    """Rewrite CNOTs so every two-qubit interaction sits on a device edge.

    Direct edges pass through; reversed edges get the Hadamard sandwich;
    distance-2 pairs expand into the four-CNOT chain through a shared
    neighbor.  Anything farther is an error (general routing is out of
    scope).  The circuit unitary is preserved exactly.
    """
    if topo.n_qubits < c.n_qubits:
        raise ValueError("topology smaller than circuit")
    und = topo.undirected()

    def neighbors(q: int) -> set[int]:
        return {next(iter(e - {q})) for e in und if q in e}

    out = Circuit(c.n_qubits, c.n_clbits)
    for op in c.ops:
        if not isinstance(op, G.GateApplication):
            out.ops.append(op)
            continue
        if op.gate.arity == 1:
            out.ops.append(op)
            continue
        if op.gate.name != "cx":
            raise UnroutableError(f"cannot reroute non-CNOT gate {op.gate.name!r}")
        ctrl, tgt = op.targets
        if frozenset((ctrl, tgt)) in und:
            out.ops.extend(_legal_cnot(ctrl, tgt, topo))
            continue
        shared = neighbors(ctrl) & neighbors(tgt)
        if not shared:
            raise UnroutableError(f"qubits {ctrl},{tgt} are farther than distance 2")
        k = min(shared)
        # CNOT(j,l) = CNOT(k,l) CNOT(j,k) CNOT(k,l) CNOT(j,k)
        for a, b in ((k, tgt), (ctrl, k), (k, tgt), (ctrl, k)):
            out.ops.extend(_legal_cnot(a, b, topo))
    return out


# ---------------------------------------------------------------------------
# idle decoherence experiment

@dataclass(frozen=True)
class IdleReport:
    per_qubit: tuple[float, ...]
    combined: float
    idle_steps: int
    shots: int


def idle_decoherence_experiment(
    n_qubits: int,
    idle_steps: int,
    noise: NoiseModel,
    shots: int,
    rng: np.random.Generator,
) -> IdleReport:
    """Flip every qubit to |1>, idle, and report the fraction still reading 1.

    Under per-step independent flips with probability p the per-qubit
    coherence after k steps follows the two-state Markov chain closed form
    (1 + (1-2p)^k) / 2.
    """
    if shots < 1 or idle_steps < 0:
        raise ValueError("bad experiment size")
    p = noise.idle_flip_p
    flips = rng.random((shots, idle_steps, n_qubits)) < p
    ones = np.ones((shots, n_qubits), dtype=bool) ^ (flips.sum(axis=1) % 2).astype(bool)
    per_qubit = tuple(float(x) for x in ones.mean(axis=0))
    combined = float(ones.all(axis=1).mean())
    return IdleReport(per_qubit=per_qubit, combined=combined,
                      idle_steps=idle_steps, shots=shots)
