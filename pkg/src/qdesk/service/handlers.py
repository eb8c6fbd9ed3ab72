"""Service handlers: one function per endpoint, pydantic in, Report out.

The CLI calls these in-process; the FastAPI app wires them to routes.  All
randomness flows through the request seed, so a (command, seed) pair pins
the response bytes.
"""
from __future__ import annotations

import math
from typing import Any

import numpy as np

from .. import __version__
from .. import algorithms as alg
from .. import qasm, qec, stateprep, tomography
from ..circuit import NoiseModel, run_statevector, sample
from ..qstate import StateVector, from_bits
from . import schemas as S

_GRAPHS = {
    "edge": (2, [(0, 1)]),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "triangle_edge": (4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
}


def _report(name: str, config, result: dict[str, Any], seed: int | None = None) -> S.Report:
    cfg = config.model_dump() if hasattr(config, "model_dump") else dict(config)
    return S.Report(name=name, version=__version__, seed=seed, config=cfg, result=result)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _round(x: float, digits: int = 12) -> float:
    return round(float(x), digits)


def handle_run(req: S.RunRequest) -> S.Report:
    circuit = qasm.parse_qasm(req.qasm)
    result: dict[str, Any] = {}
    if req.mode == "statevector":
        state = run_statevector(circuit)
        result["statevector"] = [
            [_round(a.real), _round(a.imag)] for a in state.amps
        ]
        result["n_qubits"] = circuit.n_qubits
    else:
        noise = NoiseModel(**req.noise.model_dump()) if req.noise else None
        hist = sample(circuit, req.shots, noise=noise, rng=_rng(req.seed))
        result.update(hist.to_json_dict())
    return _report("run", req, result, seed=req.seed)


def handle_grover(req: S.GroverRequest) -> S.Report:
    if req.target >= 2**req.n:
        raise ValueError("target out of range")
    res = alg.grover_search(
        lambda x: x == req.target, req.n, _rng(req.seed),
        iterations=req.iterations, ceiling_formula=req.ceiling_formula,
    )
    return _report("grover", req, {
        "bits": res.bits,
        "iterations": res.iterations,
        "success_probability": _round(res.success_probability),
    }, seed=req.seed)


def handle_bv(req: S.BvRequest) -> S.Report:
    if not req.hidden or any(b not in "01" for b in req.hidden):
        raise ValueError("hidden string must be binary")
    bits = alg.bv_hidden_string(req.hidden, rng=_rng(req.seed))
    return _report("bv", req, {"bits": bits, "oracle_queries": 1}, seed=req.seed)


def handle_shor(req: S.ShorRequest) -> S.Report:
    res = alg.shor_factor(req.n, _rng(req.seed))
    return _report("shor", req, {
        "factors": list(res.factors) if res.factors else None,
        "method": res.method,
        "k": res.k,
        "period": res.period,
        "attempts": res.attempts,
    }, seed=req.seed)


def handle_hhl(req: S.HhlRequest) -> S.Report:
    problem = alg.HhlProblem(np.array(req.matrix), np.array(req.b))
    value = alg.hhl_solve(problem, req.observable, rng=_rng(req.seed), shots=req.shots)
    return _report("hhl", req, {
        "observable": req.observable,
        "expectation": _round(value),
        "mode": "sampled" if req.shots else "exact",
    }, seed=req.seed)


def _qaoa_instance(graph, edges, n_nodes) -> alg.MaxCutInstance:
    if graph is not None:
        n, es = _GRAPHS[graph]
        return alg.MaxCutInstance(n, frozenset(es))
    if edges is None or n_nodes is None:
        raise ValueError("give either a named graph or explicit edges + n_nodes")
    return alg.MaxCutInstance(n_nodes, frozenset(tuple(e) for e in edges))


def handle_qaoa(req: S.QaoaRequest) -> S.Report:
    inst = _qaoa_instance(req.graph, req.edges, req.n_nodes)
    params = alg.QaoaParams(gamma=tuple(req.gamma), beta=tuple(req.beta))
    rep = alg.qaoa_maxcut(inst, params, shots=req.shots,
                          rng=_rng(req.seed) if req.shots else None)
    return _report("qaoa", req, {
        "expected_cut": _round(rep.expected_cut),
        "prob_max_cut": _round(rep.prob_max_cut),
        "max_cut": rep.max_cut,
        "cut_distribution": {str(k): _round(v) for k, v in rep.cut_distribution.items()},
        "counts": rep.counts,
    }, seed=req.seed)


def handle_qaoa_grid(req: S.QaoaGridRequest) -> S.Report:
    inst = _qaoa_instance(req.graph, req.edges, req.n_nodes)
    params, best = alg.qaoa_grid_search(inst, req.rounds, req.resolution)
    return _report("qaoa-grid", req, {
        "gamma": [_round(g) for g in params.gamma],
        "beta": [_round(b) for b in params.beta],
        "expected_cut": _round(best),
    })


def handle_walk(req: S.WalkRequest) -> S.Report:
    rep = alg.quantum_walk_cycle(req.nodes, req.steps, start=req.start,
                                 rng=_rng(req.seed) if req.shots else None,
                                 shots=req.shots)
    return _report("walk", req, {
        "probabilities": {k: _round(v) for k, v in sorted(rep.probabilities.items())},
        "counts": dict(sorted(rep.counts.items())),
    }, seed=req.seed)


def handle_vqe(req: S.VqeRequest) -> S.Report:
    model = alg.IsingModel(req.n_spins, req.h, periodic=req.periodic)
    res = alg.vqe_ising(model, ansatz_kind=req.ansatz, shots=req.shots,
                        rng=_rng(req.seed) if req.shots else None)
    exact = alg.exact_ising_ground(model)
    return _report("vqe", req, {
        "energy": _round(res.energy),
        "exact_energy": _round(exact),
        "magnetization_x": _round(res.magnetization),
        "converged": res.converged,
        "iterations": res.iterations,
        "thetas": [_round(t) for t in res.params.thetas],
    }, seed=req.seed)


def handle_ising_exact(req: S.IsingExactRequest) -> S.Report:
    model = alg.IsingModel(req.n_spins, req.h, periodic=req.periodic)
    return _report("ising-exact", req, {"energy": _round(alg.exact_ising_ground(model))})


def handle_schrodinger(req: S.SchrodingerRequest) -> S.Report:
    amps = np.array([complex(re, im) for re, im in req.amplitudes])
    state = StateVector(amps)
    out = alg.schrodinger_evolve(state, req.potential, req.phi, req.steps)
    return _report("schrodinger", req, {
        "probabilities": [_round(p) for p in out.probabilities()],
    })


def handle_minfind(req: S.MinFindRequest) -> S.Report:
    res = alg.min_find(req.values, _rng(req.seed))
    return _report("minfind", req, {
        "index": res.index,
        "value": _round(req.values[res.index]),
        "grover_iterations": res.grover_iterations,
        "budget": res.budget,
    }, seed=req.seed)


def handle_layered(req: S.LayeredRequest) -> S.Report:
    res = alg.layered_partition(np.array(req.adjacency, dtype=bool), req.source)
    return _report("layered", req, {
        "layers": list(res.layers),
        "unreached": list(res.unreached),
    })


def handle_rep_element(req: S.RepElementRequest) -> S.Report:
    from ..algorithms.groups import group_element_state

    group = alg.cyclic_group(req.order) if req.group == "cyclic" else alg.symmetric_group_s3()
    psi = group_element_state(group, req.superposition)
    value = alg.rep_matrix_element(group, req.element, psi, part=req.part,
                                   shots=req.shots,
                                   rng=_rng(req.seed) if req.shots else None)
    return _report("rep-element", req, {
        "part": req.part,
        "value": _round(value),
    }, seed=req.seed)


def handle_pca(req: S.PcaRequest) -> S.Report:
    rep = alg.qpca_two_feature(req.x1, req.x2, shots=req.shots,
                               rng=_rng(req.seed) if req.shots else None)
    return _report("pca", req, {
        "covariance": [[_round(v) for v in row] for row in rep.covariance],
        "purity": _round(rep.purity),
        "eigenvalues": [_round(e) for e in rep.eigenvalues],
    }, seed=req.seed)


def handle_potts(req: S.PottsRequest) -> S.Report:
    model = alg.PottsModel(req.n_vertices, tuple(req.edges), req.q, req.beta)
    z = alg.potts_partition(model)
    fragment = alg.potts_qft_fragment(
        rng=_rng(req.seed) if req.fragment_shots else None,
        shots=req.fragment_shots,
    )
    return _report("potts", req, {
        "partition_function": _round(z, 9),
        "qft_fragment": {str(k): (v if isinstance(v, int) else _round(v)) for k, v in fragment.items()},
    }, seed=req.seed)


def handle_prep(req: S.PrepStateRequest) -> S.Report:
    amps = np.array([complex(re, im) for re, im in req.amplitudes])
    if amps.shape[0] == 2:
        synth = stateprep.prep_single(amps[0], amps[1])
    elif amps.shape[0] == 4:
        synth = stateprep.prep_two_qubit(amps)
    elif amps.shape[0] == 16:
        synth = stateprep.prep_four_qubit(amps)
    else:
        raise ValueError("prep supports 1, 2, or 4 qubits (2/4/16 amplitudes)")
    return _report("prep", req, {
        "qasm": qasm.emit_qasm(synth.circuit),
        "fidelity": _round(synth.fidelity),
        "cnot_count": synth.cnot_count,
    })


def handle_synth(req: S.SynthGateRequest) -> S.Report:
    mat = np.array([[complex(re, im) for re, im in row] for row in req.matrix])
    synth = stateprep.synth_two_qubit_gate(mat)
    return _report("synth", req, {
        "qasm": qasm.emit_qasm(synth.circuit),
        "phase_invariant_distance": _round(synth.fidelity, 14),
        "cnot_count": synth.cnot_count,
    })


def _tomography_povm(n_qubits: int):
    if n_qubits == 1:
        return tomography.single_qubit_povm()
    if n_qubits == 2:
        return tomography.two_qubit_povm(tomography.ALL_PAIR_BASES)
    raise ValueError("tomography estimation covers 1 or 2 qubits")


def handle_tomography(req: S.TomographyRequest) -> S.Report:
    state = None
    if req.record is not None:
        record = tomography.record_from_json(req.record)
        group = next(iter(record.shots_per_group))
        povm = _tomography_povm(len(group))
    else:
        if req.qasm is not None:
            state = run_statevector(qasm.parse_qasm(req.qasm))
            povm = _tomography_povm(state.n_qubits)
        elif req.state == "plus":
            state = from_bits("+")
            povm = tomography.single_qubit_povm()
        else:
            state = StateVector(np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2))
            povm = tomography.two_qubit_povm()
        if req.shots is None:
            record = tomography.exact_record(state, povm)
        else:
            record = tomography.simulate_povm(state, povm, req.shots, _rng(req.seed))
    res = tomography.ml_estimate(record, povm)
    spectrum = tomography.spectral_report(res.rho)
    result = {
        "eigenvalues": [_round(v) for v, _ in spectrum],
        "leading_eigenvector": [[_round(z.real), _round(z.imag)] for z in spectrum[0][1]],
        "log_likelihood": _round(res.log_likelihood),
        "iterations": res.iterations,
    }
    if state is not None:
        result["fidelity_to_target"] = _round(float(np.real(
            np.conj(state.amps) @ (res.rho.elems @ state.amps)
        )))
    return _report("tomography", req, result, seed=req.seed)


def handle_qec(req: S.QecRequest) -> S.Report:
    noise = qec.QecNoise(
        readout_flip_p=req.p if req.noise_kind in ("bitflip", "both") else 0.0,
        rotation_sigma=req.sigma if req.noise_kind in ("rotation", "both") else 0.0,
    )
    rep = qec.run_ghz_test(req.idle_gates, noise, req.shots, _rng(req.seed))
    return _report("qec", req, {
        "p_unencoded": _round(rep.p_unencoded),
        "p_encoded": _round(rep.p_encoded),
        "outcome_breakdown": {k: _round(v) for k, v in sorted(rep.outcome_breakdown.items())},
    }, seed=req.seed)


HANDLERS = {
    "grover": (S.GroverRequest, handle_grover),
    "bv": (S.BvRequest, handle_bv),
    "shor": (S.ShorRequest, handle_shor),
    "hhl": (S.HhlRequest, handle_hhl),
    "qaoa": (S.QaoaRequest, handle_qaoa),
    "qaoa-grid": (S.QaoaGridRequest, handle_qaoa_grid),
    "walk": (S.WalkRequest, handle_walk),
    "vqe": (S.VqeRequest, handle_vqe),
    "ising-exact": (S.IsingExactRequest, handle_ising_exact),
    "schrodinger": (S.SchrodingerRequest, handle_schrodinger),
    "minfind": (S.MinFindRequest, handle_minfind),
    "layered": (S.LayeredRequest, handle_layered),
    "rep-element": (S.RepElementRequest, handle_rep_element),
    "pca": (S.PcaRequest, handle_pca),
    "potts": (S.PottsRequest, handle_potts),
    "prep": (S.PrepStateRequest, handle_prep),
    "synth": (S.SynthGateRequest, handle_synth),
    "tomography": (S.TomographyRequest, handle_tomography),
    "qec": (S.QecRequest, handle_qec),
}
