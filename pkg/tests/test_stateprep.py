"""State preparation and two-qubit gate synthesis with CNOT budgets."""
import math

import numpy as np
import pytest

from conftest import random_state_vector, random_unitary
from qdesk import gates as G
from qdesk.circuit import circuit_unitary, metrics, run_statevector
from qdesk.stateprep import (
    EulerAngles,
    euler_decompose,
    prep_four_qubit,
    prep_single,
    prep_two_qubit,
    synth_two_qubit_gate,
)

SQ2 = 1 / math.sqrt(2)


class TestEulerDecompose:
    def test_identity(self):
        ang = euler_decompose(np.eye(2))
        assert (ang.alpha, ang.beta, ang.gamma, ang.delta) == (0, 0, 0, 0)

    def test_hadamard_branch(self):
        ang = euler_decompose(G.H)
        assert abs(ang.gamma - math.pi / 2) < 1e-12
        np.testing.assert_allclose(ang.reconstruct(), G.H, atol=1e-10)

    def test_reconstruction_on_500_random_unitaries(self, rng):
        for _ in range(500):
            u = random_unitary(rng, 2)
            ang = euler_decompose(u)
            assert 0 <= ang.gamma <= math.pi + 1e-12
            np.testing.assert_allclose(ang.reconstruct(), u, atol=1e-10)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            euler_decompose(np.array([[1, 1], [0, 1]]))


class TestPrepSingle:
    def test_basis_zero_gives_empty_circuit(self):
        out = prep_single(1.0, 0.0)
        assert out.circuit.ops == [] and out.fidelity == 1.0

    def test_plus_state_synthesizes_hadamard(self):
        out = prep_single(SQ2, SQ2)
        assert len(out.circuit.ops) == 1
        np.testing.assert_allclose(
            circuit_unitary(out.circuit), G.H, atol=1e-12
        )

    def test_general_bloch_point(self):
        theta, phi = 0.3, 1.1
        out = prep_single(math.cos(theta), math.sin(theta) * np.exp(1j * phi))
        assert out.fidelity >= 1 - 1e-12

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            prep_single(1.0, 1.0)


class TestPrepTwoQubit:
    def test_bell_state(self):
        out = prep_two_qubit(np.array([SQ2, 0, 0, SQ2]))
        assert out.cnot_count == 1
        assert out.fidelity >= 1 - 1e-10

    def test_product_state_still_one_cnot(self, rng):
        target = np.kron(random_state_vector(rng, 1), random_state_vector(rng, 1))
        out = prep_two_qubit(target)
        assert out.cnot_count == 1 and metrics(out.circuit).cnot_count == 1
        assert out.fidelity >= 1 - 1e-10

    def test_hundred_random_targets(self, rng):
        for _ in range(100):
            out = prep_two_qubit(random_state_vector(rng, 2))
            assert out.fidelity >= 1 - 1e-10
            assert out.cnot_count == 1


class TestSynthTwoQubitGate:
    def test_cnot_reproduced(self):
        out = synth_two_qubit_gate(G.CNOT)
        assert out.cnot_count == 3
        assert G.phase_distance(circuit_unitary(out.circuit), G.CNOT) < 1e-8

    def test_swap_reproduced(self):
        out = synth_two_qubit_gate(G.SWAP)
        assert out.cnot_count == 3
        assert G.phase_distance(circuit_unitary(out.circuit), G.SWAP) < 1e-8

    def test_local_product_still_template(self, rng):
        target = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        out = synth_two_qubit_gate(target)
        assert out.cnot_count == 3
        assert G.phase_distance(circuit_unitary(out.circuit), target) < 1e-8

    def test_hundred_random_su4(self, rng):
        for _ in range(100):
            target = random_unitary(rng, 4)
            out = synth_two_qubit_gate(target)
            assert out.cnot_count == 3
            assert G.phase_distance(circuit_unitary(out.circuit), target) < 1e-8

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            synth_two_qubit_gate(np.ones((4, 4)))


class TestPrepFourQubit:
    def test_zero_state_empty_circuit(self):
        target = np.zeros(16)
        target[0] = 1.0
        out = prep_four_qubit(target)
        assert out.circuit.ops == [] and out.cnot_count == 0

    def test_ghz4(self):
        target = np.zeros(16)
        target[0] = target[15] = SQ2
        out = prep_four_qubit(target)
        assert out.fidelity >= 1 - 1e-8
        assert out.cnot_count <= 9

    def test_fifty_random_targets(self, rng):
        for _ in range(50):
            out = prep_four_qubit(random_state_vector(rng, 4))
            assert out.fidelity >= 1 - 1e-8
            assert out.cnot_count <= 9
            prepared = run_statevector(out.circuit)
            assert abs(np.linalg.norm(prepared.amps) - 1) < 1e-12

    def test_circuits_emit_qasm(self, rng):
        from qdesk.qasm import emit_qasm, parse_qasm

        out = prep_four_qubit(random_state_vector(rng, 4))
        again = parse_qasm(emit_qasm(out.circuit))
        assert again == out.circuit
