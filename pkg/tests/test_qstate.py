"""Core state representation: tensor algebra, measurement, mixed states."""
import math

import numpy as np
import pytest

from conftest import random_density, random_state_vector
from qdesk.qstate import (
    DensityMatrix,
    Observable,
    StateVector,
    basis_change_measure,
    basis_state,
    density_from_ensemble,
    expectation,
    from_bits,
    inner_product,
    measure_all,
    measure_subset,
    outer_product,
    partial_trace,
    purify,
    schmidt_decompose,
    tensor_product,
    zero_state,
)

SQ2 = 1 / math.sqrt(2)


class TestTensorAndOverlaps:
    def test_tensor_basis_case(self):
        """|0> (x) |0> = (1,0,0,0)."""
        out = tensor_product(from_bits("0"), from_bits("0"))
        np.testing.assert_allclose(out.amps, [1, 0, 0, 0])

    def test_tensor_plus_zero(self):
        """(|0>+|1>)/sqrt2 (x) |0> = (|00> + |10>)/sqrt2."""
        out = tensor_product(from_bits("+"), from_bits("0"))
        np.testing.assert_allclose(out.amps, [SQ2, 0, SQ2, 0], atol=1e-15)

    def test_tensor_three_qubit_coefficient(self, rng):
        """Amplitude of |001> in |g1 g2 g3> equals a1 a2 b3."""
        singles = []
        for _ in range(3):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            singles.append(StateVector(v / np.linalg.norm(v)))
        joint = tensor_product(tensor_product(singles[0], singles[1]), singles[2])
        expected = singles[0].amps[0] * singles[1].amps[0] * singles[2].amps[1]
        assert abs(joint.amps[0b001] - expected) < 1e-12

    def test_inner_product_reads_off_coefficient(self):
        phi = StateVector([0.6, 0.8j])
        assert abs(inner_product(from_bits("0"), phi) - 0.6) < 1e-12

    def test_inner_product_norm_one(self, rng):
        psi = StateVector(random_state_vector(rng, 3))
        assert abs(inner_product(psi, psi) - 1.0) < 1e-12

    def test_inner_product_three_qubit(self, rng):
        singles = [StateVector(random_state_vector(rng, 1)) for _ in range(3)]
        joint = tensor_product(tensor_product(singles[0], singles[1]), singles[2])
        expected = singles[0].amps[0] * singles[1].amps[0] * singles[2].amps[1]
        assert abs(inner_product(basis_state(3, 0b001), joint) - expected) < 1e-12

    def test_inner_product_conjugate_symmetry(self, rng):
        for _ in range(20):
            a = StateVector(random_state_vector(rng, 2))
            b = StateVector(random_state_vector(rng, 2))
            assert inner_product(a, b) == np.conj(inner_product(b, a))

    def test_inner_product_dimension_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(from_bits("0"), from_bits("00"))

    def test_outer_product_matrix_unit(self):
        np.testing.assert_allclose(
            outer_product(from_bits("0"), from_bits("1")), [[0, 1], [0, 0]]
        )

    def test_outer_product_general(self):
        psi = StateVector([0.6, 0.8])
        phi = StateVector([SQ2, SQ2 * 1j])
        out = outer_product(psi, phi)
        expected = np.array([[0.6 * SQ2, 0.6 * -1j * SQ2], [0.8 * SQ2, 0.8 * -1j * SQ2]])
        np.testing.assert_allclose(out, expected, atol=1e-15)

    def test_outer_product_completeness(self):
        total = outer_product(from_bits("+"), from_bits("+")) + outer_product(
            from_bits("-"), from_bits("-")
        )
        np.testing.assert_allclose(total, np.eye(2), atol=1e-15)


class TestMeasurement:
    def test_measure_zero_state(self, rng):
        out = measure_all(from_bits("0"), rng)
        assert out.bits == "0" and out.probability == 1.0

    def test_measure_bell_counts(self):
        """1000 shots on the Bell state: only 00 and 11, near half each."""
        rng = np.random.default_rng(99)
        bell = StateVector([SQ2, 0, 0, SQ2])
        counts = {}
        for _ in range(1000):
            out = measure_all(bell, rng)
            counts[out.bits] = counts.get(out.bits, 0) + 1
        assert set(counts) == {"00", "11"}
        assert abs(counts["00"] - 500) < 80

    def test_measure_ghz_halves(self):
        rng = np.random.default_rng(7)
        ghz = StateVector([SQ2, 0, 0, 0, 0, 0, 0, SQ2])
        seen = {measure_all(ghz, rng).bits for _ in range(200)}
        assert seen == {"000", "111"}

    def test_measure_subset_ghz(self):
        """Measuring qubit 0 of the GHZ state at outcome 0 leaves |000>."""
        ghz = StateVector([SQ2, 0, 0, 0, 0, 0, 0, SQ2])
        rng = np.random.default_rng(3)
        while True:
            out = measure_subset(ghz, [0], rng)
            if out.bits == "0":
                break
        assert abs(out.probability - 0.5) < 1e-12
        np.testing.assert_allclose(out.post_state.amps, basis_state(3, 0).amps, atol=1e-12)

    def test_measure_subset_product_untouched(self, rng):
        psi = StateVector(random_state_vector(rng, 2))
        joint = tensor_product(from_bits("0"), psi)
        out = measure_subset(joint, [0], rng)
        assert out.bits == "0" and abs(out.probability - 1.0) < 1e-12
        np.testing.assert_allclose(
            out.post_state.amps[:4], psi.amps, atol=1e-12
        )

    def test_measure_subset_w_state(self):
        """W-like state: outcome 0 on qubit 0 has p = 2/3 and keeps the
        renormalized (|001> + |010>)/sqrt2 support."""
        w = StateVector(np.array([0, 1, 1, 0, 1, 0, 0, 0]) / math.sqrt(3))
        rng = np.random.default_rng(1)
        while True:
            out = measure_subset(w, [0], rng)
            if out.bits == "0":
                break
        assert abs(out.probability - 2 / 3) < 1e-12
        expected = np.zeros(8)
        expected[1] = expected[2] = SQ2
        np.testing.assert_allclose(out.post_state.amps, expected, atol=1e-12)

    def test_measure_subset_probabilities_sum_to_one(self, rng):
        """Marginals of one qubit over both outcomes add to 1 within 1e-12."""
        for _ in range(20):
            psi = StateVector(random_state_vector(rng, 3))
            probs = psi.probabilities().reshape(2, 4).sum(axis=1)
            assert abs(probs.sum() - 1.0) < 1e-12
            out = measure_subset(psi, [0], rng)
            assert abs(out.probability - probs[int(out.bits)]) < 1e-12

    def test_measure_subset_empty_list(self, rng):
        with pytest.raises(ValueError):
            measure_subset(from_bits("00"), [], rng)


class TestExpectation:
    def test_z_expectation(self, rng):
        phi = StateVector(random_state_vector(rng, 1))
        z = Observable(np.diag([1.0, -1.0]), "Z")
        expected = abs(phi.amps[0]) ** 2 - abs(phi.amps[1]) ** 2
        assert abs(expectation(phi, z) - expected) < 1e-12

    def test_x_eigenstate(self):
        x = Observable(np.array([[0, 1], [1, 0]], dtype=complex), "X")
        assert abs(expectation(from_bits("+"), x) - 1.0) < 1e-12

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            Observable(np.array([[0, 1], [0, 0]]), "bad")


class TestBasisChangeMeasure:
    def test_plus_in_pm_basis(self, rng):
        out = basis_change_measure(from_bits("+"), [from_bits("+"), from_bits("-")], rng)
        assert out.bits == "0" and abs(out.probability - 1.0) < 1e-12

    def test_zero_in_pm_basis_is_even(self, rng):
        counts = [0, 0]
        for _ in range(400):
            out = basis_change_measure(from_bits("0"), [from_bits("+"), from_bits("-")], rng)
            counts[int(out.bits)] += 1
            assert abs(out.probability - 0.5) < 1e-12
        assert counts[0] > 100 and counts[1] > 100

    def test_computational_basis_identity(self, rng):
        out = basis_change_measure(from_bits("1"), [from_bits("0"), from_bits("1")], rng)
        assert out.bits == "1" and abs(out.probability - 1.0) < 1e-12

    def test_non_orthonormal_rejected(self, rng):
        with pytest.raises(ValueError):
            basis_change_measure(from_bits("0"), [from_bits("+"), from_bits("0")], rng)


class TestDensityMatrices:
    def test_pure_ensemble(self, rng):
        psi = StateVector(random_state_vector(rng, 2))
        rho = density_from_ensemble([(1.0, psi)])
        np.testing.assert_allclose(rho.elems, np.outer(psi.amps, psi.amps.conj()), atol=1e-12)

    def test_computational_mixture_is_maximally_mixed(self):
        rho = density_from_ensemble([(0.5, from_bits("0")), (0.5, from_bits("1"))])
        np.testing.assert_allclose(rho.elems, np.eye(2) / 2, atol=1e-12)

    def test_pm_mixture_is_maximally_mixed(self):
        rho = density_from_ensemble([(0.5, from_bits("+")), (0.5, from_bits("-"))])
        np.testing.assert_allclose(rho.elems, np.eye(2) / 2, atol=1e-12)

    def test_ensemble_output_satisfies_invariants(self, rng):
        """Whatever the ensemble, the output is trace-1 Hermitian PSD."""
        for _ in range(25):
            k = int(rng.integers(1, 4))
            ps = rng.random(k)
            ps = ps / ps.sum()
            pairs = [(p, StateVector(random_state_vector(rng, 2))) for p in ps]
            rho = density_from_ensemble(pairs)   # constructor asserts invariants
            assert abs(np.trace(rho.elems) - 1) < 1e-10

    def test_bad_probabilities_rejected(self):
        with pytest.raises(ValueError):
            density_from_ensemble([(0.9, from_bits("0"))])

    def test_partial_trace_bell(self):
        bell = StateVector([SQ2, 0, 0, SQ2])
        rho = density_from_ensemble([(1.0, bell)])
        np.testing.assert_allclose(partial_trace(rho, [0]).elems, np.eye(2) / 2, atol=1e-12)

    def test_partial_trace_product(self, rng):
        rho_a = DensityMatrix(random_density(rng, 2))
        rho_b = DensityMatrix(random_density(rng, 2))
        joint = DensityMatrix(np.kron(rho_a.elems, rho_b.elems))
        np.testing.assert_allclose(partial_trace(joint, [0]).elems, rho_a.elems, atol=1e-12)

    def test_partial_trace_preserves_trace(self, rng):
        rho = DensityMatrix(random_density(rng, 8))
        out = partial_trace(rho, [0, 2])
        assert abs(np.trace(out.elems) - 1.0) < 1e-10


class TestSchmidtAndPurify:
    def test_bell_coefficients(self):
        sf = schmidt_decompose(StateVector([SQ2, 0, 0, SQ2]), 1)
        np.testing.assert_allclose(sf.coefficients, [SQ2, SQ2], atol=1e-12)

    def test_product_state_rank_one(self, rng):
        a = StateVector(random_state_vector(rng, 1))
        b = StateVector(random_state_vector(rng, 2))
        sf = schmidt_decompose(tensor_product(a, b), 1)
        np.testing.assert_allclose(sf.coefficients, [1.0, 0.0], atol=1e-10)

    def test_reconstruction_on_random_states(self, rng):
        """schmidt_decompose then reconstruct is the identity (200 draws,
        every interior cut, n <= 6)."""
        count = 0
        while count < 200:
            n = int(rng.integers(2, 7))
            psi = StateVector(random_state_vector(rng, n))
            for cut in range(1, n):
                sf = schmidt_decompose(psi, cut)
                err = np.max(np.abs(sf.reconstruct().amps - psi.amps))
                # reconstruction is phase-exact, not just up to phase
                assert err < 1e-10
                assert np.all(np.diff(sf.coefficients) <= 1e-12)
                count += 1

    def test_schmidt_bases_orthonormal(self, rng):
        psi = StateVector(random_state_vector(rng, 4))
        sf = schmidt_decompose(psi, 2)
        left = np.stack([b.amps for b in sf.left_basis])
        np.testing.assert_allclose(left.conj() @ left.T, np.eye(4), atol=1e-9)

    def test_purify_pure_state(self, rng):
        psi = StateVector(random_state_vector(rng, 1))
        rho = density_from_ensemble([(1.0, psi)])
        out = purify(rho)
        assert out.n_qubits == 2
        back = partial_trace(density_from_ensemble([(1.0, out)]), [0])
        np.testing.assert_allclose(back.elems, rho.elems, atol=1e-9)

    def test_purify_maximally_mixed(self):
        rho = DensityMatrix(np.eye(2) / 2)
        out = purify(rho)
        back = partial_trace(density_from_ensemble([(1.0, out)]), [0])
        np.testing.assert_allclose(back.elems, np.eye(2) / 2, atol=1e-9)

    def test_purify_roundtrip_random(self, rng):
        """partial_trace(purify(rho)) = rho on 100 random 1- and 2-qubit
        density matrices."""
        for i in range(100):
            n = 1 if i % 2 == 0 else 2
            rho = DensityMatrix(random_density(rng, 2**n))
            out = purify(rho)
            keep = list(range(n))
            back = partial_trace(density_from_ensemble([(1.0, out)]), keep)
            np.testing.assert_allclose(back.elems, rho.elems, atol=1e-9)


class TestValidation:
    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 1.0])

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 0.0, 0.0])

    def test_zero_state(self):
        assert zero_state(3).amps[0] == 1.0

    def test_density_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([1.2, -0.2]))
