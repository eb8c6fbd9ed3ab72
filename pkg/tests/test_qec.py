"""Repetition-code experiments under bit-flip and correlated-rotation noise."""
import math

import numpy as np
import pytest
from numpy.polynomial.hermite_e import hermegauss

from qdesk import gates as G
from qdesk.qec import QecNoise, majority_decode, run_ghz_test, run_single_qubit_test


class TestMajorityDecode:
    def test_two_ones(self):
        assert majority_decode("110") == 1

    def test_all_zero(self):
        assert majority_decode("000") == 0

    def test_single_one(self):
        assert majority_decode("001") == 0

    def test_bad_input(self):
        with pytest.raises(ValueError):
            majority_decode("01")


def quadrature_wrong_rate(sigma: float, idle_gates: int) -> float:
    """Independent oracle for the single-qubit test: the T-chain Z errors
    collapse into one Gaussian sum S ~ N(0, idle_gates sigma^2) that commutes
    through, leaving a 3-variable Gauss-Hermite integral."""
    axis = (G.X + G.Z) / math.sqrt(2)
    nodes, weights = hermegauss(40)
    weights = weights / math.sqrt(2 * math.pi)

    def wrong(a, b, s):
        ea = math.cos(a) * np.eye(2) - 1j * math.sin(a) * axis
        eb = math.cos(b) * np.eye(2) - 1j * math.sin(b) * axis
        mid = math.cos(s) * np.eye(2) - 1j * math.sin(s) * G.X   # H e^{-iZS} H
        return abs((eb @ mid @ ea)[1, 0]) ** 2

    total = 0.0
    for xa, wa in zip(nodes * sigma, weights):
        for xb, wb in zip(nodes * sigma, weights):
            inner = sum(
                ws * wrong(xa, xb, xs)
                for xs, ws in zip(nodes * sigma * math.sqrt(idle_gates), weights)
            )
            total += wa * wb * inner
    return total


class TestSingleQubitTest:
    def test_noise_off_is_exact(self, rng):
        assert run_single_qubit_test(16, QecNoise(), 2000, rng) == 0.0

    def test_t_chain_must_be_identity(self, rng):
        with pytest.raises(ValueError):
            run_single_qubit_test(12, QecNoise(), 100, rng)

    def test_over_rotation_matches_quadrature_oracle(self):
        """sigma = 0.05 over 18 gates: the Monte-Carlo rate sits inside the
        binomial CI of the quadrature value (approximately 17 sigma^2)."""
        sigma, shots = 0.05, 200_000
        rate = run_single_qubit_test(
            16, QecNoise(gate_over_rotation_sigma=sigma), shots, np.random.default_rng(3)
        )
        oracle = quadrature_wrong_rate(sigma, 16)
        assert abs(rate - oracle) < 4 * math.sqrt(oracle * (1 - oracle) / shots)
        # sigma^2 scale: the leading-order random-walk phase model
        assert abs(oracle - 17 * sigma**2) / (17 * sigma**2) < 0.05


class TestGhzTest:
    def test_noise_off_all_zero(self, rng):
        rep = run_ghz_test(16, QecNoise(), 4000, rng)
        assert rep.outcome_breakdown == {"000": 1.0}
        assert rep.p_encoded == 0.0

    def test_independent_bitflip_closed_form(self):
        """Readout flips at p = 0.1: misinterpretation 3p^2 - 2p^3 = 0.028
        within 3 sigma at 1e5 shots."""
        p, shots = 0.1, 100_000
        rep = run_ghz_test(
            16, QecNoise(readout_flip_p=p), shots, np.random.default_rng(2)
        )
        want = 3 * p**2 - 2 * p**3
        sd = math.sqrt(want * (1 - want) / shots)
        assert abs(rep.p_encoded - want) < 3 * sd

    def test_bitflip_grid_shows_suppression(self):
        """Repetition coding helps under independent flips whenever p < 0.5."""
        for p in (0.01, 0.05, 0.1, 0.2):
            rep = run_ghz_test(
                16, QecNoise(readout_flip_p=p), 60_000, np.random.default_rng(7)
            )
            assert rep.p_encoded < rep.p_unencoded

    def test_correlated_rotation_not_suppressed(self):
        """A common rotation error flips all three qubits together; majority
        voting gains nothing (encoded >= 0.9 x unencoded)."""
        rep = run_ghz_test(
            16, QecNoise(rotation_sigma=0.1), 200_000, np.random.default_rng(4)
        )
        assert rep.p_encoded >= 0.9 * rep.p_unencoded
        # the failure mode is the all-three flip, not single flips
        assert rep.outcome_breakdown.get("111", 0.0) > 0.5 * rep.p_encoded
        singles = sum(rep.outcome_breakdown.get(k, 0.0) for k in ("001", "010", "100"))
        assert singles < rep.outcome_breakdown.get("111", 0.0)

    def test_breakdown_sums_to_one(self, rng):
        rep = run_ghz_test(
            16, QecNoise(readout_flip_p=0.05, rotation_sigma=0.05), 20_000, rng
        )
        assert abs(sum(rep.outcome_breakdown.values()) - 1.0) < 1e-9
