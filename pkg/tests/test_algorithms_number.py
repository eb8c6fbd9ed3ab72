"""Shor factoring and HHL linear systems."""
import math
import time

import numpy as np
import pytest

from qdesk.algorithms import (
    HhlProblem,
    compiled_shor_15,
    hhl_solve,
    period_find_classical,
    period_find_quantum,
    shor_factor,
)
from qdesk.algorithms.hhl import hhl_theory

A_DESK = np.array([[1.5, 0.5], [0.5, 1.5]])
SQ2 = 1 / math.sqrt(2)


class TestPeriodFinding:
    def test_seven_mod_fifteen(self):
        assert period_find_classical(7, 15) == 4

    def test_eleven_mod_fifteen(self):
        assert period_find_classical(11, 15) == 2

    def test_unit_base(self):
        assert period_find_classical(1, 77) == 1

    def test_shared_factor_rejected(self):
        with pytest.raises(ValueError):
            period_find_classical(6, 15)

    def test_quantum_matches_classical(self):
        """Quantum periods agree with the modular-exponentiation oracle."""
        rng = np.random.default_rng(4)
        for k, n in ((7, 15), (11, 15), (2, 21), (4, 15)):
            r, _ = period_find_quantum(k, n, rng)
            assert r is not None and r % period_find_classical(k, n) == 0
            assert pow(k, r, n) == 1


class TestCompiledShor:
    def test_register_concentrates_on_zero_and_four(self):
        rep = compiled_shor_15()
        assert abs(rep.register_probabilities[0] - 0.5) < 1e-9
        assert abs(rep.register_probabilities[4] - 0.5) < 1e-9
        assert sum(rep.register_probabilities.values()) > 0.999

    def test_period_and_factors(self):
        rep = compiled_shor_15()
        assert rep.period == 2 and rep.factors == (3, 5)


class TestShorFactor:
    def test_fifteen(self):
        res = shor_factor(15, np.random.default_rng(1))
        assert res.factors == (3, 5) and res.method == "quantum"

    def test_twenty_one_quantum_path(self):
        """Several seeds run the 15-qubit period circuit for N = 21."""
        quantum_seen = False
        for seed in range(8):
            res = shor_factor(21, np.random.default_rng(seed))
            assert res.factors == (3, 7)
            quantum_seen |= res.method == "quantum"
        assert quantum_seen

    def test_within_ten_seconds(self):
        start = time.time()
        shor_factor(15, np.random.default_rng(1))
        shor_factor(21, np.random.default_rng(0))
        assert time.time() - start < 10

    def test_classical_shortcuts_flagged(self):
        assert shor_factor(16, np.random.default_rng(0)).method == "even"
        assert shor_factor(27, np.random.default_rng(0)).method == "prime_power"
        res = shor_factor(13, np.random.default_rng(0))
        assert res.method == "prime" and res.factors is None


class TestHhl:
    def test_table_theory_row_b_zero(self):
        p = HhlProblem(A_DESK, np.array([1.0, 0.0]))
        assert abs(hhl_solve(p, "x") - (-0.60)) < 1e-6
        assert abs(hhl_solve(p, "y") - 0.00) < 1e-6
        assert abs(hhl_solve(p, "z") - 0.80) < 1e-6

    def test_table_theory_row_b_plus(self):
        p = HhlProblem(A_DESK, np.array([SQ2, SQ2]))
        assert abs(hhl_solve(p, "x") - 1.00) < 1e-6
        assert abs(hhl_solve(p, "y")) < 1e-6
        assert abs(hhl_solve(p, "z")) < 1e-6

    def test_table_theory_row_b_minus(self):
        p = HhlProblem(A_DESK, np.array([SQ2, -SQ2]))
        assert abs(hhl_solve(p, "x") - (-1.00)) < 1e-6
        assert abs(hhl_solve(p, "y")) < 1e-6
        assert abs(hhl_solve(p, "z")) < 1e-6

    def test_fifty_random_b_match_direct_inverse(self, rng):
        """Exact mode reproduces A^-1 b expectations within 1e-9."""
        for _ in range(50):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            b = v / np.linalg.norm(v)
            p = HhlProblem(A_DESK, b)
            for obs in "xyz":
                assert abs(hhl_solve(p, obs) - hhl_theory(p, obs)) < 1e-9

    def test_sampled_mode_within_tolerance(self):
        p = HhlProblem(A_DESK, np.array([1.0, 0.0]))
        rng = np.random.default_rng(2)
        for obs, want in (("x", -0.60), ("y", 0.0), ("z", 0.80)):
            got = hhl_solve(p, obs, rng=rng, shots=4096)
            assert abs(got - want) < 0.05

    def test_eigenvalue_validation(self):
        with pytest.raises(ValueError):
            HhlProblem(np.array([[1.0, 0.0], [0.0, 3.0]]), np.array([1.0, 0.0]))
        with pytest.raises(ValueError):
            HhlProblem(A_DESK, np.array([1.0, 1.0]))
