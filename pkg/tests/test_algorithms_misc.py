"""Graph kernels, group representations, PCA, and the Potts model."""
import math

import numpy as np
import pytest

from qdesk.algorithms import (
    PottsModel,
    cyclic_group,
    layered_partition,
    min_find,
    potts_partition,
    potts_qft_fragment,
    qpca_two_feature,
    regular_representation,
    rep_matrix_element,
    symmetric_group_s3,
)
from qdesk.algorithms.graphs import UNREACHED, min_find_budget
from qdesk.algorithms.groups import FiniteGroup, group_element_state
from qdesk.algorithms.qpca import purity_circuit_bias
from qdesk.qstate import DensityMatrix, purify


def classical_bfs(adj: np.ndarray, source: int) -> list[int]:
    n = adj.shape[0]
    dist = [UNREACHED] * n
    dist[source] = 0
    queue = [source]
    while queue:
        x = queue.pop(0)
        for y in range(n):
            if adj[x, y] and dist[y] == UNREACHED:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


class TestMinFind:
    def test_single_element(self, rng):
        assert min_find([42.0], rng).index == 0

    def test_budget_formula(self):
        assert min_find_budget(8) == math.floor(22.5 * math.sqrt(8) + 1.4 * 9)

    def test_eight_keys_five_hundred_runs(self):
        """Global minimum found in at least half the runs, never exceeding
        the iteration budget."""
        values = [3, 7, 1, 9, 4, 6, 2, 8]
        budget = min_find_budget(8)
        wins = 0
        for seed in range(500):
            res = min_find(values, np.random.default_rng(seed))
            wins += res.index == 2
            assert res.grover_iterations <= budget
        assert wins >= 250

    def test_minimal_pivot_is_stable(self):
        """A pivot already at the minimum stays (<= marks itself)."""
        values = [5.0, 1.0, 9.0, 7.0]
        hits = sum(
            min_find(values, np.random.default_rng(s)).index == 1 for s in range(50)
        )
        assert hits == 50


class TestLayeredPartition:
    def test_single_vertex(self):
        res = layered_partition(np.zeros((1, 1), dtype=bool), 0)
        assert res.layers == (0,)

    def test_path_graph(self):
        adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=bool)
        res = layered_partition(adj, 0)
        assert res.layers == tuple(classical_bfs(adj, 0)) == (0, 1, 2)

    def test_four_cycle(self):
        adj = np.array(
            [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], dtype=bool
        )
        res = layered_partition(adj, 0)
        assert res.layers == (0, 1, 1, 2)

    def test_random_graphs_match_bfs(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 9))
            adj = rng.random((n, n)) < 0.4
            adj = np.triu(adj, 1)
            adj = adj | adj.T
            res = layered_partition(adj, 0)
            assert list(res.layers) == classical_bfs(adj, 0)

    def test_disconnected_reported(self):
        adj = np.zeros((3, 3), dtype=bool)
        adj[0, 1] = adj[1, 0] = True
        res = layered_partition(adj, 0)
        assert res.layers == (0, 1, UNREACHED)
        assert res.unreached == (2,)


class TestGroups:
    def test_cyclic_a4_regular_representation(self):
        """R(a1) matches the displayed shift matrix."""
        a4 = cyclic_group(4)
        want = np.array(
            [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], dtype=complex
        )
        np.testing.assert_allclose(regular_representation(a4, 1).matrix, want)

    def test_s3_composition_convention(self):
        """s4 . s2 = s6 while s2 . s4 = s5 (0-indexed: 3,1 -> 5 and 1,3 -> 4)."""
        s3 = symmetric_group_s3()
        assert s3.compose(3, 1) == 5
        assert s3.compose(1, 3) == 4

    def test_s3_regular_representation_s2(self):
        s3 = symmetric_group_s3()
        want = np.zeros((6, 6))
        cols = {0: 1, 1: 2, 2: 0, 3: 4, 4: 5, 5: 3}   # s2 . s_j
        for j, i in cols.items():
            want[i, j] = 1
        got = regular_representation(s3, 1).matrix
        np.testing.assert_allclose(got[:6, :6], want)
        # padded states are fixed points
        np.testing.assert_allclose(got[6:, 6:], np.eye(2))

    def test_identity_element_representation(self):
        s3 = symmetric_group_s3()
        np.testing.assert_allclose(
            regular_representation(s3, s3.identity).matrix, np.eye(8)
        )

    def test_matrix_element_a4_example(self):
        """<psi_13| a2 |psi_13> = 1 for the equal superposition of a1, a3."""
        a4 = cyclic_group(4)
        psi = group_element_state(a4, [1, 3])
        assert abs(rep_matrix_element(a4, 2, psi) - 1.0) < 1e-12

    def test_identity_element_always_one(self, rng):
        s3 = symmetric_group_s3()
        psi = group_element_state(s3, [0, 2, 5])
        assert abs(rep_matrix_element(s3, s3.identity, psi) - 1.0) < 1e-12

    def test_s2_swap_element_on_zero(self):
        """S2's swap is X; the Hadamard test reads 2 P0 - 1 = 0 on |0>."""
        s2 = cyclic_group(2)
        psi = group_element_state(s2, [0])
        assert abs(rep_matrix_element(s2, 1, psi)) < 1e-12

    def test_sampled_matrix_element(self):
        a4 = cyclic_group(4)
        psi = group_element_state(a4, [1, 3])
        got = rep_matrix_element(a4, 2, psi, shots=4096,
                                 rng=np.random.default_rng(5))
        assert abs(got - 1.0) < 0.05

    def test_bad_table_rejected(self):
        with pytest.raises(ValueError):
            FiniteGroup(((0, 1), (1, 1)))         # 1 has no inverse / not latin
        with pytest.raises(ValueError):
            FiniteGroup(((1, 0), (0, 2)))         # out of range


HOUSING_BEDROOMS = [4, 3, 4, 4, 3, 3, 3, 3, 4, 4, 4, 5, 4, 3, 4]
HOUSING_SQFT = [3028, 1365, 2726, 2538, 1318, 1693, 1412, 1632, 2875,
                3564, 4412, 4444, 4278, 3064, 3857]


class TestQpca:
    def test_housing_covariance_and_eigenvalues(self):
        rep = qpca_two_feature(HOUSING_BEDROOMS, [v / 1000 for v in HOUSING_SQFT])
        np.testing.assert_allclose(
            rep.covariance, [[0.380952, 0.573476], [0.573476, 1.29693]], atol=2e-5
        )
        assert abs(rep.eigenvalues[0] - 1.57286) < 1e-4
        assert abs(rep.eigenvalues[1] - 0.105029) < 1e-4

    def test_housing_sampled_40960(self):
        rep = qpca_two_feature(HOUSING_BEDROOMS, [v / 1000 for v in HOUSING_SQFT],
                               shots=40960, rng=np.random.default_rng(4))
        assert abs(rep.eigenvalues[0] - 1.57286) < 0.01
        assert abs(rep.eigenvalues[1] - 0.105029) < 0.01

    def test_circuit_bias_equals_purity(self, rng):
        """The controlled-SWAP ancilla bias is Tr(rho^2) for random rho."""
        from conftest import random_density

        for _ in range(10):
            rho = DensityMatrix(random_density(rng, 2))
            psi = purify(rho)
            bias = purity_circuit_bias(np.array(psi.amps))
            assert abs(bias - rho.purity()) < 1e-12

    def test_degenerate_equal_variance(self):
        """Uncorrelated equal-variance features: P = 1/2, eigenvalues split
        the trace evenly."""
        x1 = [1.0, -1.0, 1.0, -1.0]
        x2 = [1.0, 1.0, -1.0, -1.0]
        rep = qpca_two_feature(x1, x2)
        assert abs(rep.purity - 0.5) < 1e-12
        assert abs(rep.eigenvalues[0] - rep.eigenvalues[1]) < 1e-9

    def test_zero_trace_rejected(self):
        with pytest.raises(ValueError):
            qpca_two_feature([1.0, 1.0], [2.0, 2.0])


class TestPotts:
    def test_triangle_closed_form(self):
        """Z = 2 e^(3 beta) + 6 e^beta for the uniform triangle."""
        for beta in (0.0, 0.5, 1.0):
            m = PottsModel(3, ((0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)), 2, beta)
            want = 2 * math.exp(3 * beta) + 6 * math.exp(beta)
            assert abs(potts_partition(m) - want) / want < 1e-9

    def test_infinite_temperature_counts_configurations(self):
        m = PottsModel(4, ((0, 1, 1.0),), 3, 0.0)
        assert abs(potts_partition(m) - 3**4) < 1e-9

    def test_single_edge(self):
        m = PottsModel(2, ((0, 1, 1.0),), 2, 0.7)
        want = 2 * math.exp(0.7) + 2
        assert abs(potts_partition(m) - want) / want < 1e-12

    def test_qft_fragment_exact_halves(self):
        dist = potts_qft_fragment()
        assert set(dist) == {1, 3}
        assert abs(dist[1] - 0.5) < 1e-9
        assert abs(dist[3] - 0.5) < 1e-9

    def test_qft_fragment_sampled(self):
        counts = potts_qft_fragment(rng=np.random.default_rng(0), shots=1000)
        assert set(counts) == {1, 3}
        assert abs(counts[1] - 500) < 80

    def test_enumeration_guard(self):
        with pytest.raises(ValueError):
            potts_partition(PottsModel(21, ((0, 1, 1.0),), 2, 1.0))
