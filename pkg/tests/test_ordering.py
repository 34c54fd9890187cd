import itertools

import numpy as np
import pytest

from permvqe.entanglement import ConnectivityDistance, EntanglementMap, cost
from permvqe.ordering import brute_force_order, fiedler_order, graph_laplacian

from conftest import enumerated_min_cost, random_state
from permvqe.simulator import StateVector
from permvqe.entanglement import mutual_information_map

CONN = ConnectivityDistance(beta=2.0)


def random_map(rng, n):
    mat = np.abs(rng.normal(size=(n, n)))
    mat = (mat + mat.T) / 2
    np.fill_diagonal(mat, 0.0)
    return EntanglementMap(n, mat)


def single_pair_map(n, i, j, value=1.0):
    mat = np.zeros((n, n))
    mat[i, j] = mat[j, i] = value
    return EntanglementMap(n, mat)


def path_map(n):
    mat = np.zeros((n, n))
    for i in range(n - 1):
        mat[i, i + 1] = mat[i + 1, i] = 1.0
    return EntanglementMap(n, mat)


class TestBruteForce:
    def test_zero_map_identity(self):
        result = brute_force_order(EntanglementMap(4, np.zeros((4, 4))), CONN)
        assert result.permutation.is_identity()
        assert result.cost_after == 0.0

    def test_single_pair_made_adjacent(self):
        result = brute_force_order(single_pair_map(6, 0, 5), CONN)
        assert abs(result.permutation(0) - result.permutation(5)) == 1
        assert result.cost_after == pytest.approx(1.0)

    def test_never_worse_than_identity(self, rng):
        for _ in range(10):
            emap = random_map(rng, 5)
            result = brute_force_order(emap, CONN)
            assert result.cost_after <= result.cost_before + 1e-12

    def test_matches_enumeration_oracle(self, rng):
        for _ in range(15):
            n = int(rng.integers(3, 7))
            emap = random_map(rng, n)
            result = brute_force_order(emap, CONN)
            assert result.cost_after == pytest.approx(
                enumerated_min_cost(emap.matrix, 2.0), abs=1e-9
            )

    def test_tie_break_lexicographic(self):
        emap = EntanglementMap(3, np.zeros((3, 3)))
        assert brute_force_order(emap, CONN).permutation.map == (0, 1, 2)

    def test_cap(self):
        with pytest.raises(ValueError, match="cap"):
            brute_force_order(EntanglementMap(5, np.zeros((5, 5))), CONN, cap=4)

    def test_permuted_map_reproduces_cost(self, rng):
        emap = random_map(rng, 6)
        result = brute_force_order(emap, CONN)
        assert cost(emap.permuted(result.permutation), CONN) == pytest.approx(
            result.cost_after, abs=1e-12
        )


class TestLaplacian:
    def test_zero_map(self):
        assert np.allclose(graph_laplacian(EntanglementMap(3, np.zeros((3, 3)))), 0.0)

    def test_two_qubit(self):
        lap = graph_laplacian(single_pair_map(2, 0, 1))
        assert np.allclose(lap, [[1.0, -1.0], [-1.0, 1.0]])

    def test_rows_sum_to_zero_and_psd(self, rng):
        lap = graph_laplacian(random_map(rng, 6))
        assert np.allclose(lap.sum(axis=1), 0.0, atol=1e-12)
        vals = np.linalg.eigvalsh(lap)
        assert vals.min() > -1e-10
        ones = np.ones(6) / np.sqrt(6)
        assert np.linalg.norm(lap @ ones) < 1e-10

    def test_quadratic_form_identity(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 7))
            emap = random_map(rng, n)
            lap = graph_laplacian(emap)
            v = rng.normal(size=n)
            direct = sum(
                emap.matrix[i, j] * (v[i] - v[j]) ** 2
                for i, j in itertools.combinations(range(n), 2)
            )
            assert v @ lap @ v == pytest.approx(direct, abs=1e-9)


class TestFiedler:
    def test_path_graph_keeps_cost(self):
        emap = path_map(5)
        result = fiedler_order(emap, CONN)
        assert result.cost_after == pytest.approx(cost(emap, CONN))
        assert result.permutation.map in ((0, 1, 2, 3, 4), (4, 3, 2, 1, 0))
        assert not result.degenerate

    def test_single_pair_matches_brute_force(self):
        emap = single_pair_map(6, 0, 5)
        assert fiedler_order(emap, CONN).cost_after == pytest.approx(
            brute_force_order(emap, CONN).cost_after
        )

    def test_disconnected_flagged_degenerate(self):
        mat = np.zeros((4, 4))
        mat[0, 1] = mat[1, 0] = 1.0
        mat[2, 3] = mat[3, 2] = 0.5
        result = fiedler_order(EntanglementMap(4, mat), CONN)
        assert result.degenerate
        # components stay contiguous, heavier block first
        pos = result.permutation.map
        assert {pos[0], pos[1]} == {0, 1} and {pos[2], pos[3]} == {2, 3}

    def test_never_beats_brute_force(self, rng):
        ratios = []
        for _ in range(10):
            n = int(rng.integers(3, 7))
            emap = random_map(rng, n)
            bf = brute_force_order(emap, CONN)
            fi = fiedler_order(emap, CONN)
            assert fi.cost_after >= bf.cost_after - 1e-12
            assert cost(emap.permuted(fi.permutation), CONN) == pytest.approx(
                fi.cost_after, abs=1e-12
            )
            if bf.cost_after > 0:
                ratios.append(fi.cost_after / bf.cost_after)
        print(f"\nfiedler/brute-force cost ratio: mean {np.mean(ratios):.3f}, "
              f"max {np.max(ratios):.3f} over {len(ratios)} maps")

    def test_on_random_physical_maps(self, rng):
        for _ in range(5):
            emap = mutual_information_map(StateVector(5, random_state(rng, 5)))
            fi = fiedler_order(emap, CONN)
            bf = brute_force_order(emap, CONN)
            assert fi.cost_after >= bf.cost_after - 1e-12
