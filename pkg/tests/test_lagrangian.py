import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import complement_projector, engineered_pair, line, proj, random_pair
from lagc import numerics
from lagc.errors import ContractError
from lagc.lagrangian import (
    Lagrangian,
    gap_distance,
    horizontal,
    intersect,
    is_complementary,
    is_lagrangian,
    projection_matrix,
    random_lagrangian,
    reduction_split,
    vertical,
)
from lagc.symplectic import standard_space

S1, S2 = standard_space(1), standard_space(2)
E4 = np.eye(4)


class TestIsLagrangian:
    def test_horizontal(self):
        assert is_lagrangian(S2, E4[:, [0, 1]]).ok

    def test_mixed_lagrangian(self):
        assert is_lagrangian(S2, E4[:, [0, 3]]).ok

    def test_symplectic_pair_is_not(self):
        check = is_lagrangian(S2, E4[:, [0, 2]])
        assert not check.ok
        assert check.residuals["isotropy"] == pytest.approx(1.0)

    def test_too_few_columns(self):
        assert not is_lagrangian(S2, E4[:, [0]]).ok

    def test_constructor_validates(self):
        with pytest.raises(ContractError):
            Lagrangian(S2, E4[:, [0, 2]])


class TestProjection:
    def test_coordinate_projectors(self):
        np.testing.assert_array_equal(projection_matrix(horizontal(S1)), np.diag([1.0, 0.0]))
        np.testing.assert_array_equal(projection_matrix(vertical(S1)), np.diag([0.0, 1.0]))

    def test_slope_one_line(self):
        # P = [[1, a], [a, a^2]] / (1 + a^2) at a = 1
        P = projection_matrix(line(S1, [1, 1]))
        np.testing.assert_allclose(P, np.array([[1.0, 1.0], [1.0, 1.0]]) / 2, atol=1e-15)
        J = S1.J
        np.testing.assert_allclose(P @ J + J @ P, J, atol=1e-15)

    @pytest.mark.parametrize("seed", range(10))
    def test_projector_identities_and_bijectivity(self, seed):
        L = random_lagrangian(standard_space(5), seed)
        P, J = projection_matrix(L), L.space.J
        assert np.linalg.norm(P @ P - P, 2) <= 1e-9
        assert np.linalg.norm(P - P.T, 2) <= 1e-9
        assert np.linalg.norm(P @ J + J @ P - J, 2) <= 1e-9
        again = Lagrangian.from_span(L.space, P)
        assert np.linalg.norm(projection_matrix(again) - P, 2) <= 1e-10


class TestGap:
    def test_self(self):
        L = random_lagrangian(S2, 0)
        assert gap_distance(L, L) == pytest.approx(0.0, abs=1e-15)

    def test_orthogonal_lines(self):
        assert gap_distance(horizontal(S1), vertical(S1)) == 1.0

    def test_diagonal_line(self):
        # P - P' = [[1/2, -1/2], [-1/2, -1/2]], eigenvalues +-1/sqrt2
        diff = np.diag([1.0, 0.0]) - np.full((2, 2), 0.5)
        oracle = np.max(np.abs(np.linalg.eigvalsh(diff)))
        assert oracle == pytest.approx(1 / np.sqrt(2))
        assert gap_distance(horizontal(S1), line(S1, [1, 1])) == pytest.approx(oracle, rel=1e-14)

    def test_space_mismatch(self):
        with pytest.raises(ContractError):
            gap_distance(horizontal(S1), horizontal(S2))

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
    def test_metric_axioms(self, n, seed):
        rng = np.random.default_rng(seed)
        space = standard_space(n)
        a, b, c = (random_lagrangian(space, rng) for _ in range(3))
        assert gap_distance(a, b) == gap_distance(b, a)
        assert 0.0 <= gap_distance(a, b) <= 1.0
        assert gap_distance(a, c) <= gap_distance(a, b) + gap_distance(b, c) + 1e-10


class TestIntersect:
    def test_self(self):
        L = random_lagrangian(S2, 4)
        S = intersect(L, L)
        assert S.dim == 2
        np.testing.assert_allclose(proj(S.basis), projection_matrix(L), atol=1e-12)

    def test_transverse_lines(self):
        assert intersect(horizontal(S1), vertical(S1)).dim == 0

    def test_coordinate_example(self):
        L = Lagrangian(S2, E4[:, [0, 1]])
        Lp = Lagrangian(S2, E4[:, [0, 3]])
        # oracle: the cross-Gram B^T B' = [[1,0],[0,0]] has one unit singular value
        s = np.linalg.svd(L.basis.T @ Lp.basis, compute_uv=False)
        assert np.sum(s >= 1 - 1e-10) == 1
        S = intersect(L, Lp)
        assert S.dim == 1
        np.testing.assert_allclose(proj(S.basis), np.diag([1.0, 0, 0, 0]), atol=1e-15)

    @pytest.mark.parametrize("n, k", [(2, 1), (4, 1), (4, 3), (6, 2)])
    def test_engineered(self, n, k):
        L, Lp = engineered_pair(np.random.default_rng(n * 10 + k), n, k)
        S = intersect(L, Lp)
        assert S.dim == k
        for M in (L, Lp):
            assert np.linalg.norm(S.basis - projection_matrix(M) @ S.basis, 2) <= 1e-8


class TestComplementary:
    @pytest.mark.parametrize("seed", range(3))
    def test_orthogonal_complement(self, seed):
        L = random_lagrangian(standard_space(3), seed)
        ok, sigma = is_complementary(L, L.complement())
        assert ok and sigma == pytest.approx(1.0, abs=1e-12)

    def test_same(self):
        L = random_lagrangian(S2, 9)
        ok, sigma = is_complementary(L, L)
        assert not ok and sigma < 1e-12

    def test_diagonal_line(self):
        r = 1 / np.sqrt(2)
        oracle = np.linalg.svd(np.array([[1.0, r], [0.0, r]]), compute_uv=False)[-1]
        assert oracle == pytest.approx(np.sqrt(1 - r))
        ok, sigma = is_complementary(horizontal(S1), line(S1, [1, 1]))
        assert ok and sigma == pytest.approx(oracle, rel=1e-12)


class TestReductionSplit:
    def test_total_intersection(self):
        L = random_lagrangian(S2, 1)
        split = reduction_split(L, L)
        assert split.S.dim == 2 and split.V2_basis.shape == (4, 0)
        assert split.L_reduced is None

    def test_transverse(self):
        L, Lp = random_pair(np.random.default_rng(2), 3)
        split = reduction_split(L, Lp)
        assert split.S.dim == 0
        assert split.V2_basis.shape == (6, 6)
        lifted = split.lift(split.L_reduced.basis)
        np.testing.assert_allclose(proj(lifted), projection_matrix(L), atol=1e-10)

    def test_coordinate_example(self):
        L = Lagrangian(S2, E4[:, [0, 1]])
        Lp = Lagrangian(S2, E4[:, [0, 3]])
        split = reduction_split(L, Lp)
        np.testing.assert_allclose(proj(split.S.basis), proj(E4[:, [0]]), atol=1e-12)
        np.testing.assert_allclose(proj(split.V1_basis), proj(E4[:, [0, 2]]), atol=1e-12)
        np.testing.assert_allclose(proj(split.V2_basis), proj(E4[:, [1, 3]]), atol=1e-12)
        np.testing.assert_allclose(proj(split.lift(split.L_reduced.basis)), proj(E4[:, [1]]), atol=1e-12)
        np.testing.assert_allclose(proj(split.lift(split.Lprime_reduced.basis)), proj(E4[:, [3]]), atol=1e-12)

    @pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (3, 2), (5, 2), (8, 5)])
    def test_engineered_invariants(self, n, k):
        rng = np.random.default_rng(100 + n * 10 + k)
        L, Lp = engineered_pair(rng, n, k)
        split = reduction_split(L, Lp)
        J = L.space.J
        V1, V2 = split.V1_basis, split.V2_basis
        assert V1.shape[1] == 2 * split.S.dim == 2 * k
        assert np.linalg.norm(V1.T @ V2) <= 1e-10
        for V in (V1, V2):
            assert np.linalg.norm(J @ V - proj(V) @ J @ V, 2) <= 1e-10
        assert is_lagrangian(split.reduced_space, split.L_reduced.basis).ok
        assert is_lagrangian(split.reduced_space, split.Lprime_reduced.basis).ok
        assert is_complementary(split.L_reduced, split.Lprime_reduced).ok
        for M, R in ((L, split.L_reduced), (Lp, split.Lprime_reduced)):
            rebuilt = np.hstack([split.S.basis, split.lift(R.basis)])
            assert np.linalg.norm(proj(rebuilt) - projection_matrix(M), 2) <= 1e-8


class TestRandomLagrangian:
    @pytest.mark.parametrize("seed", range(10))
    def test_valid(self, seed):
        assert is_lagrangian(standard_space(1 + seed % 5), random_lagrangian(standard_space(1 + seed % 5), seed).basis).ok

    def test_deterministic(self):
        a = random_lagrangian(standard_space(4), 1234)
        b = random_lagrangian(standard_space(4), 1234)
        assert a.basis.tobytes() == b.basis.tobytes()

    def test_density_monte_carlo(self):
        space = standard_space(3)
        L0 = horizontal(space)
        rng = np.random.default_rng(2024)
        hits = sum(is_complementary(L0, random_lagrangian(space, rng)).ok for _ in range(1000))
        assert hits / 1000 >= 0.99

    def test_nonstandard_structure(self):
        L, Lp = engineered_pair(np.random.default_rng(5), 4, 1)
        reduced = reduction_split(L, Lp).reduced_space
        assert is_lagrangian(reduced, random_lagrangian(reduced, 7).basis).ok


@pytest.mark.parametrize("seed", range(10))
def test_j_maps_lagrangian_onto_orthogonal_complement(seed):
    L = random_lagrangian(standard_space(4), seed)
    JB = L.space.J @ L.basis
    assert np.linalg.norm(proj(JB) - (np.eye(8) - proj(L.basis)), 2) <= 1e-9


@pytest.mark.parametrize("n, k", [(1, 0), (3, 0), (3, 1), (3, 2), (5, 3)])
def test_sum_complement_is_j_of_intersection(n, k):
    rng = np.random.default_rng(7 * n + k)
    L0, L1 = engineered_pair(rng, n, k) if k else random_pair(rng, n)
    lhs = complement_projector(np.hstack([L0.basis, L1.basis]))
    S = intersect(L0, L1)
    rhs = proj(L0.space.J @ S.basis)
    assert np.linalg.norm(lhs - rhs, 2) <= 1e-8
