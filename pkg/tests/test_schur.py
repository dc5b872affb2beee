"""Entrywise multipliers: action, kernels, decay symbols, and the S2 bound."""

from __future__ import annotations

import numpy as np
import pytest

from synthlab import (
    DiscreteSpace,
    GeneratorSpec,
    MaskedBimodule,
    NumericError,
    PointCloud,
    PreconditionError,
    SymbolGrid,
    balanced_covering,
    block_projection,
    decay_check,
    distance_power_symbol,
    generate,
    hs_bound_experiment,
    kernel_of_schur,
    neighborhood_relation,
    operator_norm,
    s2_norm,
    schur_apply,
    section_distance,
)

from conftest import philox


def cantor_setup(depth=5, n_anchors=4, seed=7, radius_mult=2.0):
    cloud = generate(GeneratorSpec("cantor", "torus", {"depth": depth, "endpoints": "both"}))
    X = DiscreteSpace.from_cloud(cloud)
    w = cloud.min_positive_distance()
    gen = philox(seed)
    anchors = cloud.points[gen.choice(cloud.count, size=n_anchors, replace=False)]
    E = neighborhood_relation(X, anchors, radius=radius_mult * w)
    Y = DiscreteSpace.uniform(E.y_size)
    return cloud, X, Y, E, w


class TestSchurApply:
    def test_matches_entrywise_product(self, rng):
        F = SymbolGrid(rng.normal(size=(5, 7)))
        T = rng.normal(size=(7, 5)) + 1j * rng.normal(size=(7, 5))
        out = schur_apply(F, T)
        for i in range(5):
            for j in range(7):
                assert out[j, i] == pytest.approx(F.values[i, j] * T[j, i])

    def test_factorized_action_agrees(self, rng):
        fs = rng.normal(size=(3, 6))
        gs = rng.normal(size=(3, 4))
        F = SymbolGrid(np.einsum("mi,mj->ij", fs, gs), fs=fs, gs=gs)
        T = rng.normal(size=(4, 6))
        out = schur_apply(F, T)
        np.testing.assert_allclose(out, F.values.T * T, atol=1e-12)

    def test_bad_factorization_rejected(self, rng):
        fs = rng.normal(size=(2, 3))
        gs = rng.normal(size=(2, 5))
        wrong = np.einsum("mi,mj->ij", fs, gs) + 0.1
        with pytest.raises(NumericError):
            SymbolGrid(wrong, fs=fs, gs=gs)

    def test_vinf_bound(self):
        fs = np.array([[1.0, -2.0]])
        gs = np.array([[3.0, 0.5, 1.0]])
        F = SymbolGrid(np.einsum("mi,mj->ij", fs, gs), fs=fs, gs=gs)
        assert F.vinf_bound() == pytest.approx(2.0 * 3.0)

    def test_shape_mismatch(self, rng):
        F = SymbolGrid(rng.normal(size=(3, 4)))
        with pytest.raises(ValueError):
            schur_apply(F, rng.normal(size=(3, 4)))


class TestKernel:
    def test_mask_is_zero_set_and_dimension_verified(self):
        gen = philox(42)
        for trial in range(25):
            nx, ny = int(gen.integers(2, 12)), int(gen.integers(2, 12))
            vals = gen.normal(size=(nx, ny)) * (gen.random(size=(nx, ny)) > 0.4)
            bim = kernel_of_schur(SymbolGrid(vals))
            assert np.array_equal(bim.mask, vals == 0), trial

    def test_supported_operators_are_annihilated(self):
        gen = philox(43)
        vals = gen.normal(size=(6, 8)) * (gen.random(size=(6, 8)) > 0.5)
        F = SymbolGrid(vals)
        bim = kernel_of_schur(F)
        T = (gen.normal(size=(8, 6)) + 1j * gen.normal(size=(8, 6))) * bim.mask.T
        assert np.abs(schur_apply(F, T)).max() == 0.0
        assert bim.is_supported(T)

    def test_unsupported_operator_detected(self):
        bim = MaskedBimodule(np.array([[True, False], [False, True]]))
        T = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert not bim.is_supported(T)

    def test_zero_symbol_kernel_is_everything(self):
        bim = kernel_of_schur(SymbolGrid(np.zeros((3, 4))))
        assert bim.mask.all()

    def test_section(self):
        bim = MaskedBimodule(np.array([[True, False], [True, True], [False, False]]))
        np.testing.assert_array_equal(bim.section(0), [0, 1])
        np.testing.assert_array_equal(bim.section(1), [1])


class TestSectionDistance:
    def test_distance_to_section_by_hand(self):
        cloud = PointCloud(np.array([[0.0], [1.0], [3.0]]), "torus")
        X = DiscreteSpace.from_cloud(cloud)
        E = MaskedBimodule(np.array([[True], [False], [False]]))
        assert section_distance(E, X, 0, 0) == 0.0
        assert section_distance(E, X, 1, 0) == pytest.approx(1.0)
        assert section_distance(E, X, 2, 0) == pytest.approx(3.0)

    def test_empty_section_is_infinite(self):
        cloud = PointCloud(np.array([[0.0], [1.0]]), "torus")
        X = DiscreteSpace.from_cloud(cloud)
        E = MaskedBimodule(np.array([[False], [False]]))
        assert np.isinf(section_distance(E, X, 0, 0))


class TestDecayCheck:
    def test_canonical_symbol_has_constant_one(self):
        cloud, X, Y, E, w = cantor_setup()
        F = distance_power_symbol(E, X, rho=0.4)
        holds, c = decay_check(F, E, X, rho=0.4)
        assert holds
        assert c == pytest.approx(1.0)

    def test_symbol_nonzero_on_relation_fails(self):
        cloud, X, Y, E, w = cantor_setup()
        vals = distance_power_symbol(E, X, rho=0.4).values + 0.05
        holds, c = decay_check(SymbolGrid(vals), E, X, rho=0.4)
        assert not holds
        assert np.isinf(c)

    def test_scaled_symbol_scales_constant(self):
        cloud, X, Y, E, w = cantor_setup()
        F = distance_power_symbol(E, X, rho=0.3)
        holds, c = decay_check(SymbolGrid(2.5 * F.values), E, X, rho=0.3)
        assert holds
        assert c == pytest.approx(2.5)


class TestWeightedNorms:
    def test_s2_norm_by_hand(self):
        X = DiscreteSpace(np.array([0.25, 0.75]))
        Y = DiscreteSpace(np.array([0.5, 0.5]))
        T = np.array([[1.0, 2.0], [0.0, 1.0]])
        want = np.sqrt(
            0.5 * 0.25 * 1.0 + 0.5 * 0.75 * 4.0 + 0.5 * 0.25 * 0.0 + 0.5 * 0.75 * 1.0
        )
        assert s2_norm(T, X, Y) == pytest.approx(want)

    def test_operator_norm_uniform_is_spectral(self, rng):
        n = 6
        X = DiscreteSpace.uniform(n)
        Y = DiscreteSpace.uniform(n)
        T = rng.normal(size=(n, n))
        want = np.linalg.svd(T, compute_uv=False)[0] / n
        assert operator_norm(T, X, Y) == pytest.approx(want)

    def test_norms_obey_singular_value_sandwich(self, rng):
        """||T|| <= ||T||_S2 <= sqrt(min dim) ||T|| in the same weighting."""
        X = DiscreteSpace.uniform(5)
        Y = DiscreteSpace.uniform(7)
        for _ in range(5):
            T = rng.normal(size=(7, 5))
            op = operator_norm(T, X, Y)
            s2 = s2_norm(T, X, Y)
            assert op <= s2 * (1 + 1e-12)
            assert s2 <= np.sqrt(5) * op * (1 + 1e-12)


class TestBlockProjection:
    def test_projection_is_conditional_expectation(self):
        cloud = PointCloud(np.array([[0.0], [0.1], [3.0], [3.05]]), "torus")
        X = DiscreteSpace.from_cloud(cloud)
        P = block_projection([(0, 1), (2, 3)], X)
        np.testing.assert_allclose(P, P @ P, atol=1e-12)
        np.testing.assert_allclose(P.sum(axis=1), 1.0)
        assert P[0, 1] == pytest.approx(0.5)
        assert P[0, 2] == 0.0

    def test_weighted_blocks(self):
        X = DiscreteSpace(np.array([0.2, 0.8]))
        P = block_projection([(0, 1)], X)
        np.testing.assert_allclose(P, [[0.2, 0.8], [0.2, 0.8]])

    def test_partition_required(self):
        X = DiscreteSpace.uniform(3)
        with pytest.raises(ValueError):
            block_projection([(0, 1)], X)
        with pytest.raises(ValueError):
            block_projection([(0, 1), (1, 2)], X)


class TestHsBound:
    def test_all_trials_pass_on_canonical_setup(self):
        cloud, X, Y, E, w = cantor_setup()
        rho = 0.31
        F = distance_power_symbol(E, X, rho)
        rep = hs_bound_experiment(F, E, X, Y, rho=rho, trials=25, seed=1234)
        assert rep.all_passed
        assert len(rep.rows) == 25
        # supported operators are annihilated exactly at the endpoint
        assert max(r["lhs"] for r in rep.rows) == 0.0
        # the smeared comparison is the nontrivial one
        assert max(r["lhs_smeared"] for r in rep.rows) > 0.0

    def test_rows_are_seed_reproducible(self):
        cloud, X, Y, E, w = cantor_setup()
        F = distance_power_symbol(E, X, 0.31)
        r1 = hs_bound_experiment(F, E, X, Y, rho=0.31, trials=5, seed=99)
        r2 = hs_bound_experiment(F, E, X, Y, rho=0.31, trials=5, seed=99)
        assert r1.rows == r2.rows
        r3 = hs_bound_experiment(F, E, X, Y, rho=0.31, trials=5, seed=100)
        assert r3.rows != r1.rows

    def test_decay_failure_is_a_precondition_error(self):
        cloud, X, Y, E, w = cantor_setup()
        bad = SymbolGrid(distance_power_symbol(E, X, 0.31).values + 0.05)
        with pytest.raises(PreconditionError):
            hs_bound_experiment(bad, E, X, Y, rho=0.31, trials=3, seed=0)

    def test_shape_guards(self):
        cloud, X, Y, E, w = cantor_setup()
        F = distance_power_symbol(E, X, 0.31)
        with pytest.raises(ValueError):
            hs_bound_experiment(F, E, X, X, rho=0.31, trials=3, seed=0)

    def test_report_dict(self):
        cloud, X, Y, E, w = cantor_setup()
        F = distance_power_symbol(E, X, 0.31)
        rep = hs_bound_experiment(F, E, X, Y, rho=0.31, trials=3, seed=5)
        d = rep.to_dict()
        assert d["pass"] is True
        assert {"C", "K", "rho", "delta", "block_count"} <= set(d)


class TestNeighborhoodRelation:
    def test_sections_are_balls(self):
        cloud = PointCloud(np.array([[0.0], [0.5], [1.0], [3.0]]), "torus")
        X = DiscreteSpace.from_cloud(cloud)
        E = neighborhood_relation(X, np.array([[0.0]]), radius=0.6)
        np.testing.assert_array_equal(E.mask[:, 0], [True, True, False, False])

    def test_empty_section_widened_to_nearest(self):
        cloud = PointCloud(np.array([[0.0], [1.0]]), "torus")
        X = DiscreteSpace.from_cloud(cloud)
        E = neighborhood_relation(X, np.array([[3.0]]), radius=0.1)
        assert E.mask[:, 0].sum() == 1
        assert E.mask[1, 0]  # the nearest point


class TestCoveringProjectionInterplay:
    def test_smearing_moves_mass_at_most_block_diameter(self):
        """Each row of T P stays supported within delta of the original cells."""
        cloud, X, Y, E, w = cantor_setup(depth=4)
        delta = 3.0 * w
        cov = balanced_covering(cloud, delta, 3.0, exponent_c=1.0)
        P = block_projection(cov.blocks, X)
        D = cloud.pairwise_distances()
        # column j of P is nonzero only for i in the same block: d(x_i, x_j) < delta
        nz = np.argwhere(np.abs(P) > 0)
        assert np.all(D[nz[:, 0], nz[:, 1]] < delta)
