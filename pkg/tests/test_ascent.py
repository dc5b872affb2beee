"""Elementary operators, kernel chains, joint spectra, growth orders, calculus."""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from synthlab import (
    AccuracyError,
    CommutingFamily,
    NotGeneralizedScalarError,
    PreconditionError,
    TrigPolynomial,
    apply_single_variable,
    ascent_bound_check,
    build_elementary,
    coordinate_sum_poly,
    expm,
    functional_calculus,
    jordan_block,
    joint_spectrum,
    kernel_chain,
    order_estimate,
    periodic_cutoff,
    random_normal_commuting_pair,
    verify_root_equals_kernel_power,
)

from conftest import philox


class TestExpm:
    def test_matches_scipy_on_random_matrices(self):
        gen = philox(2001)
        for scale in (0.1, 1.0, 10.0, 80.0):
            A = scale * (gen.normal(size=(6, 6)) + 1j * gen.normal(size=(6, 6)))
            np.testing.assert_allclose(
                expm(A), scipy.linalg.expm(A), atol=1e-9 * max(1.0, np.abs(scipy.linalg.expm(A)).max())
            )

    def test_nilpotent_closed_form(self):
        """exp(t J) = I + t J for a 2x2 nilpotent block."""
        J = jordan_block(2, 0.0)
        t = 3.7
        np.testing.assert_allclose(expm(t * J), np.eye(2) + t * J, atol=1e-14)

    def test_diagonal_closed_form(self):
        d = np.array([0.3, -1.2, 2.0])
        np.testing.assert_allclose(expm(np.diag(1j * d)), np.diag(np.exp(1j * d)), atol=1e-14)

    def test_identity_at_zero(self):
        np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))


class TestElementaryOperator:
    def test_apply_matches_direct_sum(self, rng):
        Bs = [rng.normal(size=(4, 4)) for _ in range(3)]
        As = [rng.normal(size=(4, 4)) for _ in range(3)]
        op = build_elementary(Bs, As)
        X = rng.normal(size=(4, 4))
        want = sum(B @ X @ A for B, A in zip(Bs, As))
        np.testing.assert_allclose(op.apply(X), want, atol=1e-12)

    def test_lifted_matches_vectorized_action(self, rng):
        """lifted @ vec(X) = vec(apply(X)) in column-stacking convention."""
        Bs = [rng.normal(size=(3, 3)) for _ in range(2)]
        As = [rng.normal(size=(3, 3)) for _ in range(2)]
        op = build_elementary(Bs, As)
        X = rng.normal(size=(3, 3))
        lhs = op.lifted @ X.flatten(order="F")
        rhs = op.apply(X).flatten(order="F")
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_factor_shape_validation(self, rng):
        with pytest.raises(ValueError):
            build_elementary([rng.normal(size=(2, 2))], [])
        with pytest.raises(ValueError):
            build_elementary([rng.normal(size=(2, 3))], [rng.normal(size=(2, 2))])


class TestKernelChain:
    def test_commutator_with_nilpotent_block(self):
        """ad_J on 2x2 matrices: kernel dims 2, 3, 4 and ascent 3."""
        J = jordan_block(2, 0.0)
        I = np.eye(2)
        op = build_elementary([J, -I], [I, J])
        rep = kernel_chain(op)
        assert rep.kernel_dims == (2, 3, 4)
        assert rep.ascent == 3
        assert rep.root_space_dim == 4
        assert not rep.gray_zone

    def test_kernel_dims_match_brute_force_ranks(self, rng):
        """Chain dims equal dim - rank(lifted^k) computed independently."""
        Bs = [rng.normal(size=(3, 3)) for _ in range(2)]
        As = [rng.normal(size=(3, 3)) for _ in range(2)]
        op = build_elementary(Bs, As)
        rep = kernel_chain(op)
        N = op.lifted
        for k, dim in enumerate(rep.kernel_dims, start=1):
            want = 9 - np.linalg.matrix_rank(np.linalg.matrix_power(N, k), tol=1e-9)
            assert dim == want

    def test_invertible_operator_has_ascent_zero_dims(self, rng):
        """Left multiplication by an invertible matrix has trivial kernel chain."""
        A = rng.normal(size=(3, 3)) + 3.0 * np.eye(3)
        op = build_elementary([A], [np.eye(3)])
        rep = kernel_chain(op)
        assert rep.kernel_dims[:2] == (0, 0)
        assert rep.ascent == 0 or rep.kernel_dims[0] == 0

    def test_single_jordan_block_chain(self):
        """J_4 itself: kernel of J^k has dimension k up to saturation."""
        rep = kernel_chain(jordan_block(4, 0.0))
        assert rep.kernel_dims == (1, 2, 3, 4)
        assert rep.ascent == 4
        assert rep.root_space_dim == 4

    def test_diagonalizable_ascent_one(self):
        A = np.diag([0.0, 0.0, 2.0])
        rep = kernel_chain(A)
        assert rep.ascent == 1
        assert rep.kernel_dims == (2, 2)
        assert rep.root_space_dim == 2

    def test_root_space_matches_eigen_multiplicity(self, rng):
        """Algebraic multiplicity of 0 equals the stabilized kernel dimension."""
        V = rng.normal(size=(5, 5)) + np.eye(5)
        D = np.diag([0.0, 0.0, 1.0, 2.0, 3.0])
        A = V @ D @ np.linalg.inv(V)
        rep = kernel_chain(A)
        assert rep.root_space_dim == 2
        assert rep.eigen_cluster_dim == 2

    def test_verify_root_equals_kernel_power(self):
        J = jordan_block(3, 0.0)
        assert verify_root_equals_kernel_power(J, 3)
        assert not verify_root_equals_kernel_power(J, 2)


class TestJointSpectrum:
    def test_diagonal_family_pairs(self):
        A = np.diag([1.0, 1.0, 2.0])
        B = np.diag([3.0, 4.0, 5.0])
        js = joint_spectrum(CommutingFamily((A, B)))
        got = sorted(
            (tuple(round(z.real, 9) for z in p), m)
            for p, m in zip(js.points, js.multiplicities)
        )
        assert got == [((1.0, 3.0), 1), ((1.0, 4.0), 1), ((2.0, 5.0), 1)]

    def test_multiplicities_sum_to_dimension(self, rng):
        for _ in range(5):
            d = int(rng.integers(2, 7))
            A, B = random_normal_commuting_pair(d, rng)
            js = joint_spectrum(CommutingFamily((A, B)))
            assert sum(js.multiplicities) == d

    def test_simultaneous_eigenvalues_are_consistent(self, rng):
        """Each joint point must pair an eigenvalue of A with one of B."""
        A, B = random_normal_commuting_pair(5, rng)
        js = joint_spectrum(CommutingFamily((A, B)))
        eva = np.linalg.eigvals(A)
        evb = np.linalg.eigvals(B)
        for pt in js.points:
            assert np.min(np.abs(eva - pt[0])) < 1e-8
            assert np.min(np.abs(evb - pt[1])) < 1e-8

    def test_planted_coincidence_lands_on_diagonal(self, rng):
        """The pair always shares at least one joint eigenvalue (a, a)."""
        for _ in range(5):
            A, B = random_normal_commuting_pair(6, rng)
            js = joint_spectrum(CommutingFamily((A, B)))
            assert sum(js.multiplicities) == 6
            assert any(abs(p[0] - p[1]) < 1e-8 for p in js.points)

    def test_nilpotent_family_total_multiplicity(self):
        J = jordan_block(2, 0.0)
        I = np.eye(2)
        js = joint_spectrum(CommutingFamily((np.kron(I, J), np.kron(J.T, I))))
        assert js.points == ((0j, 0j),)
        assert js.multiplicities == (4,)

    def test_upper_triangular_commuting_pair(self):
        A = np.array([[1.0, 1.0], [0.0, 1.0]])
        B = np.array([[2.0, 3.0], [0.0, 2.0]])
        js = joint_spectrum(CommutingFamily((A, B)))
        assert js.points == ((1 + 0j, 2 + 0j),)
        assert js.multiplicities == (2,)

    def test_non_commuting_rejected(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        B = np.array([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(PreconditionError):
            joint_spectrum(CommutingFamily((A, B)))


class TestOrderEstimate:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_jordan_block_order(self, m):
        est = order_estimate(jordan_block(m, 0.0), np.logspace(1, 3, 25))
        assert est.s_fit == pytest.approx(m - 1, abs=0.1)

    def test_normal_matrix_order_zero(self, rng):
        A, _ = random_normal_commuting_pair(5, rng)
        est = order_estimate(A, np.logspace(1, 3, 25))
        assert abs(est.s_fit) < 0.05

    def test_norm_bound_holds_on_grid(self):
        """||e^(itA)|| <= c_fit (1 + |t|)^s_fit on the fitted grid."""
        est = order_estimate(jordan_block(3, 0.0), np.logspace(1, 3, 25))
        for t, nrm in zip(est.t_grid, est.norms):
            assert nrm <= est.c_fit * (1.0 + t) ** est.s_fit * (1 + 1e-9)

    def test_complex_spectrum_rejected(self):
        A = np.array([[0.0, 5.0], [-5.0, 0.0]])  # eigenvalues +-5i
        with pytest.raises(NotGeneralizedScalarError):
            order_estimate(A, np.logspace(1, 3, 10))

    def test_grid_validation(self):
        J = jordan_block(2, 0.0)
        with pytest.raises(ValueError):
            order_estimate(J, [1.0, 2.0, 3.0, 4.0])  # spans < 2 decades
        with pytest.raises(ValueError):
            order_estimate(J, [1.0, 100.0])  # too few points


class TestFunctionalCalculus:
    def test_diagonal_family_matches_pointwise(self, rng):
        d1 = rng.uniform(-2, 2, size=4)
        d2 = rng.uniform(-2, 2, size=4)
        fam = CommutingFamily((np.diag(d1), np.diag(d2)))
        f = TrigPolynomial(2, {(0, 0): 0.3, (2, -1): 1.0 - 0.5j, (1, 1): 0.25j})
        got = functional_calculus(fam, f)
        want = np.diag([f.evaluate([a, b]) for a, b in zip(d1, d2)])
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_single_variable_wrapper(self, rng):
        A = np.diag(rng.uniform(-3, 3, size=5))
        f = TrigPolynomial(1, {(0,): 1.0, (3,): 0.5, (-2,): 0.25j})
        got = apply_single_variable(f, A)
        want = np.diag([f.evaluate(t) for t in np.diag(A)])
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_additive_on_commuting_arguments(self, rng):
        """(f+g)(T) = f(T) + g(T)."""
        A, B = random_normal_commuting_pair(4, rng)
        fam = CommutingFamily((A, B))
        f = TrigPolynomial(2, {(1, 0): 1.0, (0, 2): 0.5j})
        g = TrigPolynomial(2, {(0, 0): 0.7, (1, 1): -0.2})
        from synthlab import add

        np.testing.assert_allclose(
            functional_calculus(fam, add(f, g)),
            functional_calculus(fam, f) + functional_calculus(fam, g),
            atol=1e-10,
        )

    def test_dimension_mismatch(self):
        fam = CommutingFamily((np.eye(2),))
        with pytest.raises(ValueError):
            functional_calculus(fam, TrigPolynomial(2, {(0, 0): 1.0}))

    def test_non_commuting_family_rejected(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        B = np.array([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(PreconditionError):
            functional_calculus(CommutingFamily((A, B)), TrigPolynomial(2, {(1, 1): 1.0}))


class TestPeriodicCutoff:
    def test_identity_on_window(self):
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        ts = np.linspace(-1.0, 1.0, 201)
        vals = phi.evaluate(ts)
        np.testing.assert_allclose(vals.real, ts, atol=1e-3)
        assert np.abs(vals.imag).max() < 1e-10

    def test_odd_symmetry(self):
        phi = periodic_cutoff(k_bound=0.8, smoothing=2)
        ts = np.linspace(0.0, np.pi, 50)
        np.testing.assert_allclose(
            phi.evaluate(ts), -phi.evaluate(-ts), atol=1e-10
        )

    def test_zero_fixed_exactly(self):
        """phi(0) = 0 exactly: 0 is an interpolation node of an odd function."""
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        assert abs(phi.evaluate(0.0)) < 1e-14

    def test_defect_recorded(self):
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        assert phi.sampling_defect is not None
        assert phi.sampling_defect <= 1e-3

    def test_insufficient_explicit_degree_raises(self):
        with pytest.raises(AccuracyError):
            periodic_cutoff(k_bound=3.0, smoothing=0, degree=4)

    def test_k_bound_validation(self):
        with pytest.raises(ValueError):
            periodic_cutoff(k_bound=0.0, smoothing=2)
        with pytest.raises(ValueError):
            periodic_cutoff(k_bound=np.pi, smoothing=2)


class TestCoordinateSum:
    def test_evaluates_to_signed_sum(self):
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1, -1])
        for t1, t2 in [(0.3, 0.1), (0.9, -0.5), (0.0, 0.0)]:
            want = phi.evaluate(t1) - phi.evaluate(t2)
            assert g.evaluate([t1, t2]) == pytest.approx(want, abs=1e-12)

    def test_support_is_axis_aligned(self):
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1, 1, -1])
        for k in g.coeffs:
            assert sum(1 for c in k if c != 0) <= 1


class TestAscentBound:
    def test_jordan_commutator_family_hits_bound(self):
        """The canonical non-synthesis shadow: ascent 3 equals the bound 3."""
        J = jordan_block(2, 0.0)
        I = np.eye(2)
        fam = CommutingFamily((np.kron(I, J), np.kron(J.T, I)))
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1, -1])
        rep = ascent_bound_check(fam, g, alpha_order=2.0)
        assert rep.kernel_dims == (2, 3, 4)
        assert rep.ascent == 3
        assert rep.bound == 3
        assert rep.metric_order_c == 0.0
        assert rep.passed

    def test_normal_pairs_have_ascent_one(self, rng):
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1, -1])
        for _ in range(5):
            A, B = random_normal_commuting_pair(int(rng.integers(4, 8)), rng)
            rep = ascent_bound_check(CommutingFamily((A, B)), g, alpha_order=0.0)
            assert rep.ascent == 1
            assert rep.passed

    def test_report_dict(self):
        J = jordan_block(2, 0.0)
        I = np.eye(2)
        fam = CommutingFamily((np.kron(I, J), np.kron(J.T, I)))
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1, -1])
        d = ascent_bound_check(fam, g, alpha_order=2.0).to_dict()
        assert d["pass"] is True
        assert {"ascent", "bound", "metric_order_c", "kernel_dims"} <= set(d)

    def test_complex_spectrum_rejected(self):
        A = np.array([[0.0, 2.0], [-2.0, 0.0]])
        phi = periodic_cutoff(k_bound=1.0, smoothing=3)
        g = coordinate_sum_poly(phi, [1])
        with pytest.raises(PreconditionError):
            ascent_bound_check(CommutingFamily((A,)), g, alpha_order=0.0)


class TestCommutingFamily:
    def test_commutation_defect_zero_for_commuting(self, rng):
        A, B = random_normal_commuting_pair(4, rng)
        fam = CommutingFamily((A, B))
        assert fam.commutation_defect() < 1e-12
        assert fam.is_commuting()

    def test_defect_positive_for_non_commuting(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        B = np.array([[0.0, 0.0], [1.0, 0.0]])
        fam = CommutingFamily((A, B))
        assert fam.commutation_defect() > 0.1
        assert not fam.is_commuting()

    def test_jordan_block_contents(self):
        J = jordan_block(3, 2.5)
        np.testing.assert_array_equal(np.diag(J), [2.5, 2.5, 2.5])
        np.testing.assert_array_equal(np.diag(J, 1), [1.0, 1.0])
        assert J[2, 0] == 0.0
