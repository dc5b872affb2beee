"""Ascent of elementary operators, joint spectra, and growth orders.

An elementary operator ``Delta(X) = sum_j B_j X A_j`` lifts to the matrix
``sum_j A_j^T kron B_j`` acting on column-stacked matrices, so kernels of
powers, ascent (the first ``m`` with ``ker Delta^m = ker Delta^(m+1)``)
and the root space of the eigenvalue 0 are all finite-dimensional linear
algebra.  Rank decisions use singular values against a relative threshold,
with a flag when a singular value sits near the cut.

For a commuting family the joint spectrum is computed by refining
eigenvalue clusters one matrix at a time through sorted Schur
decompositions; spectral subspaces of one matrix are invariant under the
others, so compressions stay commuting and the recursion terminates with
joint eigenvalue tuples whose multiplicities sum to the dimension.

``order_estimate`` fits the polynomial growth exponent ``s`` in
``||exp(itA)|| <= C (1 + |t|)^s``; a single Jordan block of size ``m``
has exact order ``m - 1``.  ``functional_calculus`` evaluates
trigonometric polynomials ``f(T_1, ..., T_n) = sum fhat(k) exp(i k.T)``
on a commuting family, and ``periodic_cutoff`` builds the standard
periodization ingredient: an odd trigonometric polynomial equal to ``t``
on ``[-k_bound, k_bound]`` up to a controlled defect.

The matrix exponential is a scaling-and-squaring Pade evaluation built
here (cross-checked against eigendecompositions where those are
well-conditioned) so the growth experiments do not lean on the library
routine they are meant to probe.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor, log2, pi

import numpy as np
from scipy.linalg import schur as _schur
from scipy.special import betainc

from .dimension import metric_order
from .errors import (
    AccuracyError,
    NotGeneralizedScalarError,
    NumericError,
    PreconditionError,
)
from .fourier import TrigPolynomial
from .pointcloud import TWO_PI, PointCloud

DEFAULT_SPECTRUM_SCALES = tuple(2.0**-j for j in range(1, 8))


def expm(A: np.ndarray) -> np.ndarray:
    """Matrix exponential by Pade [6/6] with scaling and squaring.

    The argument is scaled by ``2^-s`` until its 1-norm is at most 1/4;
    the [6/6] approximant then carries a truncation error far below double
    precision, and the result is squared ``s`` times.
    """
    M = np.asarray(A)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expm needs a square matrix")
    d = M.shape[0]
    norm = float(np.abs(M).sum(axis=0).max()) if d else 0.0
    s = max(0, int(ceil(log2(norm / 0.25)))) if norm > 0.25 else 0
    X = M / (2.0**s)

    # c_k = (12-k)! 6! / (12! k! (6-k)!); even powers feed V, odd feed U.
    c = [1.0]
    for k in range(6):
        c.append(c[-1] * (6.0 - k) / ((12.0 - k) * (k + 1.0)))
    eye = np.eye(d, dtype=complex)
    X = X.astype(complex)
    X2 = X @ X
    X4 = X2 @ X2
    X6 = X4 @ X2
    V = c[0] * eye + c[2] * X2 + c[4] * X4 + c[6] * X6
    U = X @ (c[1] * eye + c[3] * X2 + c[5] * X4)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R


@dataclass(frozen=True, eq=False)
class CommutingFamily:
    """Tuple of same-size square matrices with a measured commutation defect."""

    matrices: tuple
    commutation_tol: float = 1e-10

    def __post_init__(self) -> None:
        mats = tuple(np.asarray(m, dtype=complex) for m in self.matrices)
        if len(mats) == 0:
            raise ValueError("family must contain at least one matrix")
        d = mats[0].shape
        if len(d) != 2 or d[0] != d[1]:
            raise ValueError("family members must be square matrices")
        if any(m.shape != d for m in mats):
            raise ValueError("family members must share one size")
        object.__setattr__(self, "matrices", mats)

    @property
    def size(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return int(self.matrices[0].shape[0])

    def commutation_defect(self) -> float:
        """Largest relative commutator norm over all pairs."""
        worst = 0.0
        for i in range(self.size):
            for j in range(i + 1, self.size):
                a, b = self.matrices[i], self.matrices[j]
                scale = max(1.0, float(np.linalg.norm(a) * np.linalg.norm(b)))
                worst = max(worst, float(np.linalg.norm(a @ b - b @ a)) / scale)
        return worst

    def is_commuting(self) -> bool:
        return self.commutation_defect() <= self.commutation_tol


@dataclass(frozen=True, eq=False)
class ElementaryOperator:
    """``Delta(X) = sum_j left[j] X right[j]`` with its vectorized lift.

    The lift ``sum_j right[j]^T kron left[j]`` (column-stacking convention)
    is cross-validated against the direct action on a few deterministic
    matrices at construction time.
    """

    lefts: tuple
    rights: tuple
    lifted: np.ndarray

    @property
    def out_dim(self) -> int:
        return int(self.lefts[0].shape[0])

    @property
    def in_dim(self) -> int:
        return int(self.rights[0].shape[0])

    def apply(self, X: np.ndarray) -> np.ndarray:
        XX = np.asarray(X)
        if XX.shape != (self.out_dim, self.in_dim):
            raise ValueError(f"argument must have shape {(self.out_dim, self.in_dim)}")
        out = np.zeros((self.out_dim, self.in_dim), dtype=complex)
        for B, A in zip(self.lefts, self.rights):
            out += B @ XX @ A
        return out


def build_elementary(lefts, rights) -> ElementaryOperator:
    """Assemble and verify the lift of ``X -> sum_j lefts[j] X rights[j]``."""
    Bs = tuple(np.asarray(b, dtype=complex) for b in lefts)
    As = tuple(np.asarray(a, dtype=complex) for a in rights)
    if len(Bs) == 0 or len(Bs) != len(As):
        raise ValueError("need equally many nonzero left and right factor lists")
    d1 = Bs[0].shape
    d2 = As[0].shape
    if any(b.shape != d1 for b in Bs) or any(a.shape != d2 for a in As):
        raise ValueError("factors must be square matrices of consistent sizes")
    if len(d1) != 2 or d1[0] != d1[1] or len(d2) != 2 or d2[0] != d2[1]:
        raise ValueError("factors must be square matrices")
    lifted = np.zeros((d1[0] * d2[0], d1[0] * d2[0]), dtype=complex)
    for B, A in zip(Bs, As):
        lifted += np.kron(A.T, B)
    op = ElementaryOperator(lefts=Bs, rights=As, lifted=lifted)

    gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=0x5EED)))
    scale = max(1.0, float(np.abs(lifted).max()))
    for _ in range(3):
        X = gen.standard_normal((d1[0], d2[0])) + 1j * gen.standard_normal((d1[0], d2[0]))
        direct = op.apply(X).flatten(order="F")
        via_lift = lifted @ X.flatten(order="F")
        if float(np.abs(direct - via_lift).max()) > 1e-10 * scale * float(np.abs(X).max()):
            raise NumericError("vectorized lift disagrees with direct application")
    return op


def _rank_and_flag(M: np.ndarray, rtol: float):
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0, False
    thr = rtol * sv[0]
    rank = int(np.sum(sv > thr))
    gray = bool(np.any((sv > thr / 10.0) & (sv <= thr * 10.0)))
    return rank, gray


@dataclass(frozen=True)
class AscentReport:
    """Kernel-power chain of a lifted operator.

    ``kernel_dims`` records ``dim ker Delta^k`` for ``k = 1..max(ascent, 2)``
    (always at least two powers, witnessing stabilization).  The root space
    dimension is the stabilized kernel dimension, which for a finite matrix
    equals the algebraic multiplicity of the eigenvalue 0; the eigenvalue
    cluster count is reported alongside and a disagreement (possible for
    badly nonnormal inputs, where eigenvalues smear) sets the flag.
    """

    kernel_dims: tuple
    ascent: int
    root_space_dim: int
    eigen_cluster_dim: int
    gray_zone: bool
    rank_rtol: float
    matrix_dim: int

    def to_dict(self) -> dict:
        return {
            "kernel_dims": list(self.kernel_dims),
            "ascent": self.ascent,
            "root_space_dim": self.root_space_dim,
            "eigen_cluster_dim": self.eigen_cluster_dim,
            "gray_zone": self.gray_zone,
            "rank_rtol": self.rank_rtol,
            "matrix_dim": self.matrix_dim,
        }


def _lifted_matrix(op) -> np.ndarray:
    if isinstance(op, ElementaryOperator):
        return op.lifted
    M = np.asarray(op, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("kernel chains need a square matrix or an elementary operator")
    return M


def kernel_chain(op, max_power: int | None = None, rank_rtol: float = 1e-10) -> AscentReport:
    """Dimensions of ``ker Delta^k`` until stabilization, with the ascent.

    Powers are renormalized in Frobenius norm before the next multiply so
    only the column space, not the magnitude, propagates.
    """
    L = _lifted_matrix(op)
    d = L.shape[0]
    cap = d + 1 if max_power is None else int(max_power)
    if cap < 1:
        raise ValueError("max_power must be at least 1")
    dims = []
    gray_any = False
    P = np.eye(d, dtype=complex)
    ascent = None
    for k in range(1, cap + 1):
        P = P @ L
        nrm = float(np.linalg.norm(P))
        if nrm > 0:
            P = P / nrm
        rank, gray = _rank_and_flag(P, rank_rtol)
        gray_any = gray_any or gray
        dims.append(d - rank)
        if k >= 2 and dims[-1] == dims[-2]:
            ascent = k - 1
            break
    if ascent is None:
        raise NumericError(
            f"kernel chain did not stabilize within {cap} powers (dims so far {dims})"
        )
    recorded = tuple(dims[: max(ascent, 2)])
    root_dim = dims[-1]

    eigvals = np.linalg.eigvals(L)
    scale = max(1.0, float(np.abs(eigvals).max()))
    cluster = int(np.sum(np.abs(eigvals) <= 1e-8 * scale))
    return AscentReport(
        kernel_dims=recorded,
        ascent=int(ascent),
        root_space_dim=int(root_dim),
        eigen_cluster_dim=cluster,
        gray_zone=bool(gray_any or cluster != root_dim),
        rank_rtol=rank_rtol,
        matrix_dim=d,
    )


def verify_root_equals_kernel_power(op, k: int, rank_rtol: float = 1e-10) -> bool:
    """Whether ``dim ker Delta^k`` already equals the root space dimension."""
    if k < 1:
        raise ValueError("power must be at least 1")
    L = _lifted_matrix(op)
    report = kernel_chain(L, rank_rtol=rank_rtol)
    P = np.linalg.matrix_power(L, k)
    nrm = float(np.linalg.norm(P))
    if nrm > 0:
        P = P / nrm
    rank, _ = _rank_and_flag(P, rank_rtol)
    return L.shape[0] - rank == report.root_space_dim


@dataclass(frozen=True)
class JointSpectrum:
    """Joint eigenvalue tuples of a commuting family with multiplicities."""

    points: tuple
    multiplicities: tuple

    def __post_init__(self) -> None:
        if len(self.points) != len(self.multiplicities):
            raise ValueError("points and multiplicities must align")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @property
    def total_dim(self) -> int:
        return int(sum(self.multiplicities))


def _cluster_eigenvalues(ev: np.ndarray, tol: float):
    order = np.lexsort((ev.imag, ev.real))
    groups = [[ev[order[0]]]]
    for idx in order[1:]:
        if abs(ev[idx] - groups[-1][-1]) <= tol:
            groups[-1].append(ev[idx])
        else:
            groups.append([ev[idx]])
    return groups


def _resolve_tuples(mats, start: int, cluster_rtol: float):
    d = mats[0].shape[0]
    for idx in range(start, len(mats)):
        A = mats[idx]
        ev = np.linalg.eigvals(A)
        scale = max(1.0, float(np.abs(ev).max()))
        tol = cluster_rtol * scale
        groups = _cluster_eigenvalues(ev, tol)
        if len(groups) == 1:
            continue
        out = []
        for grp in groups:
            members = np.asarray(grp)

            def inside(z, members=members, tol=tol):
                return bool(np.min(np.abs(z - members)) <= tol / 2.0)

            _, Z, sdim = _schur(A, output="complex", sort=inside)
            if sdim != len(grp):
                raise NumericError(
                    f"eigenvalue cluster of size {len(grp)} separated into a "
                    f"{sdim}-dimensional invariant subspace; clusters too close"
                )
            V = Z[:, :sdim]
            sub = [V.conj().T @ M @ V for M in mats]
            out.extend(_resolve_tuples(sub, idx, cluster_rtol))
        return out
    value = tuple(complex(np.trace(M)) / d for M in mats)
    return [value] * d


def joint_spectrum(family: CommutingFamily, cluster_rtol: float = 1e-8) -> JointSpectrum:
    """Joint eigenvalues by sequential Schur cluster refinement.

    Requires a commuting family (spectral subspaces must be jointly
    invariant for the compressions to be meaningful); the defect check
    failing raises ``PreconditionError``.
    """
    defect = family.commutation_defect()
    if defect > family.commutation_tol:
        raise PreconditionError(
            f"family commutation defect {defect:.3g} exceeds {family.commutation_tol:.3g}"
        )
    mats = [np.asarray(m, dtype=complex) for m in family.matrices]
    tuples = _resolve_tuples(mats, 0, cluster_rtol)
    if len(tuples) != family.dim:
        raise NumericError("joint spectrum lost multiplicity during refinement")

    scale = max(1.0, max(abs(c) for tup in tuples for c in tup))
    tol = 1e-8 * scale
    points: list[tuple] = []
    mults: list[int] = []
    for tup in tuples:
        for i, p in enumerate(points):
            if max(abs(a - b) for a, b in zip(tup, p)) <= tol:
                mults[i] += 1
                break
        else:
            points.append(tup)
            mults.append(1)
    return JointSpectrum(points=tuple(points), multiplicities=tuple(mults))


@dataclass(frozen=True)
class OrderEstimate:
    """Fitted polynomial growth of ``||exp(itA)||`` over a time grid."""

    s_fit: float
    c_fit: float
    t_grid: tuple
    norms: tuple

    def to_dict(self) -> dict:
        return {
            "s_fit": self.s_fit,
            "c_fit": self.c_fit,
            "t_grid": list(self.t_grid),
            "norms": list(self.norms),
        }


def order_estimate(A: np.ndarray, t_grid) -> OrderEstimate:
    """Fit ``s`` and ``C`` in ``||exp(itA)|| <= C (1 + t)^s`` on the grid.

    The grid must be positive, increasing, and span at least two decades.
    A spectrum too far from the real axis makes the growth exponential
    (``NotGeneralizedScalarError``).  Where the matrix is diagonalizable
    with a well-conditioned eigenbasis, the exponentials are cross-checked
    against the eigendecomposition route.
    """
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("order estimates need a square matrix")
    t = np.asarray(list(t_grid), dtype=float)
    if t.size < 5 or not np.all(t > 0) or not np.all(np.diff(t) > 0):
        raise ValueError("t_grid must be at least 5 positive increasing times")
    if t[-1] / t[0] < 100.0:
        raise ValueError("t_grid must span at least two decades")

    ev, vecs = np.linalg.eig(M)
    imag_reach = float(np.max(np.abs(ev.imag))) * float(t[-1])
    if imag_reach > 500.0:
        raise NotGeneralizedScalarError(
            f"spectrum reaches {imag_reach:.3g} nepers over the grid; "
            "growth is exponential, not polynomial"
        )
    cond = float(np.linalg.cond(vecs))
    check_eig = np.isfinite(cond) and cond < 1e8

    norms = []
    for tt in t:
        E = expm(1j * tt * M)
        nrm = float(np.linalg.svd(E, compute_uv=False)[0])
        norms.append(nrm)
        if check_eig:
            alt = (vecs * np.exp(1j * tt * ev)[None, :]) @ np.linalg.inv(vecs)
            if float(np.linalg.norm(alt - E)) > 1e-6 * max(1.0, float(np.linalg.norm(E))):
                raise NumericError(
                    f"matrix exponential disagrees with eigendecomposition at t={tt}"
                )
    x = np.log(1.0 + t)
    y = np.log(np.asarray(norms))
    s_fit, intercept = np.polyfit(x, y, 1)
    c_fit = float(np.max(np.asarray(norms) / (1.0 + t) ** s_fit))
    return OrderEstimate(
        s_fit=float(s_fit),
        c_fit=c_fit,
        t_grid=tuple(float(v) for v in t),
        norms=tuple(float(v) for v in norms),
    )


def functional_calculus(family: CommutingFamily, poly: TrigPolynomial) -> np.ndarray:
    """``f(T_1, ..., T_n) = sum_k fhat(k) exp(i (k_1 T_1 + ... + k_n T_n))``.

    The number of variables of the polynomial must match the family size;
    the family must commute for the definition to be unambiguous.
    """
    if poly.dim_n != family.size:
        raise ValueError(
            f"polynomial in {poly.dim_n} variables applied to {family.size} matrices"
        )
    defect = family.commutation_defect()
    if defect > family.commutation_tol:
        raise PreconditionError(
            f"family commutation defect {defect:.3g} exceeds {family.commutation_tol:.3g}"
        )
    d = family.dim
    out = np.zeros((d, d), dtype=complex)
    for k, v in poly.coeffs.items():
        arg = np.zeros((d, d), dtype=complex)
        for kj, Tj in zip(k, family.matrices):
            if kj:
                arg += kj * Tj
        out += v * expm(1j * arg)
    return out


def apply_single_variable(poly: TrigPolynomial, A: np.ndarray) -> np.ndarray:
    """One-variable calculus ``sum fhat(m) exp(i m A)`` (a convenience wrapper)."""
    if poly.dim_n != 1:
        raise ValueError("needs a one-variable polynomial")
    return functional_calculus(CommutingFamily((np.asarray(A, dtype=complex),)), poly)


def periodic_cutoff(
    k_bound: float,
    smoothing: int,
    degree: int | None = None,
    defect_tol: float = 1e-3,
) -> TrigPolynomial:
    """Odd trigonometric polynomial equal to ``t`` on ``[-k_bound, k_bound]``.

    On ``[k_bound, pi]`` the identity is blended to zero with a smoothstep
    whose first ``smoothing`` derivatives vanish at both ends (a
    regularized incomplete beta), and the odd periodic extension is
    interpolated on a lattice.  The degree doubles until the defect
    against fresh samples inside the window drops below
    ``defect_tol * k_bound``; failure to get there (low smoothing slows
    the coefficient decay) raises ``AccuracyError``.  The achieved defect
    is stored on the polynomial.
    """
    if not 0 < k_bound < pi:
        raise ValueError(f"k_bound must lie in (0, pi), got {k_bound}")
    if not (isinstance(smoothing, (int, np.integer)) and smoothing >= 0):
        raise ValueError(f"smoothing must be a nonnegative integer, got {smoothing!r}")

    def target(t: np.ndarray) -> np.ndarray:
        # Odd, 2*pi periodic, = t inside the window, blended to 0 at pi.
        u = np.mod(t + pi, TWO_PI) - pi
        a = np.abs(u)
        vals = np.where(a <= k_bound, a, 0.0)
        blend = a > k_bound
        tau = (a[blend] - k_bound) / (pi - k_bound)
        step = betainc(smoothing + 1, smoothing + 1, tau)
        out = vals
        out[blend] = a[blend] * (1.0 - step)
        return out * np.sign(u)

    degrees = [int(degree)] if degree is not None else [128, 256, 512, 1024, 2048, 4096]
    last_defect = None
    for N in degrees:
        L = 2 * N + 1
        lattice = np.arange(L) * (TWO_PI / L)
        coeffs_arr = np.fft.fft(target(lattice)) / L
        freqs = np.fft.fftfreq(L, d=1.0 / L).astype(int)
        control = (np.arange(4 * L) + 0.5) * (TWO_PI / (4 * L))
        inside = np.abs(np.mod(control + pi, TWO_PI) - pi) <= k_bound
        vals = np.zeros(control.shape, dtype=complex)
        for m, cf in zip(freqs, coeffs_arr):
            vals += cf * np.exp(1j * m * control)
        defect = float(np.max(np.abs(vals[inside] - target(control[inside]))))
        last_defect = defect
        if defect <= defect_tol * k_bound:
            coeffs = {(int(m),): complex(cf) for m, cf in zip(freqs, coeffs_arr)}
            return TrigPolynomial(dim_n=1, coeffs=coeffs, sampling_defect=defect)
    raise AccuracyError(
        f"cutoff defect {last_defect:.3g} above {defect_tol * k_bound:.3g} at degree "
        f"{degrees[-1]}; raise the degree or the smoothing order"
    )


@dataclass(frozen=True)
class AscentBoundReport:
    """Ascent of ``g(T)`` against the dimension-order bound.

    ``bound`` is ``floor(c/2 + alpha) + 1`` with ``c`` the measured metric
    order of the zero set of ``g`` on the joint spectrum;
    ``bound_ceiling_reading`` records the alternative ``ceil(c/2 + alpha)``
    for comparison (it is violated already by a 2x2 Jordan commutator).
    """

    ascent: int
    bound: int
    bound_ceiling_reading: int
    metric_order_c: float
    alpha_order: float
    kernel_dims: tuple
    root_space_dim: int
    zero_point_count: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "ascent": self.ascent,
            "bound": self.bound,
            "bound_ceiling_reading": self.bound_ceiling_reading,
            "metric_order_c": self.metric_order_c,
            "alpha_order": self.alpha_order,
            "kernel_dims": list(self.kernel_dims),
            "root_space_dim": self.root_space_dim,
            "zero_point_count": self.zero_point_count,
            "pass": self.passed,
        }


def ascent_bound_check(
    family: CommutingFamily,
    poly: TrigPolynomial,
    alpha_order: float,
    dimension_scales=None,
    zero_rtol: float = 1e-8,
) -> AscentBoundReport:
    """Check ``ascent(g(T)) <= floor(c/2 + alpha) + 1`` on a commuting family.

    ``c`` is the box-counting order of the zero set of ``g`` on the joint
    spectrum, viewed on the torus (the joint eigenvalues must be real up
    to 1e-6, as for generalized scalar tuples of finite order).
    """
    if alpha_order < 0:
        raise ValueError("alpha_order must be nonnegative")
    js = joint_spectrum(family)
    pts = np.array([[c for c in tup] for tup in js.points], dtype=complex)
    imag_peak = float(np.abs(pts.imag).max()) if pts.size else 0.0
    if imag_peak > 1e-6 * max(1.0, float(np.abs(pts).max())):
        raise PreconditionError(
            f"joint spectrum has imaginary parts up to {imag_peak:.3g}; "
            "the growth-order framework needs real joint eigenvalues"
        )

    V = functional_calculus(family, poly)
    chain = kernel_chain(V)

    gvals = poly.evaluate(np.mod(pts.real, TWO_PI))
    gscale = max(1.0, float(np.abs(gvals).max())) if gvals.size else 1.0
    zero_pts = pts.real[np.abs(gvals) <= zero_rtol * gscale]
    if zero_pts.shape[0] == 0:
        c = 0.0
    else:
        cloud = PointCloud(np.mod(zero_pts, TWO_PI), "torus")
        scales = DEFAULT_SPECTRUM_SCALES if dimension_scales is None else tuple(dimension_scales)
        c = metric_order(cloud, scales).fitted_order

    bound = int(floor(c / 2.0 + alpha_order)) + 1
    ceiling_reading = int(ceil(c / 2.0 + alpha_order))
    return AscentBoundReport(
        ascent=chain.ascent,
        bound=bound,
        bound_ceiling_reading=ceiling_reading,
        metric_order_c=float(c),
        alpha_order=float(alpha_order),
        kernel_dims=chain.kernel_dims,
        root_space_dim=chain.root_space_dim,
        zero_point_count=int(zero_pts.shape[0]),
        passed=bool(chain.ascent <= bound),
    )


def coordinate_sum_poly(phi: TrigPolynomial, signs) -> TrigPolynomial:
    """Multivariable combination ``g(t) = sum_j signs[j] * phi(t_j)``.

    The coefficient support stays on the coordinate axes, so functional
    calculus of ``g`` costs one exponential per retained frequency per
    variable.  The zero sum of the constant terms is kept explicit.
    """
    if phi.dim_n != 1:
        raise ValueError("needs a one-variable polynomial")
    s = [float(v) for v in signs]
    if len(s) < 1:
        raise ValueError("needs at least one variable")
    n = len(s)
    coeffs: dict = {}
    for (m,), v in phi.coeffs.items():
        for j, sj in enumerate(s):
            key = tuple(m if ax == j else 0 for ax in range(n))
            coeffs[key] = coeffs.get(key, 0.0 + 0.0j) + sj * v
    return TrigPolynomial(dim_n=n, coeffs=coeffs, sampling_defect=phi.sampling_defect)


def jordan_block(size: int, eigenvalue: complex = 0.0) -> np.ndarray:
    """Single Jordan block, the canonical nonnormal test matrix."""
    if size < 1:
        raise ValueError("size must be positive")
    J = np.eye(size, dtype=complex) * eigenvalue
    J += np.diag(np.ones(size - 1), k=1)
    return J
