"""Weighted Fourier algebra on the torus, pseudomeasures, and decay pairings.

Trigonometric polynomials ``f(t) = sum a_k exp(i k.t)`` carry the weighted
algebra norm ``sum |a_k| (1 + |k|)^alpha``; pseudomeasures carry the dual
norm ``sup |That(k)| / (1 + |k|)^alpha``, and the duality pairing is

    <T, f> = sum_k That(k) fhat(k).

The atomic pseudomeasure of a finite cloud has ``That(k)`` equal to the
mean of ``exp(i k.x_j)`` over the cloud, so the pairing with a polynomial
is the mean of its values on the cloud.  Mollification multiplies the
coefficients by a mollifier table entrywise.

``bp_decay_experiment`` measures how fast ``|<T * delta_eps, f>|`` falls
as ``eps`` shrinks when ``f`` vanishes on the cloud like the ``m``-th
power of the distance: the expected rate is at least
``m - c/2 - alpha`` with ``c`` the measured box-counting order of the
cloud, provided ``m > c/2 + alpha`` (the hypothesis of the estimate).

``varopoulos_m`` and ``varopoulos_p`` are the classical transfer maps
between functions of one variable and of two: ``M`` lifts ``f`` along the
sum map ``(x, y) -> x + y`` (coefficients ``fhat(k)`` on the diagonal
``k = l``), ``P`` averages a bivariate function back down, and
``P(M(f)) = f`` exactly at the coefficient level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dimension import metric_order
from .errors import AccuracyError, ResourceError
from .mollifier import CoefficientTable, Mollifier, build_table
from .pointcloud import TWO_PI, PointCloud

DEFAULT_DIMENSION_SCALES = tuple(2.0**-j for j in range(1, 8))


def _normalize_keys(coeffs: dict, dim_n: int) -> dict:
    out = {}
    for k, v in coeffs.items():
        key = (int(k),) if np.isscalar(k) else tuple(int(c) for c in k)
        if len(key) != dim_n:
            raise ValueError(f"coefficient key {k!r} does not have {dim_n} coordinates")
        out[key] = complex(v)
    return out


def _coeff_arrays(coeffs: dict, dim_n: int):
    if not coeffs:
        return np.zeros((0, dim_n), dtype=int), np.zeros(0, dtype=complex)
    keys = np.array(list(coeffs.keys()), dtype=int).reshape(len(coeffs), dim_n)
    vals = np.array(list(coeffs.values()), dtype=complex)
    return keys, vals


def _evaluate_fourier(coeffs: dict, dim_n: int, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    scalar = pts.ndim == 0 and dim_n == 1
    pts = np.atleast_1d(pts)
    if pts.ndim == 1:
        if dim_n == 1:
            pts = pts[:, None]
        else:
            # a flat array is a single dim_n-coordinate point
            scalar = True
            pts = pts[None, :]
    if pts.shape[-1] != dim_n:
        raise ValueError(f"points must have {dim_n} coordinates")
    keys, vals = _coeff_arrays(coeffs, dim_n)
    out = np.zeros(pts.shape[0], dtype=complex)
    block = max(1, int(4e6) // max(1, keys.shape[0]))
    for start in range(0, pts.shape[0], block):
        sub = pts[start : start + block]
        out[start : start + block] = np.exp(1j * (sub @ keys.T)) @ vals
    return out[0] if scalar else out


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Finitely supported Fourier coefficients on the ``dim_n``-torus.

    ``sampling_defect`` is set by interpolation constructors: the sup
    distance between the polynomial and its target on a control lattice.
    """

    dim_n: int
    coeffs: dict
    sampling_defect: float | None = None

    def __post_init__(self) -> None:
        if self.dim_n < 1:
            raise ValueError("dim_n must be at least 1")
        object.__setattr__(self, "coeffs", _normalize_keys(self.coeffs, self.dim_n))

    def evaluate(self, points):
        return _evaluate_fourier(self.coeffs, self.dim_n, points)

    def support_radius(self) -> float:
        keys, _ = _coeff_arrays(self.coeffs, self.dim_n)
        if keys.shape[0] == 0:
            return 0.0
        return float(np.sqrt((keys * keys).sum(axis=1)).max())


@dataclass(frozen=True, eq=False)
class PseudoMeasure:
    """Dual-side object: finitely many Fourier coefficients, sup-type norm.

    ``declared_support`` is set only by the atomic constructor and names
    the cloud the coefficients came from.
    """

    dim_n: int
    coeffs: dict
    declared_support: PointCloud | None = None

    def __post_init__(self) -> None:
        if self.dim_n < 1:
            raise ValueError("dim_n must be at least 1")
        object.__setattr__(self, "coeffs", _normalize_keys(self.coeffs, self.dim_n))


@dataclass(frozen=True)
class WeightAlpha:
    """Polynomial weight ``(1 + |k|)^alpha`` on the frequency lattice."""

    alpha: float

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")

    def values(self, keys: np.ndarray) -> np.ndarray:
        norms = np.sqrt((keys * keys).sum(axis=1).astype(float))
        return (1.0 + norms) ** self.alpha


def a_alpha_norm(f: TrigPolynomial, weight: WeightAlpha) -> float:
    """Weighted algebra norm ``sum |a_k| (1+|k|)^alpha``."""
    keys, vals = _coeff_arrays(f.coeffs, f.dim_n)
    if keys.shape[0] == 0:
        return 0.0
    return float(np.sum(np.abs(vals) * weight.values(keys)))


def pm_alpha_norm(T: PseudoMeasure, weight: WeightAlpha) -> float:
    """Dual norm ``sup |That(k)| / (1+|k|)^alpha``."""
    keys, vals = _coeff_arrays(T.coeffs, T.dim_n)
    if keys.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(vals) / weight.values(keys)))


def l2_norm(T: PseudoMeasure | TrigPolynomial) -> float:
    """Square-summed coefficient norm (the L2 norm, by Parseval)."""
    _, vals = _coeff_arrays(T.coeffs, T.dim_n)
    return float(np.sqrt(np.sum(np.abs(vals) ** 2)))


def pairing(T: PseudoMeasure, f: TrigPolynomial) -> complex:
    """Duality pairing ``sum_k That(k) fhat(k)`` (finite, so unconditional)."""
    if T.dim_n != f.dim_n:
        raise ValueError(f"dimension mismatch: {T.dim_n} vs {f.dim_n}")
    small, large = (T.coeffs, f.coeffs) if len(T.coeffs) <= len(f.coeffs) else (f.coeffs, T.coeffs)
    total = 0.0 + 0.0j
    for k, v in small.items():
        other = large.get(k)
        if other is not None:
            total += v * other
    return complex(total)


def mollify(T: PseudoMeasure, table: CoefficientTable) -> PseudoMeasure:
    """Coefficientwise product with a mollifier table (convolution with the bump).

    Every frequency of ``T`` must be covered by the table; a gap raises
    ``ValueError`` rather than silently truncating.
    """
    if T.dim_n != table.dim_n:
        raise ValueError(f"dimension mismatch: {T.dim_n} vs {table.dim_n}")
    keys, vals = _coeff_arrays(T.coeffs, T.dim_n)
    factors = table.values_for(keys) if keys.shape[0] else np.zeros(0)
    new = {tuple(int(c) for c in k): complex(v * w) for k, v, w in zip(keys, vals, factors)}
    return PseudoMeasure(dim_n=T.dim_n, coeffs=new, declared_support=None)


def atomic_pseudomeasure(cloud: PointCloud, lattice_bound: int, weight: WeightAlpha) -> PseudoMeasure:
    """Normalized atom sum of a torus cloud, truncated to ``|k| <= lattice_bound``.

    Coefficients are means of ``exp(i k.x_j)`` over the cloud, scaled so the
    weighted dual norm is exactly 1; the pairing with a polynomial supported
    in the ball is then a multiple of the mean of its cloud values.
    """
    if cloud.geometry != "torus":
        raise ValueError("atomic pseudomeasures need torus coordinates")
    if not (isinstance(lattice_bound, (int, np.integer)) and lattice_bound >= 1):
        raise ValueError(f"lattice_bound must be a positive integer, got {lattice_bound!r}")
    n = cloud.ambient_dim
    if n == 1:
        keys = np.arange(-lattice_bound, lattice_bound + 1, dtype=int)[:, None]
    else:
        rng = np.arange(-lattice_bound, lattice_bound + 1, dtype=int)
        mesh = np.stack([g.ravel() for g in np.meshgrid(*([rng] * n), indexing="ij")], axis=1)
        keys = mesh[(mesh * mesh).sum(axis=1) <= lattice_bound * lattice_bound]
    if keys.shape[0] * cloud.count > 4e8:
        raise ResourceError("atom table exceeds the evaluation budget")
    vals = np.empty(keys.shape[0], dtype=complex)
    block = max(1, int(4e6) // max(1, cloud.count))
    for start in range(0, keys.shape[0], block):
        sub = keys[start : start + block]
        vals[start : start + block] = np.exp(1j * (sub @ cloud.points.T)).mean(axis=1)
    scale = float(np.max(np.abs(vals) / (1.0 + np.sqrt((keys * keys).sum(axis=1))) ** weight.alpha))
    vals = vals / scale
    coeffs = {tuple(int(c) for c in k): complex(v) for k, v in zip(keys, vals)}
    return PseudoMeasure(dim_n=n, coeffs=coeffs, declared_support=cloud)


def _fine_values(coeff_grid: np.ndarray, factor: int) -> np.ndarray:
    """Evaluate a coefficient grid on a lattice ``factor`` times finer via zero padding."""
    shape = coeff_grid.shape
    fine_shape = tuple(factor * s for s in shape)
    padded = np.zeros(fine_shape, dtype=complex)
    for idx in np.ndindex(*shape):
        # Frequency of FFT bin idx along each axis, re-binned into the fine grid.
        fine_idx = tuple(
            (i if i <= (s - 1) // 2 else i - s) % fs
            for i, s, fs in zip(idx, shape, fine_shape)
        )
        padded[fine_idx] = coeff_grid[idx]
    return np.fft.ifftn(padded) * np.prod(fine_shape)


def distance_power_function(
    cloud: PointCloud,
    m_exp: float,
    degree: int,
    defect_budget: float = 0.1,
) -> TrigPolynomial:
    """Trigonometric interpolant of ``d(x, cloud)^m_exp`` on the torus.

    Samples the distance power on the ``(2*degree+1)``-per-axis lattice,
    takes the FFT, and checks the interpolant against fresh samples on a
    lattice twice as fine; a sup defect above ``defect_budget`` times the
    peak raises ``AccuracyError``.  The defect is stored on the result.
    """
    if cloud.geometry != "torus":
        raise ValueError("distance powers are interpolated on the torus")
    if not m_exp > 0:
        raise ValueError(f"m_exp must be positive, got {m_exp}")
    if not (isinstance(degree, (int, np.integer)) and degree >= 1):
        raise ValueError(f"degree must be a positive integer, got {degree!r}")
    n = cloud.ambient_dim
    side = 2 * int(degree) + 1
    if side**n > 2e7:
        raise ResourceError(f"interpolation lattice {side}^{n} exceeds the sampling budget")

    axes = [np.arange(side) * (TWO_PI / side)] * n
    mesh = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    samples = cloud.distances_to(mesh) ** m_exp
    coeff_grid = np.fft.fftn(samples.reshape([side] * n)) / side**n

    fine = _fine_values(coeff_grid, 2)
    fine_axes = [np.arange(2 * side) * (TWO_PI / (2 * side))] * n
    fine_mesh = np.stack([g.ravel() for g in np.meshgrid(*fine_axes, indexing="ij")], axis=1)
    target = cloud.distances_to(fine_mesh) ** m_exp
    defect = float(np.max(np.abs(fine.ravel() - target)))
    peak = float(np.max(np.abs(target)))
    if defect > defect_budget * peak:
        raise AccuracyError(
            f"interpolation defect {defect:.3g} exceeds {defect_budget:.3g} of peak {peak:.3g}; "
            "raise the degree"
        )

    freqs = [np.fft.fftfreq(side, d=1.0 / side).astype(int)] * n
    coeffs: dict = {}
    grid = coeff_grid.reshape([side] * n)
    for idx in np.ndindex(*([side] * n)):
        key = tuple(int(freqs[ax][i]) for ax, i in enumerate(idx))
        coeffs[key] = complex(grid[idx])
    return TrigPolynomial(dim_n=n, coeffs=coeffs, sampling_defect=defect)


def multiply(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    """Pointwise product; coefficients convolve."""
    if f.dim_n != g.dim_n:
        raise ValueError(f"dimension mismatch: {f.dim_n} vs {g.dim_n}")
    coeffs: dict = {}
    for k, a in f.coeffs.items():
        for l, b in g.coeffs.items():
            key = tuple(kk + ll for kk, ll in zip(k, l))
            coeffs[key] = coeffs.get(key, 0.0 + 0.0j) + a * b
    return TrigPolynomial(dim_n=f.dim_n, coeffs=coeffs)


def add(f: TrigPolynomial, g: TrigPolynomial, scale: complex = 1.0) -> TrigPolynomial:
    """Linear combination ``f + scale * g``."""
    if f.dim_n != g.dim_n:
        raise ValueError(f"dimension mismatch: {f.dim_n} vs {g.dim_n}")
    coeffs = dict(f.coeffs)
    for k, b in g.coeffs.items():
        coeffs[k] = coeffs.get(k, 0.0 + 0.0j) + scale * b
    return TrigPolynomial(dim_n=f.dim_n, coeffs=coeffs)


def varopoulos_m(f: TrigPolynomial) -> dict:
    """Lift along the sum map: ``F(x, y) = f(x + y)``.

    Bivariate coefficients ``Fhat(k, l) = fhat(k)`` when ``k == l``, else 0;
    represented sparsely as a dict on pairs of lattice points.
    """
    return {(k, k): v for k, v in f.coeffs.items()}


def varopoulos_p(F: dict, dim_n: int | None = None) -> TrigPolynomial:
    """Average a bivariate coefficient map back to one variable.

    Keeps the diagonal ``Fhat(k, k)``; the composition with the lift is the
    identity on polynomials, coefficient by coefficient.
    """
    if dim_n is None:
        if not F:
            raise ValueError("cannot infer dim_n from an empty coefficient map")
        first = next(iter(F))
        dim_n = len(first[0])
    coeffs = {}
    for (k, l), v in F.items():
        if tuple(k) == tuple(l):
            coeffs[tuple(k)] = complex(v)
    return TrigPolynomial(dim_n=dim_n, coeffs=coeffs)


def evaluate_bivariate(F: dict, x, y, dim_n: int) -> complex:
    """Pointwise value ``sum Fhat(k, l) exp(i k.x) exp(i l.y)`` (test helper)."""
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    yy = np.atleast_1d(np.asarray(y, dtype=float))
    total = 0.0 + 0.0j
    for (k, l), v in F.items():
        total += v * np.exp(1j * (np.dot(k, xx) + np.dot(l, yy)))
    return complex(total)


@dataclass(frozen=True)
class BpDecayReport:
    """Measured mollified-pairing decay against the predicted rate."""

    eps: tuple
    pairing_abs: tuple
    slope: float
    threshold: float
    passed: bool
    hypothesis_met: bool
    metric_order_c: float
    alpha: float
    m_exp: float
    margin: float
    sampling_defect: float
    truncation_tails: tuple

    def to_dict(self) -> dict:
        return {
            "eps": list(self.eps),
            "pairing_abs": list(self.pairing_abs),
            "slope": self.slope,
            "threshold": self.threshold,
            "pass": self.passed,
            "hypothesis_met": self.hypothesis_met,
            "metric_order_c": self.metric_order_c,
            "alpha": self.alpha,
            "m_exp": self.m_exp,
            "margin": self.margin,
            "sampling_defect": self.sampling_defect,
            "truncation_tails": list(self.truncation_tails),
        }


def bp_decay_experiment(
    cloud: PointCloud,
    m_exp: float,
    weight: WeightAlpha,
    eps_grid,
    degree: int,
    beta: float = 2.0,
    margin: float = 0.1,
    lattice_factor: int = 4,
    dimension_scales=None,
) -> BpDecayReport:
    """Decay of ``|<T * delta_eps, f>|`` for the atomic ``T`` and distance power ``f``.

    The fitted decay exponent of ``|pairing|`` in ``eps`` (the slope of
    ``log |pairing|`` against ``log eps``, positive for genuine decay) is
    compared with ``m - c/2 - alpha - margin`` where ``c`` is the measured
    metric order.  When the hypothesis ``m > c/2 + alpha`` fails the report
    is marked accordingly and cannot pass.  Frequencies up to
    ``lattice_factor * degree`` are kept in the pseudomeasure; the reported
    truncation tail per scale is the square-summed mollified mass in the
    outer half of that band, which the pairing (supported up to ``degree``)
    never sees but which bounds what the truncation discarded.
    """
    eps = np.asarray(list(eps_grid), dtype=float)
    if eps.size < 3:
        raise ValueError("need at least 3 scales for a decay fit")
    if not (np.all(eps > 0) and np.all(eps <= 1) and np.all(np.diff(eps) < 0)):
        raise ValueError("eps_grid must be strictly decreasing in (0, 1]")

    scales = DEFAULT_DIMENSION_SCALES if dimension_scales is None else tuple(dimension_scales)
    c = metric_order(cloud, scales).fitted_order
    hypothesis_met = m_exp > c / 2.0 + weight.alpha

    f = distance_power_function(cloud, m_exp, degree)
    bound = int(lattice_factor) * int(degree)
    T = atomic_pseudomeasure(cloud, bound, weight)

    keys, tvals = _coeff_arrays(T.coeffs, T.dim_n)
    norms = np.sqrt((keys * keys).sum(axis=1).astype(float))
    pairing_abs = []
    tails = []
    for e in eps:
        table = build_table(Mollifier(float(e), beta, cloud.ambient_dim), bound, method="bessel")
        mollified = tvals * table.values_for(keys)
        outer = norms > bound / 2.0
        tails.append(float(np.sqrt(np.sum(np.abs(mollified[outer]) ** 2))))
        Tm = PseudoMeasure(
            dim_n=T.dim_n,
            coeffs={tuple(int(c_) for c_ in k): complex(v) for k, v in zip(keys, mollified)},
        )
        pairing_abs.append(abs(pairing(Tm, f)))

    x = np.log(eps)
    y = np.log(np.asarray(pairing_abs))
    slope = float(np.polyfit(x, y, 1)[0])
    threshold = float(m_exp - c / 2.0 - weight.alpha - margin)
    passed = bool(hypothesis_met and slope >= threshold)
    return BpDecayReport(
        eps=tuple(float(v) for v in eps),
        pairing_abs=tuple(float(v) for v in pairing_abs),
        slope=slope,
        threshold=threshold,
        passed=passed,
        hypothesis_met=bool(hypothesis_met),
        metric_order_c=float(c),
        alpha=float(weight.alpha),
        m_exp=float(m_exp),
        margin=float(margin),
        sampling_defect=float(f.sampling_defect),
        truncation_tails=tuple(tails),
    )
