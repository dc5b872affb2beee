"""Schur multipliers on discrete measure spaces and the smoothing bound.

Operators act from ``L2(X, mu)`` to ``L2(Y, nu)`` and are stored as
``(|Y|, |X|)`` matrices ``T[j, i]``.  A symbol ``F : X x Y -> C`` acts by
entrywise multiplication ``(F . T)[j, i] = F[i, j] T[j, i]``.  A masked
bimodule is the subspace of operators supported on a relation
``E subset X x Y``; its sections ``E^y = {x : (x, y) in E}`` carry the
distances the decay condition ``|F(x, y)| <= C d(x, E^y)^rho`` refers to.

``hs_bound_experiment`` measures the Hilbert-Schmidt smoothing estimate

    || F . T ||_S2  <=  sqrt(C K) ||T||_op,

for ``T`` in the bimodule, with ``K = sum diam(block)^(2 rho)`` over a
balanced covering of ``X``.  Since the decay condition forces ``F`` to
vanish on ``E`` itself, ``F . T`` is identically zero for supported ``T``
(the endpoint of the estimate); the quantitative content appears after
smearing ``T`` through the covering's block-averaging projection, which
pushes mass off ``E`` by at most a block diameter.  Both sides are checked
per trial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dimension import balanced_covering
from .errors import NumericError, PreconditionError
from .pointcloud import PointCloud


@dataclass(frozen=True, eq=False)
class DiscreteSpace:
    """Finite measure space; optionally a metric through a point cloud."""

    weights: np.ndarray
    cloud: PointCloud | None = None

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-d array")
        if not np.all(w > 0):
            raise ValueError("weights must be positive")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if self.cloud is not None and self.cloud.count != w.size:
            raise ValueError(
                f"cloud has {self.cloud.count} points but there are {w.size} weights"
            )

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @classmethod
    def uniform(cls, size: int, cloud: PointCloud | None = None) -> "DiscreteSpace":
        if size < 1:
            raise ValueError("size must be positive")
        return cls(np.full(size, 1.0 / size), cloud)

    @classmethod
    def from_cloud(cls, cloud: PointCloud, weights=None) -> "DiscreteSpace":
        if weights is None:
            return cls.uniform(cloud.count, cloud)
        return cls(np.asarray(weights, dtype=float), cloud)


@dataclass(frozen=True, eq=False)
class SymbolGrid:
    """Symbol values ``F[i, j] = F(x_i, y_j)``, optionally with a factorization.

    A factorization ``F(x, y) = sum_m fs[m](x) gs[m](y)`` is verified on
    construction to 1e-10 and enables the alternative multiplier action
    ``sum_m diag(gs[m]) T diag(fs[m])`` used as a cross-check.
    """

    values: np.ndarray
    fs: np.ndarray | None = None
    gs: np.ndarray | None = None

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if v.ndim != 2:
            raise ValueError("symbol values must be a 2-d array")
        object.__setattr__(self, "values", v)
        if (self.fs is None) != (self.gs is None):
            raise ValueError("factorization needs both factor lists")
        if self.fs is not None:
            fs = np.atleast_2d(np.asarray(self.fs))
            gs = np.atleast_2d(np.asarray(self.gs))
            if fs.shape != (fs.shape[0], v.shape[0]) or gs.shape != (fs.shape[0], v.shape[1]):
                raise ValueError("factor shapes do not match the symbol grid")
            recon = np.einsum("mi,mj->ij", fs, gs)
            scale = max(1.0, float(np.abs(v).max()))
            if float(np.abs(recon - v).max()) > 1e-10 * scale:
                raise NumericError("declared factorization does not reproduce the symbol")
            object.__setattr__(self, "fs", fs)
            object.__setattr__(self, "gs", gs)

    @property
    def x_size(self) -> int:
        return int(self.values.shape[0])

    @property
    def y_size(self) -> int:
        return int(self.values.shape[1])

    def vinf_bound(self) -> float:
        """``sum_m ||fs[m]||_inf ||gs[m]||_inf`` when a factorization is declared."""
        if self.fs is None:
            raise ValueError("no factorization declared")
        return float(
            np.sum(np.abs(self.fs).max(axis=1) * np.abs(self.gs).max(axis=1))
        )


@dataclass(frozen=True, eq=False)
class MaskedBimodule:
    """Relation ``E subset X x Y`` as a boolean mask ``mask[i, j]``."""

    mask: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.mask, dtype=bool)
        if m.ndim != 2:
            raise ValueError("mask must be a 2-d boolean array")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @property
    def x_size(self) -> int:
        return int(self.mask.shape[0])

    @property
    def y_size(self) -> int:
        return int(self.mask.shape[1])

    def section(self, j: int) -> np.ndarray:
        """Indices of ``E^{y_j}``."""
        return np.flatnonzero(self.mask[:, j])

    def is_supported(self, T: np.ndarray, atol: float = 0.0) -> bool:
        """Whether the operator matrix vanishes off the relation."""
        TT = np.asarray(T)
        if TT.shape != (self.y_size, self.x_size):
            raise ValueError(f"operator must have shape {(self.y_size, self.x_size)}")
        off = np.abs(TT.T[~self.mask])
        return bool(off.size == 0 or off.max() <= atol)


def schur_apply(F: SymbolGrid, T: np.ndarray) -> np.ndarray:
    """Entrywise action ``(F . T)[j, i] = F[i, j] T[j, i]``.

    When the symbol declares a factorization the diagonal-sandwich form is
    evaluated as well and must agree to 1e-10.
    """
    TT = np.asarray(T)
    if TT.shape != (F.y_size, F.x_size):
        raise ValueError(f"operator must have shape {(F.y_size, F.x_size)}")
    result = F.values.T * TT
    if F.fs is not None:
        alt = np.zeros_like(result, dtype=complex)
        for fm, gm in zip(F.fs, F.gs):
            alt += gm[:, None] * TT * fm[None, :]
        scale = max(1.0, float(np.abs(result).max()))
        if float(np.abs(alt - result).max()) > 1e-10 * scale:
            raise NumericError("factorized multiplier action disagrees with entrywise action")
    return result


def section_distance(E: MaskedBimodule, x_space: DiscreteSpace, x_index: int, y_index: int) -> float:
    """Distance ``d(x_i, E^{y_j})`` in the metric of ``X``; inf for empty sections."""
    if x_space.cloud is None:
        raise ValueError("X must carry a point cloud to measure section distances")
    if not 0 <= x_index < E.x_size or not 0 <= y_index < E.y_size:
        raise ValueError("index out of range")
    sec = E.section(y_index)
    if sec.size == 0:
        return float("inf")
    d = x_space.cloud.subset(sec).distances_to(x_space.cloud.points[x_index][None, :])
    return float(d[0])


def _section_distance_matrix(E: MaskedBimodule, x_space: DiscreteSpace) -> np.ndarray:
    if x_space.cloud is None:
        raise ValueError("X must carry a point cloud to measure section distances")
    pd = x_space.cloud.pairwise_distances()
    out = np.full((E.x_size, E.y_size), np.inf)
    for j in range(E.y_size):
        sec = E.section(j)
        if sec.size:
            out[:, j] = pd[:, sec].min(axis=1)
    return out


def decay_check(F: SymbolGrid, E: MaskedBimodule, x_space: DiscreteSpace, rho: float):
    """Best constant in ``|F(x, y)| <= C d(x, E^y)^rho``.

    Returns ``(holds, best_C)``.  On cells at distance zero (the relation
    itself) the condition forces ``F = 0`` exactly; any violation returns
    ``(False, inf)``.  Cells with empty sections impose no constraint.
    """
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if (F.x_size, F.y_size) != (E.x_size, E.y_size):
        raise ValueError("symbol and relation shapes differ")
    dist = _section_distance_matrix(E, x_space)
    absF = np.abs(F.values)
    on_zero = dist == 0
    if np.any(absF[on_zero] != 0):
        return False, float("inf")
    constrained = np.isfinite(dist) & ~on_zero
    if not np.any(constrained):
        return True, 0.0
    best = float(np.max(absF[constrained] / dist[constrained] ** rho))
    return True, best


def kernel_of_schur(F: SymbolGrid, tol: float = 1e-12) -> MaskedBimodule:
    """Kernel of the multiplier as a masked bimodule.

    The mask collects cells where the symbol is at most ``tol`` times its
    peak.  The claim that the kernel of the vectorized multiplier equals
    the masked subspace is then re-derived by brute force: the lifted
    operator (diagonal in the matrix-unit basis) is materialized densely
    and its kernel dimension measured from singular values with the same
    relative threshold.  A mismatch raises ``NumericError``.
    """
    absF = np.abs(F.values)
    peak = float(absF.max())
    mask = absF <= tol * peak if peak > 0 else np.ones_like(absF, dtype=bool)

    lifted = np.diag(F.values.T.flatten(order="F"))
    sv = np.linalg.svd(lifted, compute_uv=False)
    top = sv[0] if sv.size else 0.0
    kernel_dim = int(np.sum(sv <= tol * top)) if top > 0 else lifted.shape[0]
    if kernel_dim != int(mask.sum()):
        raise NumericError(
            f"lifted kernel dimension {kernel_dim} != masked cell count {int(mask.sum())}"
        )
    return MaskedBimodule(mask)


def s2_norm(T: np.ndarray, x_space: DiscreteSpace, y_space: DiscreteSpace) -> float:
    """Weighted Hilbert-Schmidt norm on ``L2(X, mu) -> L2(Y, nu)``."""
    TT = np.asarray(T)
    if TT.shape != (y_space.size, x_space.size):
        raise ValueError(f"operator must have shape {(y_space.size, x_space.size)}")
    w = y_space.weights[:, None] * x_space.weights[None, :]
    return float(np.sqrt(np.sum(w * np.abs(TT) ** 2)))


def operator_norm(T: np.ndarray, x_space: DiscreteSpace, y_space: DiscreteSpace) -> float:
    """Operator norm between the weighted L2 spaces."""
    TT = np.asarray(T)
    if TT.shape != (y_space.size, x_space.size):
        raise ValueError(f"operator must have shape {(y_space.size, x_space.size)}")
    M = np.sqrt(y_space.weights)[:, None] * TT * np.sqrt(x_space.weights)[None, :]
    sv = np.linalg.svd(M, compute_uv=False)
    return float(sv[0]) if sv.size else 0.0


def block_projection(covering_blocks, x_space: DiscreteSpace) -> np.ndarray:
    """Matrix of the conditional-expectation projection onto block-constant functions.

    Orthogonal in ``L2(X, mu)``: within each block, average against the
    block's measure.
    """
    n = x_space.size
    P = np.zeros((n, n))
    seen = 0
    for blk in covering_blocks:
        idx = np.asarray(blk, dtype=int)
        seen += idx.size
        wsum = float(x_space.weights[idx].sum())
        P[np.ix_(idx, idx)] = x_space.weights[idx][None, :] / wsum
    if seen != n:
        raise ValueError("covering blocks must partition the space")
    return P


@dataclass(frozen=True)
class HsBoundReport:
    """Per-trial data for the Hilbert-Schmidt smoothing bound."""

    rows: tuple
    C: float
    K: float
    rho: float
    delta: float
    p_constant: float
    block_count: int
    all_passed: bool

    def to_dict(self) -> dict:
        return {
            "rows": [dict(r) for r in self.rows],
            "C": self.C,
            "K": self.K,
            "rho": self.rho,
            "delta": self.delta,
            "p_constant": self.p_constant,
            "block_count": self.block_count,
            "pass": self.all_passed,
        }


def hs_bound_experiment(
    F: SymbolGrid,
    E: MaskedBimodule,
    x_space: DiscreteSpace,
    y_space: DiscreteSpace,
    rho: float,
    trials: int,
    seed: int,
    p_constant: float = 3.0,
    delta: float | None = None,
) -> HsBoundReport:
    """Randomized check of ``||F . T||_S2 <= sqrt(C K) ||T||_op`` on the bimodule.

    ``C`` comes from :func:`decay_check` (a failure is a precondition
    error), ``K`` is the covering sum ``sum diam^(2 rho)`` of a balanced
    covering of ``X`` at resolution ``delta`` (default: ``p_constant``
    times the minimal point gap).  Each trial draws a complex Gaussian
    operator supported on the relation from a counter-based stream, checks
    the endpoint inequality (the left side is exactly zero for supported
    operators), then smears the operator through the covering projection
    and checks the same right-hand side against the smeared left side.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if F.values.shape != E.mask.shape:
        raise ValueError("symbol and relation shapes disagree")
    if E.mask.shape != (x_space.size, y_space.size):
        raise ValueError("relation shape does not match the spaces")
    holds, best_c = decay_check(F, E, x_space, rho)
    if not holds:
        raise PreconditionError(
            "symbol does not satisfy the decay condition on the relation"
        )
    if delta is None:
        delta = p_constant * x_space.cloud.min_positive_distance()
    covering = balanced_covering(x_space.cloud, delta, p_constant, exponent_c=2.0 * rho)
    K = covering.covering_sum()
    P = block_projection(covering.blocks, x_space)

    mask_t = E.mask.T
    rows = []
    all_ok = True
    for trial in range(trials):
        gen = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
        )
        T = np.zeros((y_space.size, x_space.size), dtype=complex)
        count = int(mask_t.sum())
        T[mask_t] = gen.standard_normal(count) + 1j * gen.standard_normal(count)
        opn = operator_norm(T, x_space, y_space)
        rhs = float(np.sqrt(best_c * K)) * opn
        lhs = s2_norm(schur_apply(F, T), x_space, y_space)
        smeared = s2_norm(schur_apply(F, T @ P), x_space, y_space)
        ok = lhs <= rhs * (1.0 + 1e-12) + 1e-15
        ok_smeared = smeared <= rhs * (1.0 + 1e-12) + 1e-15
        all_ok = all_ok and ok and ok_smeared
        rows.append(
            {
                "trial": trial,
                "lhs": lhs,
                "rhs": rhs,
                "C": best_c,
                "K": K,
                "pass": bool(ok),
                "lhs_smeared": smeared,
                "pass_smeared": bool(ok_smeared),
            }
        )
    return HsBoundReport(
        rows=tuple(rows),
        C=best_c,
        K=float(K),
        rho=float(rho),
        delta=float(delta),
        p_constant=float(p_constant),
        block_count=covering.block_count,
        all_passed=bool(all_ok),
    )


def neighborhood_relation(
    x_space: DiscreteSpace, anchors: np.ndarray, radius: float
) -> MaskedBimodule:
    """Relation whose ``y_j`` section is the ``radius``-ball around ``anchors[j]``.

    A deterministic way to build nonempty sections from geometry; columns
    with empty sections are widened to the single nearest point so every
    section is nonempty.
    """
    if x_space.cloud is None:
        raise ValueError("X must carry a point cloud")
    a = np.atleast_2d(np.asarray(anchors, dtype=float))
    mask = np.zeros((x_space.size, a.shape[0]), dtype=bool)
    for j, anchor in enumerate(a):
        diff = np.abs(x_space.cloud.points - anchor[None, :])
        if x_space.cloud.geometry == "torus":
            diff = np.minimum(diff, 2.0 * np.pi - diff)
        d = np.sqrt((diff * diff).sum(axis=1))
        mask[:, j] = d <= radius
        if not mask[:, j].any():
            mask[int(np.argmin(d)), j] = True
    return MaskedBimodule(mask)


def distance_power_symbol(
    E: MaskedBimodule, x_space: DiscreteSpace, rho: float
) -> SymbolGrid:
    """The canonical decaying symbol ``F(x, y) = d(x, E^y)^rho`` (0 where infinite)."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    dist = _section_distance_matrix(E, x_space)
    vals = np.where(np.isfinite(dist), dist, 0.0) ** rho
    return SymbolGrid(values=vals)
