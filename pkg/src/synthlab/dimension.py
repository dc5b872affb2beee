"""Box-counting dimension, balanced coverings, and neighborhood measure.

The metric order of a finite cloud is estimated from box counts
``N(eps)`` over a ladder of scales: ``fitted_order`` is the least-squares
slope of ``log N(eps)`` against ``log(1/eps)``.  For an exact surrogate
such as the triadic endpoint set, ``N(3^-j) = 2^j`` and the fit recovers
``log 2 / log 3`` to rounding error.

A balanced covering partitions the cloud into blocks whose diameters all
live in the window ``(delta / p_constant, delta)``: no block is allowed to
be much smaller than the scale ``delta``.  Undersized blocks are merged
with neighbors when possible and otherwise inflated with one synthetic
auxiliary point placed by bisection.  The quantity ``sum(diam_j ** c)``
is the covering sum the balanced-dimension inequalities control.

``neighborhood_measure`` estimates the volume of the ``eps``-neighborhood
of the cloud on a uniform grid; on the torus the ambient volume is
``(2*pi)**n``, in Euclidean space the caller must supply a bounding box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import json

import numpy as np
from scipy.spatial import cKDTree

from .errors import CoveringError, ResourceError
from .pointcloud import TWO_PI, PointCloud

# Relative snap applied before flooring so that points lying exactly on a
# cell boundary (triadic endpoints, lattice nodes) count in the cell they
# generate rather than leaking into the neighbor through rounding.
_CELL_SNAP = 1e-9


def box_count(cloud: PointCloud, eps: float) -> int:
    """Number of grid cells of side ``eps`` meeting the cloud.

    Cells are the aligned half-open boxes ``[i*eps, (i+1)*eps)``.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    idx = np.floor(cloud.points / eps + _CELL_SNAP).astype(np.int64)
    if cloud.geometry == "torus":
        cells_per_axis = int(np.floor(TWO_PI / eps + _CELL_SNAP)) + 1
        idx = np.mod(idx, cells_per_axis)
    return int(np.unique(idx, axis=0).shape[0])


@dataclass(frozen=True)
class DimensionReport:
    """Result of a box-counting fit over a ladder of scales."""

    scales: tuple
    counts: tuple
    fitted_order: float
    fit_residual: float
    covering_sums: tuple

    def __post_init__(self) -> None:
        s = np.asarray(self.scales, dtype=float)
        c = np.asarray(self.counts, dtype=int)
        if not np.all(np.diff(s) < 0):
            raise ValueError("scales must be strictly decreasing")
        if not np.all(np.diff(c) >= 0):
            raise ValueError("counts must be nondecreasing as scales decrease")
        if not self.fitted_order >= 0:
            raise ValueError(f"fitted_order must be >= 0, got {self.fitted_order}")
        object.__setattr__(self, "scales", tuple(float(x) for x in s))
        object.__setattr__(self, "counts", tuple(int(x) for x in c))
        object.__setattr__(self, "covering_sums", tuple(float(x) for x in self.covering_sums))

    def to_dict(self) -> dict:
        return {
            "scales": list(self.scales),
            "counts": list(self.counts),
            "fitted_order": self.fitted_order,
            "fit_residual": self.fit_residual,
            "covering_sums": list(self.covering_sums),
        }

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        return json.dumps(self.to_dict(), **kwargs)


def metric_order(cloud: PointCloud, scales: Sequence[float]) -> DimensionReport:
    """Least-squares box-counting order over at least four scales.

    ``covering_sums`` holds ``N(eps) * eps ** fitted_order`` per scale;
    bounded values indicate the fitted order is consistent with the data.
    """
    s = np.asarray(list(scales), dtype=float)
    if s.size < 4:
        raise ValueError(f"need at least 4 scales, got {s.size}")
    if not np.all(s > 0):
        raise ValueError("scales must be positive")
    if not np.all(np.diff(s) < 0):
        raise ValueError("scales must be strictly decreasing")
    counts = np.array([box_count(cloud, e) for e in s], dtype=float)
    x = np.log(1.0 / s)
    y = np.log(counts)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    order = float(max(slope, 0.0))
    sums = counts * s**order
    return DimensionReport(
        scales=tuple(s),
        counts=tuple(int(c) for c in counts),
        fitted_order=order,
        fit_residual=resid,
        covering_sums=tuple(sums),
    )


@dataclass(frozen=True)
class BalancedCovering:
    """Partition of a cloud into blocks with diameters in a fixed window.

    ``blocks[j]`` is a tuple of point indices; ``aux_points`` maps a block
    index to the synthetic point appended to lift an undersized block into
    the window.  Diameters include the auxiliary point.
    """

    blocks: tuple
    delta: float
    p_constant: float
    exponent_c: float
    diameters: tuple
    aux_points: dict = field(default_factory=dict)
    cloud_size: int = 0

    def __post_init__(self) -> None:
        lo = self.delta / self.p_constant
        seen: set[int] = set()
        for j, blk in enumerate(self.blocks):
            if seen & set(blk):
                raise ValueError("blocks must be pairwise disjoint")
            seen |= set(blk)
            d = self.diameters[j]
            if not (lo < d < self.delta):
                raise CoveringError(
                    f"block {j} diameter {d:.6g} outside window ({lo:.6g}, {self.delta:.6g})"
                )
        if self.cloud_size and seen != set(range(self.cloud_size)):
            raise ValueError("blocks must cover every point index exactly once")

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def covering_sum(self, c: float | None = None) -> float:
        """``sum(diam_j ** c)`` with ``c = exponent_c`` by default."""
        cc = self.exponent_c if c is None else c
        return float(np.sum(np.asarray(self.diameters) ** cc))


def _subset_diameter(points: np.ndarray, geometry: str, extra: np.ndarray | None = None) -> float:
    pts = points if extra is None else np.vstack([points, extra[None, :]])
    if pts.shape[0] < 2:
        return 0.0
    diff = np.abs(pts[:, None, :] - pts[None, :, :])
    if geometry == "torus":
        diff = np.minimum(diff, TWO_PI - diff)
    return float(np.sqrt((diff * diff).sum(axis=2)).max())


def _max_dist_to(points: np.ndarray, geometry: str, x: np.ndarray) -> float:
    diff = np.abs(points - x[None, :])
    if geometry == "torus":
        diff = np.minimum(diff, TWO_PI - diff)
    return float(np.sqrt((diff * diff).sum(axis=1)).max())


def balanced_covering(
    cloud: PointCloud,
    delta: float,
    p_constant: float,
    exponent_c: float = 1.0,
) -> BalancedCovering:
    """Cover the cloud by disjoint blocks with diameters in ``(delta/P, delta)``.

    Starts from grid cells of diameter at most ``delta / p_constant``,
    greedily merges consecutive cells while the union stays below ``delta``,
    and augments any block still at or below ``delta / p_constant`` with one
    auxiliary point at a bisected distance inside the window.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not p_constant > 1:
        raise ValueError(f"p_constant must exceed 1, got {p_constant}")
    lo = delta / p_constant
    diam = cloud.diameter()
    if diam <= lo:
        raise CoveringError(
            f"cloud diameter {diam:.6g} is at most delta/p_constant = {lo:.6g}; "
            "no single block can exceed the lower window edge"
        )

    n = cloud.ambient_dim
    side = lo / np.sqrt(n)
    idx = np.floor(cloud.points / side + _CELL_SNAP).astype(np.int64)
    order = np.lexsort(tuple(idx[:, k] for k in range(n - 1, -1, -1)))
    cells: list[list[int]] = []
    last_key = None
    for i in order:
        key = tuple(idx[i])
        if key != last_key:
            cells.append([])
            last_key = key
        cells[-1].append(int(i))

    geometry = cloud.geometry
    pts = cloud.points
    blocks: list[list[int]] = []
    cur = cells[0]
    for nxt in cells[1:]:
        cand = cur + nxt
        if _subset_diameter(pts[cand], geometry) < delta * (1.0 - 1e-12):
            cur = cand
        else:
            blocks.append(cur)
            cur = nxt
    blocks.append(cur)

    target = delta * (1.0 + 1.0 / p_constant) / 2.0
    diameters: list[float] = []
    aux: dict[int, tuple] = {}
    for j, blk in enumerate(blocks):
        d = _subset_diameter(pts[blk], geometry)
        if d <= lo:
            base = pts[blk][np.argmax(pts[blk][:, 0])]
            e0 = np.zeros(n)
            e0[0] = 1.0
            t_hi = np.pi if geometry == "torus" else target + d + 1.0

            def reach(t: float) -> float:
                x = base + t * e0
                if geometry == "torus":
                    x = np.mod(x, TWO_PI)
                return _max_dist_to(pts[blk], geometry, x)

            if reach(t_hi) < target:
                raise CoveringError(
                    f"cannot place an auxiliary point at distance {target:.6g} "
                    f"for block {j} within the geometry"
                )
            t_lo = 0.0
            for _ in range(200):
                t_mid = 0.5 * (t_lo + t_hi)
                if reach(t_mid) < target:
                    t_lo = t_mid
                else:
                    t_hi = t_mid
            x = base + t_hi * e0
            if geometry == "torus":
                x = np.mod(x, TWO_PI)
            aux[j] = tuple(float(v) for v in x)
            d = _subset_diameter(pts[blk], geometry, extra=x)
        diameters.append(d)

    return BalancedCovering(
        blocks=tuple(tuple(b) for b in blocks),
        delta=float(delta),
        p_constant=float(p_constant),
        exponent_c=float(exponent_c),
        diameters=tuple(diameters),
        aux_points=aux,
        cloud_size=cloud.count,
    )


def neighborhood_measure(
    cloud: PointCloud,
    eps: float,
    grid_resolution: int,
    bounding_box: Sequence[Sequence[float]] | None = None,
) -> float:
    """Grid estimate of the volume of the closed ``eps``-neighborhood.

    On the torus the full ambient volume ``(2*pi)**n`` is sampled with
    ``grid_resolution`` cells per axis and wraparound distances.  In
    Euclidean geometry a bounding box (sequence of ``(lo, hi)`` per axis,
    covering the neighborhood) must be supplied by the caller.
    """
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if grid_resolution < 1:
        raise ValueError(f"grid_resolution must be at least 1, got {grid_resolution}")
    if eps == 0:
        return 0.0
    n = cloud.ambient_dim
    if grid_resolution**n > 5e7:
        raise ResourceError(
            f"grid of {grid_resolution}^{n} cells exceeds the sampling budget"
        )
    if cloud.geometry == "torus":
        axes = [(np.arange(grid_resolution) + 0.5) * (TWO_PI / grid_resolution)] * n
        volume = TWO_PI**n
        tree = cKDTree(cloud.points, boxsize=TWO_PI)
    else:
        if bounding_box is None:
            raise ValueError("euclidean clouds need an explicit bounding_box")
        box = np.asarray(bounding_box, dtype=float)
        if box.shape != (n, 2) or not np.all(box[:, 1] > box[:, 0]):
            raise ValueError("bounding_box must be (lo, hi) per axis with hi > lo")
        axes = [
            box[k, 0] + (np.arange(grid_resolution) + 0.5) * ((box[k, 1] - box[k, 0]) / grid_resolution)
            for k in range(n)
        ]
        volume = float(np.prod(box[:, 1] - box[:, 0]))
        tree = cKDTree(cloud.points)
    mesh = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    dist, _ = tree.query(mesh, k=1)
    frac = float(np.count_nonzero(dist <= eps)) / mesh.shape[0]
    return frac * volume
