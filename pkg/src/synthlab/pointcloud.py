"""Finite point clouds in Euclidean space or on the flat torus.

A :class:`PointCloud` is the common currency of the dimension, Fourier and
Schur modules: a finite list of points together with the geometry that
defines distances between them.  Torus coordinates live in ``[0, 2*pi)``
per coordinate and distances are geodesic (coordinatewise shortest arc,
then the Euclidean norm of the arc lengths).

CSV interchange uses one point per row, one column per coordinate,
no header.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

TWO_PI = 2.0 * np.pi

_GEOMETRIES = ("euclidean", "torus")


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Immutable finite point set with a distance.

    Parameters
    ----------
    points:
        Array-like of shape ``(count, ambient_dim)``.  A flat 1-d array is
        taken as a cloud in one ambient dimension.
    geometry:
        ``"euclidean"`` or ``"torus"``.  Torus coordinates are normalized
        into ``[0, 2*pi)`` on construction.
    """

    points: np.ndarray
    geometry: str = "euclidean"
    _diameter: float | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got ndim={pts.ndim}")
        if pts.shape[0] == 0:
            raise ValueError("a point cloud must contain at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        if self.geometry not in _GEOMETRIES:
            raise ValueError(f"geometry must be one of {_GEOMETRIES}, got {self.geometry!r}")
        if self.geometry == "torus":
            pts = np.mod(pts, TWO_PI)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    def distances_to(self, queries: np.ndarray) -> np.ndarray:
        """Distance from each query point to the nearest cloud point.

        ``queries`` has shape ``(m, ambient_dim)``; returns shape ``(m,)``.
        """
        q = np.atleast_2d(np.asarray(queries, dtype=float))
        if q.shape[1] != self.ambient_dim:
            raise ValueError(
                f"query dimension {q.shape[1]} != cloud dimension {self.ambient_dim}"
            )
        out = np.empty(q.shape[0])
        # Block over queries to bound the (m_block, count, dim) temporary.
        block = max(1, int(2e7) // max(1, self.count * self.ambient_dim))
        for start in range(0, q.shape[0], block):
            sub = q[start : start + block]
            diff = np.abs(sub[:, None, :] - self.points[None, :, :])
            if self.geometry == "torus":
                diff = np.minimum(diff, TWO_PI - diff)
            out[start : start + block] = np.sqrt((diff * diff).sum(axis=2)).min(axis=1)
        return out

    def pairwise_distances(self) -> np.ndarray:
        """Full ``(count, count)`` distance matrix."""
        diff = np.abs(self.points[:, None, :] - self.points[None, :, :])
        if self.geometry == "torus":
            diff = np.minimum(diff, TWO_PI - diff)
        return np.sqrt((diff * diff).sum(axis=2))

    def diameter(self) -> float:
        """Largest pairwise distance (0 for a single point)."""
        if self._diameter is not None:
            return self._diameter
        if self.count == 1:
            d = 0.0
        else:
            d = 0.0
            block = max(1, int(2e7) // max(1, self.count * self.ambient_dim))
            for start in range(0, self.count, block):
                sub = self.points[start : start + block]
                diff = np.abs(sub[:, None, :] - self.points[None, :, :])
                if self.geometry == "torus":
                    diff = np.minimum(diff, TWO_PI - diff)
                d = max(d, float(np.sqrt((diff * diff).sum(axis=2)).max()))
        object.__setattr__(self, "_diameter", d)
        return d

    def min_positive_distance(self) -> float:
        """Smallest nonzero pairwise distance (resolution of the cloud)."""
        if self.count < 2:
            raise ValueError("need at least two points for a pairwise distance")
        dm = self.pairwise_distances()
        pos = dm[dm > 0]
        if pos.size == 0:
            raise ValueError("all points coincide")
        return float(pos.min())

    def subset(self, indices: Iterable[int]) -> "PointCloud":
        idx = np.asarray(list(indices), dtype=int)
        return PointCloud(self.points[idx], self.geometry)


def save_cloud_csv(cloud: PointCloud, path: str) -> None:
    """Write one point per row, columns = coordinates."""
    np.savetxt(path, cloud.points, delimiter=",", fmt="%.17g")


def load_cloud_csv(path: str, geometry: str = "euclidean") -> PointCloud:
    """Read a cloud written by :func:`save_cloud_csv`."""
    pts = np.loadtxt(path, delimiter=",", ndmin=2)
    return PointCloud(pts, geometry)
