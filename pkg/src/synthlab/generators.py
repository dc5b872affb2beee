"""Deterministic point-cloud generators for experiments and tests.

Every generator is a pure function of its specification: no randomness,
so repeated runs of an experiment see byte-identical inputs.  Specs are
plain dicts (as parsed from JSON) validated strictly: unknown kinds and
unknown parameter keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceError
from .pointcloud import PointCloud

MAX_POINTS = 1_000_000

_KINDS = {
    "cantor": {"depth", "ratio", "endpoints"},
    "lattice": {"n", "size"},
    "circle_curve": {"n_points", "radius", "center"},
    "lipschitz_graph": {"n_points", "function_id"},
    "finite": {"points"},
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Validated description of a deterministic cloud generator."""

    kind: str
    geometry: str = "torus"
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; known: {sorted(_KINDS)}")
        if self.geometry not in ("euclidean", "torus"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        extra = set(self.params) - _KINDS[self.kind]
        if extra:
            raise ValueError(f"unknown parameters for kind {self.kind!r}: {sorted(extra)}")

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        if not isinstance(data, dict):
            raise ValueError("generator spec must be a JSON object")
        extra = set(data) - {"kind", "geometry", "params"}
        if extra:
            raise ValueError(f"unknown generator spec keys: {sorted(extra)}")
        if "kind" not in data:
            raise ValueError("generator spec needs a 'kind'")
        return cls(
            kind=data["kind"],
            geometry=data.get("geometry", "torus"),
            params=dict(data.get("params", {})),
        )


def _cantor_points(depth: int, ratio: float, endpoints: str) -> np.ndarray:
    if not isinstance(depth, int) or depth < 0:
        raise ValueError(f"depth must be a nonnegative integer, got {depth!r}")
    if not 0 < ratio < 0.5:
        raise ValueError(f"ratio must lie in (0, 1/2), got {ratio}")
    if endpoints not in ("both", "left"):
        raise ValueError(f"endpoints must be 'both' or 'left', got {endpoints!r}")
    if 2 ** (depth + 1) > MAX_POINTS:
        raise ResourceError(f"cantor depth {depth} exceeds the point budget")
    # Intervals as (left, length); split [a, a+L] -> [a, a+rL] and [a+(1-r)L, a+L].
    lefts = np.array([0.0])
    length = 1.0
    for _ in range(depth):
        lefts = np.concatenate([lefts, lefts + (1.0 - ratio) * length])
        length *= ratio
    lefts.sort()
    if endpoints == "left":
        return lefts
    return np.unique(np.concatenate([lefts, lefts + length]))


def generate(spec: GeneratorSpec) -> PointCloud:
    """Materialize the cloud described by ``spec``."""
    p = spec.params
    if spec.kind == "cantor":
        pts = _cantor_points(p.get("depth", 0), p.get("ratio", 1.0 / 3.0), p.get("endpoints", "both"))
        if spec.geometry == "torus":
            pts = pts * (2.0 * np.pi)
        return PointCloud(pts[:, None], spec.geometry)

    if spec.kind == "lattice":
        dim = p.get("n", 1)
        size = p.get("size", 2)
        if not (isinstance(dim, int) and dim >= 1):
            raise ValueError(f"n must be a positive integer, got {dim!r}")
        if not (isinstance(size, int) and size >= 1):
            raise ValueError(f"size must be a positive integer, got {size!r}")
        if size**dim > MAX_POINTS:
            raise ResourceError(f"lattice of {size}^{dim} points exceeds the point budget")
        step = (2.0 * np.pi if spec.geometry == "torus" else 1.0) / size
        axes = [np.arange(size) * step] * dim
        mesh = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
        return PointCloud(mesh, spec.geometry)

    if spec.kind == "circle_curve":
        m = p.get("n_points", 64)
        if not (isinstance(m, int) and m >= 1):
            raise ValueError(f"n_points must be a positive integer, got {m!r}")
        if m > MAX_POINTS:
            raise ResourceError("circle sample exceeds the point budget")
        radius = float(p.get("radius", 1.0))
        center = tuple(p.get("center", (np.pi, np.pi)))
        if len(center) != 2:
            raise ValueError("center must have two coordinates")
        theta = np.arange(m) * (2.0 * np.pi / m)
        pts = np.stack(
            [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)], axis=1
        )
        return PointCloud(pts, spec.geometry)

    if spec.kind == "lipschitz_graph":
        m = p.get("n_points", 64)
        fid = p.get("function_id", "sine")
        if not (isinstance(m, int) and m >= 1):
            raise ValueError(f"n_points must be a positive integer, got {m!r}")
        if m > MAX_POINTS:
            raise ResourceError("graph sample exceeds the point budget")
        t = np.arange(m) * (2.0 * np.pi / m)
        if fid == "sine":
            y = np.pi + np.sin(t)
        elif fid == "zigzag":
            # Triangle wave of slope +-1, centered at pi.
            y = np.pi + (np.abs(np.mod(t + 0.5 * np.pi, 2.0 * np.pi) - np.pi) - 0.5 * np.pi)
        else:
            raise ValueError(f"unknown function_id {fid!r}; known: 'sine', 'zigzag'")
        return PointCloud(np.stack([t, y], axis=1), spec.geometry)

    if spec.kind == "finite":
        pts = p.get("points")
        if pts is None:
            raise ValueError("finite generator needs explicit 'points'")
        arr = np.asarray(pts, dtype=float)
        if arr.shape[0] > MAX_POINTS:
            raise ResourceError("finite point list exceeds the point budget")
        return PointCloud(arr, spec.geometry)

    raise AssertionError("unreachable: kind validated in GeneratorSpec")
