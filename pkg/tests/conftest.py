"""Shared fixtures and independent oracles used across the test suite."""

from __future__ import annotations

import numpy as np
import pytest

TWO_PI = 2.0 * np.pi


def philox(*key: int) -> np.random.Generator:
    """Counter-based generator so every test draws a reproducible stream."""
    if len(key) == 1:
        seq = np.random.SeedSequence(entropy=key[0])
    else:
        seq = np.random.SeedSequence(entropy=key[0], spawn_key=tuple(key[1:]))
    return np.random.Generator(np.random.Philox(seq))


def cantor_left_endpoints(depth: int, ratio: float = 1.0 / 3.0) -> np.ndarray:
    """Left endpoints of the level ``depth`` middle-thirds construction in [0, 1]."""
    pts = np.array([0.0])
    length = 1.0
    for _ in range(depth):
        length *= ratio
        pts = np.concatenate([pts, pts + (1.0 - ratio) * length / ratio])
    return np.sort(pts)


def arc_union_measure(centers: np.ndarray, radius: float) -> float:
    """Exact measure of a union of closed arcs on the circle of circumference 2 pi.

    Independent interval-merging oracle for the neighborhood measure on a
    one-dimensional torus.  Wrapping arcs are split at 2 pi before merging.
    """
    if radius <= 0.0:
        return 0.0
    if radius >= np.pi:
        return TWO_PI
    lo = (np.asarray(centers, dtype=float).ravel() - radius) % TWO_PI
    hi = lo + 2.0 * radius
    segments = []
    for a, b in zip(lo, hi):
        if b <= TWO_PI:
            segments.append((a, b))
        else:
            segments.append((a, TWO_PI))
            segments.append((0.0, b - TWO_PI))
    segments.sort()
    total = 0.0
    cur_lo, cur_hi = segments[0]
    for a, b in segments[1:]:
        if a <= cur_hi:
            cur_hi = max(cur_hi, b)
        else:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = a, b
    total += cur_hi - cur_lo
    return min(total, TWO_PI)


@pytest.fixture
def rng() -> np.random.Generator:
    return philox(0xC0FFEE)
