"""
Box-counting order of fractal point clouds
==========================================

Generate triadic Cantor endpoint clouds on the circle, count occupied
cells across a geometric ladder of scales, and fit the metric order.
Then refine a crude covering into balanced blocks and estimate the
volume of small neighborhoods of the set.
"""

import numpy as np

import synthlab as sl

TWO_PI = 2.0 * np.pi

# A depth-d triadic construction keeps 2^d intervals of width 3^-d; the
# left endpoints alone already have the full box-counting order log 2 / log 3.
cloud = sl.generate(
    sl.GeneratorSpec("cantor", "torus", {"depth": 10, "endpoints": "left"})
)
print(f"cloud: {cloud.count} points on the circle")

scales = [TWO_PI * 3.0**-j for j in range(2, 9)]
print("\nscale ladder (cells of width 2*pi/3^j):")
for eps in scales:
    print(f"  eps = {eps:10.6f}  occupied cells = {sl.box_count(cloud, eps):4d}")

report = sl.metric_order(cloud, scales)
print(f"\nfitted order  {report.fitted_order:.6f}")
print(f"log 2 / log 3 {np.log(2) / np.log(3):.6f}")
print(f"fit residual  {report.fit_residual:.2e}")

# The same engine on a filled planar lattice recovers the ambient order 2.
square = sl.generate(sl.GeneratorSpec("lattice", "euclidean", {"n": 2, "size": 64}))
planar = sl.metric_order(square, [2.0**-j for j in range(1, 6)])
print(f"\n64 x 64 unit lattice: fitted order {planar.fitted_order:.4f}")

# A balanced covering at scale delta keeps every block diameter inside
# (delta / P, delta]; the covering sum  sum diam(block)^c  then tracks the
# c-dimensional content of the set at that scale.
delta = TWO_PI * 3.0**-4
covering = sl.balanced_covering(cloud, delta, p_constant=3.0, exponent_c=report.fitted_order)
print(f"\nbalanced covering at delta = {delta:.5f}:")
print(f"  blocks        {covering.block_count}")
print(f"  diameter span [{min(covering.diameters):.5f}, {max(covering.diameters):.5f}]")
print(f"  covering sum  {covering.covering_sum():.4f}  (exponent = fitted order)")

# Lebesgue measure of the eps-neighborhood: for a c-dimensional set it
# scales like eps^(1 - c) on the circle, so the log-log slope exposes c
# through a completely independent route.
eps_grid = [TWO_PI * 3.0**-j for j in range(2, 8)]
measures = [sl.neighborhood_measure(cloud, e, 500_000) for e in eps_grid]
slope = float(np.polyfit(np.log(eps_grid), np.log(measures), 1)[0])
print("\nneighborhood measures:")
for e, m in zip(eps_grid, measures):
    print(f"  eps = {e:9.6f}  |N_eps| = {m:.6f}")
print(f"measure slope {slope:.4f}  vs  1 - order = {1 - report.fitted_order:.4f}")
