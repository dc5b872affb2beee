"""
Schur multipliers, masked bimodules, and the smoothing bound
============================================================

Entrywise multiplication by a symbol F acts on kernels over a pair of
weighted discrete spaces.  The operators annihilated by F form a masked
bimodule, read off exactly from the zero set of F.  For symbols decaying
like d(x, E^y)^rho toward a relation E, a balanced covering of the cloud
turns operator-norm control into a Hilbert-Schmidt bound.
"""

import numpy as np

import synthlab as sl

TWO_PI = 2.0 * np.pi
rng = np.random.default_rng(7)

# Entrywise action on a small random kernel.
F = sl.SymbolGrid(rng.normal(size=(4, 3)))
T = rng.normal(size=(3, 4))
out = sl.schur_apply(F, T)
print("entrywise action: out[j, i] = F[i, j] * T[j, i]")
print(f"  check: {out[2, 1]:.6f} = {F.values[1, 2] * T[2, 1]:.6f}")

# The kernel of the multiplier is exactly the set of operators supported
# on the zero set of the symbol: a masked bimodule.
vals = rng.normal(size=(5, 4))
vals[rng.random(size=(5, 4)) < 0.4] = 0.0
bim = sl.kernel_of_schur(sl.SymbolGrid(vals))
print(f"\nsymbol with {int(np.count_nonzero(vals == 0))} zero entries:")
print(f"  bimodule mask equals the zero set: {bool(np.array_equal(bim.mask, vals == 0))}")
supported = np.where(vals == 0, 1.0, 0.0).T
annihilated = np.abs(sl.schur_apply(sl.SymbolGrid(vals), supported)).max()
print(f"  kernel supported on the mask is annihilated: max entry {float(annihilated):.1e}")

# Geometry enters through a point cloud: sections of a neighborhood
# relation are metric balls around anchor points.
cloud = sl.generate(sl.GeneratorSpec("cantor", "torus", {"depth": 6, "endpoints": "both"}))
X = sl.DiscreteSpace.from_cloud(cloud)
w = sl.metric_order(cloud, [TWO_PI * 3.0**-j for j in range(1, 7)]).fitted_order
print(f"\ncantor cloud: {cloud.count} points, metric order w = {w:.4f}")

anchors = cloud.points[rng.choice(cloud.count, size=5, replace=False)]
E = sl.neighborhood_relation(X, anchors, 2.0 * cloud.min_positive_distance())
print(f"relation: {E.x_size} x {E.y_size}, section sizes {[int(s) for s in E.mask.sum(axis=0)]}")

# The canonical decaying symbol vanishes on the relation and grows like
# the distance to each section, raised to rho = w / 2.
rho = w / 2.0
Fd = sl.distance_power_symbol(E, X, rho)
passed, C = sl.decay_check(Fd, E, X, rho)
print(f"decay check at rho = w/2 = {rho:.4f}: passed = {passed}, constant C = {C:.4f}")

# The packaged experiment draws random kernels supported near the
# relation and verifies ||F . T||_S2 <= sqrt(C K) ||T||_op, where K is a
# covering sum of the cloud at exponent 2 rho.  The smeared variant
# replaces T by its conditional expectation over covering blocks.
Y = sl.DiscreteSpace.uniform(E.y_size)
rep = sl.hs_bound_experiment(Fd, E, X, Y, rho=rho, trials=20, seed=42)
worst = max(r["lhs_smeared"] / r["rhs"] for r in rep.rows)
print(f"\nsmoothing bound over {len(rep.rows)} random kernels:")
print(f"  all trials within bound: {all(r['pass'] and r['pass_smeared'] for r in rep.rows)}")
print(f"  tightest smeared ratio lhs/rhs = {worst:.4f}")
print(f"  covering sum K = {rep.rows[0]['K']:.4f}")
