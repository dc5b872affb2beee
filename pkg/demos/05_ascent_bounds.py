"""
Ascent of operator polynomials in commuting matrices
====================================================

The kernels of powers of a finite-dimensional operator stabilize; the
ascent is the first power where they do.  For g(T) built from commuting
matrices by functional calculus, the ascent is controlled by the metric
order c of the zero set of g on the joint spectrum together with the
growth order alpha of the family:  ascent <= floor(c/2 + alpha) + 1.
"""

import numpy as np

import synthlab as sl

# The model operator: Delta(X) = J X - X J for a nilpotent 2 x 2 Jordan
# block.  Lifting to 4 x 4, the kernel powers grow 2, 3, 4: ascent 3.
J = sl.jordan_block(2)
I = np.eye(2)
op = sl.build_elementary([J, -I], [I, J])
chain = sl.kernel_chain(op)
print(f"commutator with a 2 x 2 Jordan block: kernel dims {chain.kernel_dims}, "
      f"ascent {chain.ascent}, root space dim {chain.root_space_dim}")

# The same operator is g(T1, T2) = phi(T1) - phi(T2) for the commuting
# pair T1 = I (x) J, T2 = J^t (x) I and a cutoff phi equal to t near 0.
fam = sl.CommutingFamily((np.kron(I, J), np.kron(J.T, I)))
print(f"joint spectrum: {sl.joint_spectrum(fam).points}")

phi = sl.periodic_cutoff(k_bound=1.0, smoothing=3)
g = sl.coordinate_sum_poly(phi, [1, -1])
print(f"cutoff polynomial: degree {max(abs(k[0]) for k in phi.coeffs)}, "
      f"defect on [-1, 1]: {phi.sampling_defect:.1e}")

# Growth order: ||exp(it T)|| of the lifted family grows polynomially;
# a nilpotent block of size m has exact order m - 1.
t_grid = np.logspace(1, 3, 25)
for m in (2, 3, 4):
    est = sl.order_estimate(sl.jordan_block(m), t_grid)
    print(f"  ||exp(it J_{m})|| ~ t^{est.s_fit:.3f}   (exact exponent {m - 1})")

# The bound: here the joint spectrum is the single point (0, 0), so the
# zero set of g has metric order c = 0, while the nilpotent part gives
# the family growth order alpha = 2.  The floor reading certifies
# ascent <= floor(0/2 + 2) + 1 = 3, attained: the bound is sharp.
rep = sl.ascent_bound_check(fam, g, alpha_order=2.0)
print(f"\njordan pair:  ascent {rep.ascent} <= floor(c/2 + alpha) + 1 = {rep.bound} "
      f"(c = {rep.metric_order_c:.2f}, alpha = 2)  pass = {rep.passed}")
print(f"  ceiling reading would give {rep.bound_ceiling_reading}: "
      f"{'violated' if rep.ascent > rep.bound_ceiling_reading else 'holds'} on this example")

# Normal commuting pairs have alpha = 0 and ascent exactly 1.
rng = np.random.default_rng(3)
A, B = sl.random_normal_commuting_pair(6, rng)
rep = sl.ascent_bound_check(sl.CommutingFamily((A, B)), g, alpha_order=0.0)
print(f"normal pair:  ascent {rep.ascent} <= bound {rep.bound}  pass = {rep.passed}")

# Functional calculus behind it all: P o M = identity on coefficients,
# and products of polynomials go to products of matrices.
f1 = sl.TrigPolynomial(2, {(0, 0): 0.5, (1, 0): 0.2, (0, 1): -0.1j})
f2 = sl.TrigPolynomial(2, {(0, 0): 1.0, (1, -1): 0.3})
fam2 = sl.CommutingFamily((A, B))
lhs = sl.functional_calculus(fam2, sl.multiply(f1, f2))
rhs = sl.functional_calculus(fam2, f1) @ sl.functional_calculus(fam2, f2)
print(f"\nmultiplicativity defect: {float(np.abs(lhs - rhs).max()):.2e}")
roundtrip = sl.varopoulos_p(sl.varopoulos_m(f1), dim_n=2)
print(f"P o M returns the coefficients exactly: {roundtrip.coeffs == f1.coeffs}")
