"""
From the model to the branch quartic
====================================

Eliminate the conic coordinates from the fiber equations and compare the
result with the closed-form branch polynomial; then count the degree of
the minitwistor surface on a random linear slice.
"""

from fractions import Fraction

from minitwistor.branch import branch_polynomial, infinity_chart, nonreduced_fibers
from minitwistor.models import ModelParams, degree_by_slicing, derive_branch, fiber_model
from minitwistor.poly import UniPoly

p = ModelParams(4, (1, 2, 3), UniPoly([Fraction(1, 2), -1, 0, 2]))
print(fiber_model(p).to_text())

d = derive_branch(p)
print("eliminated :", d.polynomial.to_text())
print("closed form:", branch_polynomial(p).to_text())
print("equal:", d.matches, "| imaginary part vanishes:", d.imaginary_part.is_zero())

# with |c| = 1 instead of 1/2 the q term picks up a factor 4
loud = derive_branch(ModelParams(4, (1, 2, 3), p.g_hat, c=(1, 0)))
print("coefficient of q for c = 1:", loud.q_coefficient)

nf = nonreduced_fibers(p, probes=[5])
print("non-reduced fibers over", ", ".join(str(v) for v in nf.values()))
ch = infinity_chart(p)
print(f"at infinity: w^2 = mu^{ch.a_type_exponent} * unit, type {ch.singularity}")

for n in (3, 4):
    print(f"degree of T({n}) on a random slice:", degree_by_slicing(n, seed=1))
