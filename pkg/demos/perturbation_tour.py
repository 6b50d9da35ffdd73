"""Rank-one perturbation of the Legendre weight: the polynomial transform,
its orthogonality in the perturbed inner product and the exact pencil it induces.

Run: python3 demos/perturbation_tour.py
"""
from fractions import Fraction

import numpy as np

from pencil_lab import JacobiWeight, PerturbationParams, p_from_r, r_from_p
from pencil_lab.perturb import (
    MonicRecurrence,
    monic_polynomials,
    monic_recurrence,
    orthonormal_polynomials,
    orthonormality_check,
)

legendre = JacobiWeight(0, 0)
prm = PerturbationParams(1, 1)

pis = monic_polynomials(monic_recurrence(legendre, 5), 4)
ps = p_from_r(prm, pis)
for n, p in enumerate(ps):
    print(f"p_{n} = {p}")
print("inverse transform recovers the monic family:", r_from_p(prm, ps) == pis)

G = orthonormality_check(prm, legendre, ps, 4, monic=True)
print("exact Gram diagonal:", [str(G[n][n]) for n in range(5)])
print("off-diagonal all zero:", all(G[n][m] == 0 for n in range(5) for m in range(5) if n != m))

D = orthonormality_check(prm, legendre, p_from_r(prm, orthonormal_polynomials(legendre, 6)), 6, quadrature=True)
print(f"orthonormal route, max defect by Gauss quadrature: {np.max(np.abs(D)):.2e}")

print("p_n(d) = r_n(0):", all(p(prm.d) == r(0) for p, r in zip(ps, pis)))

# c = 0, d = 1 over a monic family with alpha = (1, 1): the sign of the bracket's
# discriminant depends only on beta_1 = a_0**2
for a0sq in (Fraction(1, 4), Fraction(3, 4), Fraction(1)):
    p2 = p_from_r(PerturbationParams(0, 1), monic_polynomials(MonicRecurrence((1, 1), (1, a0sq)), 2))[2]
    c0, c1, _ = p2.coeffs
    print(f"a_0**2 = {a0sq}: p_2 = {p2}, discriminant {c1 * c1 - 4 * c0}")
