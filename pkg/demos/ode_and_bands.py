"""Fourth-order differential equation satisfied by the perturbed Jacobi
polynomials, and the banded-recurrence test that fails for a genuine perturbation.

Run: python3 demos/ode_and_bands.py
"""
from fractions import Fraction

from pencil_lab import band_fit, perturbed_jacobi, solve_polynomial_eigen, perturbed_jacobi_ode_coeffs, symmetry_defect, verify_ode
from pencil_lab.perturb import JacobiWeight, PerturbationParams, monic_polynomials, monic_recurrence, p_from_r, perturbation_moment_table

a, b = Fraction(1, 2), Fraction(1, 2)
co = perturbed_jacobi_ode_coeffs(a, b)
for n in range(5):
    lam, mu = solve_polynomial_eigen(co, n)
    p = perturbed_jacobi(a, b, n)
    print(f"n={n}: λ={lam}  residual of exact solution: {verify_ode(co, lam, p)}")

legendre = JacobiWeight(0, 0)
prm = PerturbationParams(1, 1)
pis = monic_polynomials(monic_recurrence(legendre, 11), 10)
P, T = p_from_r(prm, pis), perturbation_moment_table(prm, legendre, 10)
for N in (1, 2, 3):
    rep = symmetry_defect(prm, legendre, N, 8)
    fit = band_fit(P, T, N)
    print(f"\nN={N}: symmetry defect {rep.max_defect} via {rep.method}")
    print(f"  (2N+1)-banded: {fit.banded}, first offending entry {fit.offenders[0] if fit.offenders else None}")
