"""Associated polynomials of a small pencil, the second-kind solution and the
Christoffel-Darboux identity, all in exact rationals.

Run: python3 demos/recurrence_tour.py
"""
from fractions import Fraction

from pencil_lab import (
    associated_polynomials,
    basic_solutions,
    christoffel_darboux,
    degenerate_from_jacobi,
    detrep_check,
    independence_check,
    moment_table,
    recurrence_residual,
)

# a Jacobi matrix with a_k = 1/2, b_k = 1, lifted to the pencil (J3, J3**2)
pencil = degenerate_from_jacobi([Fraction(1, 2)] * 10, [1] * 10)
P = associated_polynomials(pencil, 4)
for n, p in enumerate(P):
    print(f"p_{n}(λ) = {p}")

quad = basic_solutions(pencil, 6)
print("\nresiduals of the second-kind solution q:")
for n in range(4):
    print(f"  n={n}: {recurrence_residual(pencil, quad.q, n)}")

lhs, rhs = christoffel_darboux(pencil, 3, Fraction(1, 3), Fraction(-2))
print(f"\nChristoffel-Darboux at n=3, λ=1/3, y=-2: {lhs} == {rhs}")

T = moment_table(pencil, 4)
print("determinant representation holds for n<=4:", all(detrep_check(T, P, n) for n in range(5)))

res = independence_check(quad, Fraction(5, 7))
print("(p, q, u, w) independent at λ=5/7:", res.nonsingular)
