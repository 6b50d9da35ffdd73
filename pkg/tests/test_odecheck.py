from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import small_rat
from pencil_lab.errors import PencilLabError
from pencil_lab.exactcore import Poly, X
from pencil_lab.odecheck import (
    OdeCoeffs,
    build_system,
    perturbed_jacobi,
    solve_polynomial_eigen,
    perturbed_jacobi_ode_coeffs,
    verify_ode,
)

PARAMS = [(0, 0), (Fraction(1, 2), Fraction(1, 2)), (1, 2), (Fraction(1, 2), 1), (2, 0)]


def test_coefficient_values():
    for a, b in PARAMS:
        co = perturbed_jacobi_ode_coeffs(a, b)
        assert (co.c4, co.phi2, co.theta0) == (-1, 1, 2)
    co = perturbed_jacobi_ode_coeffs(0, 0)
    assert (co.d3, co.f2, co.g1) == (-10, -24, -12)


def test_assembled_equation_terms():
    a, b = Fraction(1, 3), Fraction(5, 2)
    c, d, f, g, h, phi, psi, theta = perturbed_jacobi_ode_coeffs(a, b).polys()
    t = X
    assert c == -(t + 1) * t * (t - 1) ** 2
    assert d == (t - 1) * (-(a + b + 10) * t**2 + (b - a) * t + 4)
    assert f == -6 * (a + b + 4) * t**2 + (a + 9 * b + 22) * t + 3 * a - 3 * b
    assert g == -6 * (a + b + 2) * t + 2 * a + 6 * b + 8
    assert h == Poly()
    assert phi == t * (t - 1) and psi == 2 * (2 * t - 1) and theta == Poly.const(2)


def test_invalid_params():
    with pytest.raises(PencilLabError, match="invalid-params"):
        perturbed_jacobi_ode_coeffs(-1, 0)


def test_system_shape_and_last_row():
    co = perturbed_jacobi_ode_coeffs(0, 0)
    assert build_system(co, 0, 5) == [[co.h0 + 5 * co.theta0]]
    n, lam = 4, Fraction(7)
    M = build_system(co, n, lam)
    assert all(M[n][k] == 0 for k in range(n))
    bracket = (
        n * (n - 1) * (n - 2) * (n - 3) * co.c4 + n * (n - 1) * (n - 2) * co.d3 + n * (n - 1) * co.f2
        + n * co.g1 + co.h0 + lam * (n * (n - 1) * co.phi2 + n * co.psi1 + co.theta0)
    )  # fmt: skip
    assert M[n][n] == bracket
    # upper triangular
    assert all(M[i][k] == 0 for i in range(n + 1) for k in range(i))


def test_n0_kernel_only_at_zero():
    co = perturbed_jacobi_ode_coeffs(0, 0)
    assert build_system(co, 0, 0) == [[0]]
    assert build_system(co, 0, 1) != [[0]]
    assert solve_polynomial_eigen(co, 0) == (0, [1])


def test_small_eigenvalues():
    co = perturbed_jacobi_ode_coeffs(0, 0)
    assert solve_polynomial_eigen(co, 1)[0] == 2
    lam, mu = solve_polynomial_eigen(co, 2)
    assert lam == 6
    assert Poly(tuple(mu)) == X**2 - X - Fraction(1, 3)


def test_verify_ode_examples():
    co = perturbed_jacobi_ode_coeffs(0, 0)
    p1 = X - 1
    assert verify_ode(co, 2, p1) == Poly()
    assert verify_ode(co, 0, Poly.const(1)) == Poly()
    assert verify_ode(co, 3, p1) != Poly()


def test_perturbed_jacobi_examples():
    assert perturbed_jacobi(0, 0, 0) == Poly.const(1)
    assert perturbed_jacobi(0, 0, 1) == X - 1
    assert perturbed_jacobi(0, 0, 2) == X**2 - X - Fraction(1, 3)


@pytest.mark.parametrize("ab", PARAMS)
def test_eigenpairs_match_perturbed_jacobi(ab):
    a, b = map(Fraction, ab)
    co = perturbed_jacobi_ode_coeffs(a, b)
    for n in range(1, 11):
        lam, mu = solve_polynomial_eigen(co, n)
        assert lam == n * (n + a + b + 1)
        pn = perturbed_jacobi(a, b, n)
        assert Poly(tuple(mu)) == pn / pn.leading
        assert verify_ode(co, lam, pn) == Poly()
        assert verify_ode(co, lam + 1, pn) != Poly()


@pytest.mark.parametrize("ab", PARAMS)
def test_shifted_lambda_breaks_last_equation(ab):
    co = perturbed_jacobi_ode_coeffs(*ab)
    for n in range(1, 8):
        lam, _ = solve_polynomial_eigen(co, n)
        for delta in (Fraction(1), Fraction(-1, 7)):
            assert build_system(co, n, lam + delta)[n][n] != 0


coeff_records = st.builds(
    OdeCoeffs,
    **{f: small_rat for f in OdeCoeffs.__dataclass_fields__},
)


@settings(max_examples=60, deadline=None)
@given(coeff_records, small_rat, st.lists(small_rat, min_size=1, max_size=9))
def test_system_equals_ode_coefficients(co, lam, mu):
    # the two formulations agree row by row, so M mu = 0 iff the residual polynomial vanishes
    n = len(mu) - 1
    M = build_system(co, n, lam)
    Mmu = [sum(M[j][k] * mu[k] for k in range(n + 1)) for j in range(n + 1)]
    res = verify_ode(co, lam, Poly(tuple(mu)))
    assert res.degree <= n
    assert Mmu == [res[j] for j in range(n + 1)]


def test_degenerate_diagonal_surfaces():
    # diagonal j is j (j - 1) (f2 + λ phi2): the j = 2 row fixes λ = 2, then the j = 1 pivot is 0
    with pytest.raises(PencilLabError, match="degenerate-diagonal"):
        solve_polynomial_eigen(OdeCoeffs(phi2=1, f2=-2, f1=1), 2)
    # with theta0 = 0 the j = 0 row does not involve λ
    with pytest.raises(PencilLabError, match="lambda-indeterminate"):
        solve_polynomial_eigen(OdeCoeffs(phi2=1), 0)
