import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import beta_moments, bracket_pencil, perturbation_family, polys, random_jacobi, small_rat
from pencil_lab.errors import PencilLabError
from pencil_lab.exactcore import Poly, X, det_exact
from pencil_lab.pencil import associated_polynomials, jacobi_polynomials
from pencil_lab.perturb import (
    DiscreteMeasure,
    JacobiMatrixMeasure,
    JacobiWeight,
    MonicRecurrence,
    PerturbationParams,
    apply_A,
    apply_A_power,
    build_pencil_from_perturbation,
    gauss_rule,
    integrate,
    measure_moments,
    monic_polynomials,
    monic_recurrence,
    orthonormal_polynomials,
    orthonormality_check,
    p_from_r,
    parse_measure,
    perturbation_moment_table,
    perturbation_pencil,
    r_from_p,
    recurrence3_residual,
    u_of_A_at_one,
)
from pencil_lab.spectral import moment_table

params = st.builds(
    PerturbationParams,
    st.builds(lambda n, d: Fraction(n, d), st.integers(-8, 30), st.integers(9, 10)),
    small_rat,
)

LEGENDRE = JacobiWeight(0, 0)


def test_params_validation():
    with pytest.raises(PencilLabError, match="invalid-params"):
        PerturbationParams(-1, 0)
    assert PerturbationParams(0, 0).is_identity


def test_apply_A_examples():
    prm = PerturbationParams(Fraction(1, 2), 3)
    assert apply_A(prm, Poly.const(1)) == Fraction(3, 2) * X + 3
    assert apply_A(prm, X) == X**2
    c, d = Fraction(1, 2), 3
    assert apply_A_power(prm, Poly.const(1), 2) == (c + 1) * (X**2 + d * X) + d**2


@settings(max_examples=40, deadline=None)
@given(params, polys, st.integers(1, 6))
def test_apply_A_power_consistency(prm, p, n):
    assert apply_A_power(prm, p, n) == apply_A_power(prm, apply_A(prm, p), n - 1)


@settings(max_examples=40, deadline=None)
@given(params, polys)
def test_u_of_A_matches_operator_powers(prm, u):
    # u(A)[1] = sum u_k A^k[1], computed by brute force
    brute = Poly()
    for k, uk in enumerate(u.coeffs):
        brute = brute + uk * apply_A_power(prm, Poly.const(1), k)
    assert u_of_A_at_one(prm, u) == brute


def test_u_of_A_examples():
    prm = PerturbationParams(2, -1)
    assert u_of_A_at_one(prm, Poly.const(1)) == Poly.const(1)
    assert u_of_A_at_one(prm, X) == 3 * X - 1
    ident = PerturbationParams(0, 0)
    assert u_of_A_at_one(ident, X**3 + 2) == X**3 + 2


def test_p_from_r_examples():
    r = jacobi_polynomials([Fraction(1, 2)], [1], 1)
    assert r[1] == 2 * X - 2
    assert p_from_r(PerturbationParams(0, 1), r)[1] == 2 * X - 4
    assert p_from_r(PerturbationParams(0, 1), [X**2 - Fraction(1, 3)])[0] == X**2 - X - Fraction(1, 3)
    assert p_from_r(PerturbationParams(0, 0), r) == r


@settings(max_examples=30, deadline=None)
@given(params, st.integers(0, 2**16))
def test_roundtrip_and_value_at_d(prm, seed):
    a, b = random_jacobi(random.Random(seed), 11)
    r = jacobi_polynomials(a, b, 10)
    p = p_from_r(prm, r)
    assert r_from_p(prm, p) == r
    assert all(pn(prm.d) == rn(0) for pn, rn in zip(p, r))
    for n in range(10):
        assert recurrence3_residual(prm, p, a, b, n) == Poly()


def test_c0_specialisation():
    a, b = random_jacobi(random.Random(5), 8)
    prm = PerturbationParams(0, Fraction(2, 3))
    r = jacobi_polynomials(a, b, 7)
    p = p_from_r(prm, r)
    d = prm.d
    for n in range(6):
        rhs = d * p[n](d) + b[n] * p[n] + a[n] * p[n + 1] + (a[n - 1] * p[n - 1] if n else Poly())
        assert X * p[n] == rhs


def test_identity_reduces_to_three_term():
    a, b = random_jacobi(random.Random(8), 8)
    r = jacobi_polynomials(a, b, 7)
    ident = PerturbationParams(0, 0)
    for n in range(6):
        plain = X * r[n] - b[n] * r[n] - a[n] * r[n + 1] - (a[n - 1] * r[n - 1] if n else Poly())
        assert recurrence3_residual(ident, r, a, b, n) == plain == Poly()


def test_exact_perturbation_pencil_matches_transform():
    pencil, (a, b) = perturbation_family()
    prm = PerturbationParams(Fraction(1, 2), Fraction(-2, 3))
    assert associated_polynomials(pencil, 10) == p_from_r(prm, jacobi_polynomials(a, b, 10))


def test_pencil_constants_bracket_family():
    prm = PerturbationParams(0, 1)
    p = perturbation_pencil(prm, [Fraction(1, 2)] * 4, [1] * 4)
    assert (p.alpha_const, p.beta_const) == (2, -4)
    assert p == bracket_pencil(4)


def test_float_pencil_legendre_constants():
    fp = build_pencil_from_perturbation(PerturbationParams(0, 0), LEGENDRE, 4)
    assert fp.alpha_const == pytest.approx(math.sqrt(3))
    assert fp.beta_const == pytest.approx(0)


def test_float_pencil_matches_transform():
    prm = PerturbationParams(1, 1)
    fp = build_pencil_from_perturbation(prm, LEGENDRE, 10)
    got = associated_polynomials(fp, 8)
    want = p_from_r(prm, orthonormal_polynomials(LEGENDRE, 8))
    for g, w in zip(got, want):
        assert np.allclose(np.array(g.coeffs, dtype=float), np.array(w.coeffs, dtype=float), atol=1e-9)
    # p_1 from the pencil seed agrees with the transform
    assert fp.alpha_const == pytest.approx(want[1].coeffs[1])
    assert fp.beta_const == pytest.approx(want[1].coeffs[0])


def test_measure_moments_examples():
    two_point = DiscreteMeasure([-1, 1], [Fraction(1, 2), Fraction(1, 2)])
    assert measure_moments(two_point, 5) == [1, 0, 1, 0, 1, 0]
    m = measure_moments(LEGENDRE, 4)
    assert m[:3] == [1, 0, Fraction(1, 3)]
    assert measure_moments(JacobiWeight(2, Fraction(1, 2)), 0) == [1]


@pytest.mark.parametrize("ab", [(0, 0), (Fraction(1, 2), 2), (Fraction(-1, 2), Fraction(-1, 2)), (1, 2), (3, Fraction(-1, 3))])
def test_jacobi_moments_against_beta_oracle(ab):
    assert measure_moments(JacobiWeight(*ab), 12) == beta_moments(*ab, 12)


@pytest.mark.parametrize("ab", [(0, 0), (Fraction(1, 2), 2), (1, 2)])
def test_closed_form_recurrence_against_hankel_oracle(ab):
    # beta_n = H_n H_{n-2} / H_{n-1}^2 with H_n the Hankel determinants of the Beta moments
    m = beta_moments(*ab, 16)
    H = [det_exact([[m[i + k] for k in range(n + 1)] for i in range(n + 1)]) for n in range(7)]
    rec = monic_recurrence(JacobiWeight(*ab), 7)
    assert rec.beta[1] == H[1] / H[0] ** 2
    for n in range(2, 7):
        assert rec.beta[n] == H[n] * H[n - 2] / H[n - 1] ** 2


@pytest.mark.parametrize("ab", [(0, 0), (Fraction(1, 2), 2), (Fraction(-1, 2), Fraction(3, 4))])
def test_monic_jacobi_gram_is_diagonal(ab):
    w = JacobiWeight(*ab)
    pis = monic_polynomials(monic_recurrence(w, 8), 8)
    m = beta_moments(*ab, 16)
    for i in range(9):
        for k in range(i):
            assert integrate(pis[i] * pis[k], m) == 0


def test_discrete_stieltjes():
    nodes = [-1, 0, Fraction(1, 2), 2]
    w = DiscreteMeasure(nodes, [Fraction(1, 4)] * 4)
    pis = monic_polynomials(monic_recurrence(w, 4), 4)
    assert all(pis[4](x) == 0 for x in nodes)
    m = measure_moments(w, 6)
    assert integrate(pis[1] * pis[2], m) == 0 and integrate(pis[3], m) == 0
    with pytest.raises(PencilLabError, match="insufficient-nodes"):
        monic_recurrence(w, 5)


def test_measure_validation():
    with pytest.raises(PencilLabError, match="invalid-measure"):
        DiscreteMeasure([0, 1], [Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(PencilLabError, match="invalid-measure"):
        JacobiWeight(-1, 0)
    with pytest.raises(PencilLabError, match="invalid-measure"):
        parse_measure("hermite")
    assert parse_measure("jacobi:1/2,2") == JacobiWeight(Fraction(1, 2), 2)
    assert parse_measure("legendre") == LEGENDRE


def test_gauss_rule_integrates_exactly():
    nodes, weights = gauss_rule(JacobiWeight(Fraction(1, 2), 2), 6)
    m = beta_moments(Fraction(1, 2), 2, 11)
    for k in range(12):
        assert float(np.sum(weights * nodes**k)) == pytest.approx(float(m[k]), abs=1e-12)


def test_orthonormality_exact_and_float():
    prm = PerturbationParams(1, 1)
    pis = monic_polynomials(monic_recurrence(LEGENDRE, 9), 8)
    G = orthonormality_check(prm, LEGENDRE, p_from_r(prm, pis), 8, monic=True)
    assert all(G[i][k] == 0 for i in range(9) for k in range(9) if i != k)
    assert G[0][0] == 1 and G[1][1] == Fraction(1, 3) and G[2][2] == Fraction(4, 45)
    R = orthonormal_polynomials(LEGENDRE, 8)
    D = orthonormality_check(prm, LEGENDRE, p_from_r(prm, R), 8, quadrature=True)
    assert np.max(np.abs(D)) <= 1e-10
    D2 = orthonormality_check(prm, LEGENDRE, p_from_r(prm, R), 8)
    assert max(abs(x) for row in D2 for x in row) <= 1e-10


def test_orthonormality_defect_p0():
    for prm in (PerturbationParams(0, 0), PerturbationParams(3, -2)):
        G = orthonormality_check(prm, LEGENDRE, [Poly.const(1)], 0)
        assert G == [[0]]


def test_orthonormality_node_count():
    w = DiscreteMeasure([0, 1], [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(PencilLabError, match="insufficient-nodes"):
        orthonormality_check(PerturbationParams(0, 0), w, [Poly.const(1)] * 4, 3)


def test_matrix_measure_moment_table_agrees_with_pencil():
    pencil, (a, b) = perturbation_family()
    prm = PerturbationParams(Fraction(1, 2), Fraction(-2, 3))
    T1 = moment_table(pencil, 6)
    T2 = perturbation_moment_table(prm, JacobiMatrixMeasure(a, b), 6)
    assert T1.s == T2.s


def test_bracket_discriminants_via_monic_route():
    # monic bracket from the transform with rational a_0**2
    for a0sq, disc in ((Fraction(1, 4), -2), (Fraction(3, 4), 0)):
        rec = MonicRecurrence((1, 1), (1, a0sq))
        bracket = p_from_r(PerturbationParams(0, 1), monic_polynomials(rec, 2))[2]
        c0, c1, _ = bracket.coeffs
        assert c1 * c1 - 4 * c0 == disc
