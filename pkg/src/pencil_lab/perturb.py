"""
The rank-one perturbation ``A[p] = λ p + p(0) (c λ + d)`` of multiplication by ``λ``.

Given a probability measure ``σ`` with orthonormal polynomials ``r_n`` and
Jacobi matrix ``J3``, the operator ``A`` (with ``c > -1``) is the model of the
associated operator of the pencil ``(J3, J3**2, α, β)`` with

    α = 1 / ((c+1) sqrt(Δ_1)),   β = -((c+1) s_1 + d) / ((c+1) sqrt(Δ_1)),

``s_k`` the moments of ``σ`` and ``Δ_1 = s_2 - s_1**2``. Its associated
polynomials are ``p_n = ((r_n - d Δ_0 r_n) + c r_n(0)) / (c+1)`` where
``Δ_x f = (f(λ) - f(x)) / (λ - x)`` is the exact divided difference.

Measures are given either by rational data (a finite discrete measure, a
normalised Jacobi weight, or a rational Jacobi matrix) so that moments and
monic recurrence coefficients stay exact.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import PencilLabError
from .exactcore import Poly, X, rat
from .pencil import PencilData, degenerate_from_jacobi, jacobi_polynomials
from .spectral import MomentTable

__all__ = [
    "PerturbationParams",
    "DiscreteMeasure",
    "JacobiWeight",
    "JacobiMatrixMeasure",
    "MonicRecurrence",
    "parse_measure",
    "monic_recurrence",
    "monic_polynomials",
    "orthonormal_polynomials",
    "measure_moments",
    "integrate",
    "gauss_rule",
    "apply_A",
    "apply_A_power",
    "u_of_A_at_one",
    "p_from_r",
    "r_from_p",
    "recurrence3_residual",
    "orthonormality_check",
    "perturbation_pencil",
    "build_pencil_from_perturbation",
    "perturbation_moment_table",
]


@dataclass(frozen=True)
class PerturbationParams:
    c: object
    d: object

    def __post_init__(self):
        object.__setattr__(self, "c", rat(self.c))
        object.__setattr__(self, "d", rat(self.d))
        if not self.c > -1:
            raise PencilLabError("invalid-params", f"c must exceed -1, got {self.c}")

    @property
    def is_identity(self):
        return self.c == 0 and self.d == 0


@dataclass(frozen=True)
class DiscreteMeasure:
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        nodes = tuple(rat(x) for x in self.nodes)
        weights = tuple(rat(w) for w in self.weights)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if len(nodes) != len(weights) or not nodes:
            raise PencilLabError("invalid-measure", "nodes and weights must be nonempty and equally long")
        if any(w <= 0 for w in weights):
            raise PencilLabError("invalid-measure", "weights must be positive")
        if sum(weights) != 1:
            raise PencilLabError("invalid-measure", f"weights sum to {sum(weights)}, expected 1")
        if len(set(nodes)) != len(nodes):
            raise PencilLabError("invalid-measure", "nodes must be distinct")

    @property
    def size(self):
        return len(self.nodes)


@dataclass(frozen=True)
class JacobiWeight:
    """Normalised weight ``(1-x)**a (1+x)**b`` on ``[-1, 1]``."""

    a: object
    b: object

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if not (self.a > -1 and self.b > -1):
            raise PencilLabError("invalid-measure", f"Jacobi parameters must exceed -1, got ({self.a}, {self.b})")

    size = math.inf


@dataclass(frozen=True)
class JacobiMatrixMeasure:
    """The orthogonality measure of a (rational) Jacobi matrix, known through its entries.

    Only the prefix matters: moments up to ``2 * len(b) - 1`` are determined.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(rat(x) for x in self.a))
        object.__setattr__(self, "b", tuple(rat(x) for x in self.b))
        if any(x <= 0 for x in self.a):
            raise PencilLabError("invalid-measure", "Jacobi off-diagonal entries must be positive")

    size = math.inf


def parse_measure(spec):
    """Build a measure from ``"jacobi:a,b"``, ``"legendre"``, or a dict with a ``kind`` key."""
    if isinstance(spec, (DiscreteMeasure, JacobiWeight, JacobiMatrixMeasure)):
        return spec
    if isinstance(spec, str):
        kind, _, args = spec.partition(":")
        kind = kind.strip().lower()
        if kind == "legendre":
            return JacobiWeight(0, 0)
        if kind == "jacobi":
            a, b = args.split(",")
            return JacobiWeight(a, b)
        raise PencilLabError("invalid-measure", f"unknown measure {spec!r}")
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "discrete":
            return DiscreteMeasure(spec["nodes"], spec["weights"])
        if kind == "jacobi":
            return JacobiWeight(spec["a"], spec["b"])
        if kind == "jacobi-matrix":
            return JacobiMatrixMeasure(spec["a"], spec["b"])
    raise PencilLabError("invalid-measure", f"cannot parse measure {spec!r}")


@dataclass(frozen=True)
class MonicRecurrence:
    """``π_{k+1} = (λ - alpha[k]) π_k - beta[k] π_{k-1}``, with ``beta[0] = ∫dσ = 1``."""

    alpha: tuple
    beta: tuple

    @property
    def jacobi_entries(self):
        """Orthonormal (float) Jacobi entries ``(a, b)`` with ``a_k = sqrt(beta[k+1])``."""
        return [math.sqrt(x) for x in self.beta[1:]], [float(x) for x in self.alpha]


def _jacobi_weight_recurrence(a, b, n):
    s = a + b
    alpha, beta = [], []
    for k in range(n):
        if k == 0:
            alpha.append((b - a) / (s + 2))
            beta.append(Fraction(1))
            continue
        alpha.append((b * b - a * a) / ((2 * k + s) * (2 * k + s + 2)))
        if k == 1:
            beta.append(4 * (1 + a) * (1 + b) / ((2 + s) ** 2 * (3 + s)))
        else:
            beta.append(
                4 * k * (k + a) * (k + b) * (k + s) / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1))
            )
    return MonicRecurrence(tuple(alpha), tuple(beta))


def _stieltjes(nodes, weights, n):
    alpha, beta = [], []
    prev = [Fraction(0)] * len(nodes)
    cur = [Fraction(1)] * len(nodes)
    norm_prev = None
    for k in range(n):
        norm = sum(w * v * v for w, v in zip(weights, cur))
        alpha.append(sum(w * x * v * v for w, x, v in zip(weights, nodes, cur)) / norm)
        beta.append(norm if k == 0 else norm / norm_prev)
        nxt = [(x - alpha[k]) * v - beta[k] * u for x, v, u in zip(nodes, cur, prev)]
        prev, cur, norm_prev = cur, nxt, norm
    return MonicRecurrence(tuple(alpha), tuple(beta))


def monic_recurrence(measure, n):
    """First ``n`` monic recurrence coefficients ``(alpha[0..n-1], beta[0..n-1])``, exact."""
    if isinstance(measure, JacobiWeight):
        return _jacobi_weight_recurrence(measure.a, measure.b, n)
    if isinstance(measure, DiscreteMeasure):
        if n > measure.size:
            raise PencilLabError("insufficient-nodes", f"{measure.size} nodes support only {measure.size} recurrence terms")
        return _stieltjes(measure.nodes, measure.weights, n)
    if isinstance(measure, JacobiMatrixMeasure):
        if n > len(measure.b) or n - 1 > len(measure.a):
            raise PencilLabError("insufficient-moments", f"Jacobi prefix too short for {n} recurrence terms")
        return MonicRecurrence(measure.b[:n], (Fraction(1),) + tuple(x * x for x in measure.a[: n - 1]))
    raise PencilLabError("invalid-measure", f"unsupported measure {measure!r}")


def monic_polynomials(rec, K):
    """Monic orthogonal polynomials ``π_0 .. π_K`` from a :class:`MonicRecurrence`."""
    if len(rec.alpha) < K:
        raise PencilLabError("insufficient-moments", f"π_{K} needs {K} recurrence terms")
    out = [Poly.const(Fraction(1))]
    prev = Poly()
    for k in range(K):
        nxt = (X - rec.alpha[k]) * out[k] - (rec.beta[k] * prev if k else Poly())
        prev = out[k]
        out.append(nxt)
    return out


def orthonormal_polynomials(measure, K):
    """Float orthonormal polynomials ``r_0 .. r_K`` (positive leading coefficients)."""
    a, b = monic_recurrence(measure, K + 1).jacobi_entries
    return jacobi_polynomials(a, b, K)


def measure_moments(measure, K):
    """Exact normalised moments ``m_0 .. m_K`` (``m_0 = 1``)."""
    if K < 0:
        raise PencilLabError("invalid-measure", "K must be >= 0")
    if isinstance(measure, DiscreteMeasure):
        return [sum(w * x**k for x, w in zip(measure.nodes, measure.weights)) for k in range(K + 1)]
    half = K // 2 + 1
    rec = monic_recurrence(measure, half)
    # (T^k)_{00} for the tridiagonal T with diag alpha, super beta[i+1], sub 1
    v = [Fraction(1)] + [Fraction(0)] * (half - 1)
    out = []
    for _ in range(K + 1):
        out.append(v[0])
        w = [rec.alpha[i] * v[i] for i in range(half)]
        for i in range(half - 1):
            w[i] += rec.beta[i + 1] * v[i + 1]
            w[i + 1] += v[i]
        v = w
    return out


def integrate(poly, moments):
    """``∫ poly dσ`` by moment contraction."""
    if poly.degree >= len(moments):
        raise PencilLabError("insufficient-moments", f"degree {poly.degree} needs {poly.degree + 1} moments")
    return sum((c * m for c, m in zip(poly.coeffs, moments)), 0)


def gauss_rule(measure, n):
    """Gauss nodes and weights (float) from the Jacobi matrix eigen-decomposition."""
    rec = monic_recurrence(measure, n)
    diag = np.array([float(x) for x in rec.alpha])
    off = np.sqrt(np.array([float(x) for x in rec.beta[1:]]))
    nodes, vecs = eigh_tridiagonal(diag, off)
    return nodes, float(rec.beta[0]) * vecs[0, :] ** 2


def apply_A(prm, p):
    return X * p + p(0) * Poly((prm.d, prm.c))


def apply_A_power(prm, p, n):
    """``A**n [p] = λ**n p + p(0) (c λ + d) (d**n - λ**n) / (d - λ)`` as an exact polynomial."""
    if n < 0:
        raise PencilLabError("invalid-power", f"n = {n}")
    out = Poly.monomial(n) * p
    p0 = p(0)
    if n and p0 != 0:
        geometric = Poly.monomial(n).divided_difference_at(prm.d)
        out = out + p0 * Poly((prm.d, prm.c)) * geometric
    return out


def u_of_A_at_one(prm, u):
    """``u(A)[1] = (c+1) u + (c+1) d Δ_d u - c u(d)``."""
    c, d = prm.c, prm.d
    return (c + 1) * u + ((c + 1) * d) * u.divided_difference_at(d) - c * u(d)


def p_from_r(prm, r):
    """Associated polynomials of the perturbed pencil from the orthonormal family ``r``."""
    c, d = prm.c, prm.d
    return [(rn - d * rn.divided_difference_at(0) + c * rn(0)) / (c + 1) for rn in r]


def r_from_p(prm, p):
    """Inverse of :func:`p_from_r`."""
    return [u_of_A_at_one(prm, pn) for pn in p]


def recurrence3_residual(prm, p, a, b, n, monic=False):
    """Residual of ``λ p_n = p_n(d)/(c+1) (cλ + d) + a_{n-1} p_{n-1} + b_n p_n + a_n p_{n+1}``.

    With ``monic=True`` the family comes from monic ``π_n`` and ``a`` holds the
    monic ``beta``; the relation becomes ``... + beta_n p_{n-1} + b_n p_n + p_{n+1}``.
    """
    if n < 0 or n + 1 >= len(p):
        raise PencilLabError("index-out-of-range", f"row {n} needs p_{n + 1}")
    c, d = prm.c, prm.d
    out = X * p[n] - (p[n](d) / (c + 1)) * Poly((d, c)) - b[n] * p[n]
    if monic:
        out = out - p[n + 1] - (a[n] * p[n - 1] if n else Poly())
    else:
        out = out - a[n] * p[n + 1] - (a[n - 1] * p[n - 1] if n else Poly())
    return out


def orthonormality_check(prm, measure, p, nmax, monic=False, quadrature=False):
    """Defects ``∫ R_n R_m dσ - δ_{nm}`` with ``R_n = u_of_A_at_one(p_n)``.

    Exact moment contraction by default; ``quadrature=True`` integrates in
    floating point with a Gauss rule instead. With ``monic=True`` the raw Gram
    matrix is returned (the diagonal then holds ``‖π_n‖**2``).
    """
    if len(p) <= nmax:
        raise PencilLabError("insufficient-basis", f"need p_0..p_{nmax}")
    if measure.size < nmax + 1:
        raise PencilLabError("insufficient-nodes", f"{measure.size} nodes cannot separate degree {nmax}")
    R = [u_of_A_at_one(prm, pn) for pn in p[: nmax + 1]]
    if quadrature:
        nodes, weights = gauss_rule(measure, min(nmax + 2, measure.size))
        V = np.array([[Rn.to_float()(x) for x in nodes] for Rn in R])
        G = (V * weights) @ V.T
        return G if monic else G - np.eye(nmax + 1)
    moments = measure_moments(measure, 2 * nmax)
    G = [[integrate(R[i] * R[k], moments) for k in range(nmax + 1)] for i in range(nmax + 1)]
    if not monic:
        for i in range(nmax + 1):
            G[i][i] -= 1
    return G


def perturbation_pencil(prm, a, b):
    """Exact pencil for the perturbation of the Jacobi matrix with entries ``(a, b)``.

    For the normalised measure of ``J3``: ``s_1 = b_0`` and ``Δ_1 = a_0**2``.
    """
    base = degenerate_from_jacobi(a, b)
    c, d = prm.c, prm.d
    a0, b0 = base.a[0], base.b[0]
    return PencilData(
        base.a,
        base.b,
        base.alpha_j5,
        base.beta_j5,
        base.gamma,
        1 / ((c + 1) * a0),
        -((c + 1) * b0 + d) / ((c + 1) * a0),
    )


def build_pencil_from_perturbation(prm, measure, depth):
    """Float pencil ``(J3, J3**2, α, β)`` for the perturbation over ``measure``.

    ``J3`` comes from the measure's recurrence (square roots taken in floating
    point); ``α, β`` are read from the Hankel determinant ``Δ_1`` and ``A[1]``.
    """
    rec = monic_recurrence(measure, depth + 1)
    a, b = rec.jacobi_entries
    s = measure_moments(measure, 2)
    delta1 = s[0] * s[2] - s[1] ** 2
    xi01, xi00 = prm.c + 1, prm.d  # A[1] = (c+1) λ + d
    root = xi01 * math.sqrt(delta1)
    base = degenerate_from_jacobi(a, b)
    return PencilData(
        base.a,
        base.b,
        base.alpha_j5,
        base.beta_j5,
        base.gamma,
        1 / root,
        -float(xi01 * s[1] + xi00) / root,
    )


def perturbation_moment_table(prm, measure, M):
    """``s[m][n] = ∫ (λ**m)(A)[1] (λ**n)(A)[1] dσ`` by exact moment contraction."""
    moments = measure_moments(measure, 2 * M)
    G = [u_of_A_at_one(prm, Poly.monomial(k, Fraction(1))) for k in range(M + 1)]
    return MomentTable([[integrate(G[i] * G[k], moments) for k in range(M + 1)] for i in range(M + 1)])
