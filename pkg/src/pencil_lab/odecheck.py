"""
Polynomial solutions of the fourth-order eigen-ODE

    c(t) y'''' + d(t) y''' + f(t) y'' + g(t) y' + h y
        + λ (φ(t) y'' + ψ(t) y' + θ y) = 0,

with ``deg c <= 4``, ``deg d <= 3``, ``deg f, deg φ <= 2``, ``deg g, deg ψ <= 1``
and constant ``h, θ``. Substituting ``y = sum μ_k t**k`` and matching the
coefficient of ``t**j`` gives a banded upper-triangular linear system in the
``μ_k``; its last row fixes ``λ``.
"""
from dataclasses import dataclass, fields
from fractions import Fraction

from .errors import PencilLabError
from .exactcore import Poly, rat
from .perturb import JacobiWeight, monic_polynomials, monic_recurrence

__all__ = [
    "OdeCoeffs",
    "perturbed_jacobi_ode_coeffs",
    "build_system",
    "solve_polynomial_eigen",
    "verify_ode",
    "perturbed_jacobi",
]


@dataclass(frozen=True)
class OdeCoeffs:
    c4: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c0: Fraction = Fraction(0)
    d3: Fraction = Fraction(0)
    d2: Fraction = Fraction(0)
    d1: Fraction = Fraction(0)
    d0: Fraction = Fraction(0)
    f2: Fraction = Fraction(0)
    f1: Fraction = Fraction(0)
    f0: Fraction = Fraction(0)
    g1: Fraction = Fraction(0)
    g0: Fraction = Fraction(0)
    h0: Fraction = Fraction(0)
    phi2: Fraction = Fraction(0)
    phi1: Fraction = Fraction(0)
    phi0: Fraction = Fraction(0)
    psi1: Fraction = Fraction(0)
    psi0: Fraction = Fraction(0)
    theta0: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, rat(getattr(self, f.name)))

    def polys(self):
        """The eight coefficient polynomials ``(c, d, f, g, h, φ, ψ, θ)``."""
        return (
            Poly((self.c0, self.c1, self.c2, self.c3, self.c4)),
            Poly((self.d0, self.d1, self.d2, self.d3)),
            Poly((self.f0, self.f1, self.f2)),
            Poly((self.g0, self.g1)),
            Poly((self.h0,)),
            Poly((self.phi0, self.phi1, self.phi2)),
            Poly((self.psi0, self.psi1)),
            Poly((self.theta0,)),
        )


def perturbed_jacobi_ode_coeffs(a, b):
    """Coefficients of the ODE satisfied by perturbed Jacobi polynomials (``c = 0, d = 1``).

    The equation is::

        -(t+1) t (t-1)^2 y'''' + (t-1)(-(a+b+10) t^2 + (b-a) t + 4) y'''
          + (-6(a+b+4) t^2 + (a+9b+22) t + 3a-3b) y''
          + (-6(a+b+2) t + 2a+6b+8) y'
          + λ (t(t-1) y'' + 2(2t-1) y' + 2 y) = 0
    """
    a, b = rat(a), rat(b)
    if not (a > -1 and b > -1):
        raise PencilLabError("invalid-params", f"Jacobi parameters must exceed -1, got ({a}, {b})")
    return OdeCoeffs(
        c4=-1, c3=1, c2=1, c1=-1, c0=0,
        d3=-(a + b + 10), d2=2 * b + 10, d1=a - b + 4, d0=-4,
        f2=-6 * (a + b + 4), f1=a + 9 * b + 22, f0=3 * a - 3 * b,
        g1=-6 * (a + b + 2), g0=2 * a + 6 * b + 8, h0=0,
        phi2=1, phi1=-1, phi0=0, psi1=4, psi0=-2, theta0=2,
    )  # fmt: skip


def _ff(j, k):
    """Falling factorial ``j (j-1) ... (j-k+1)``."""
    out = 1
    for i in range(k):
        out *= j - i
    return out


def _row(co, j, lam):
    """Coefficients of ``μ_j .. μ_{j+4}`` in the ``t**j`` equation."""
    return (
        _ff(j, 4) * co.c4 + _ff(j, 3) * co.d3 + _ff(j, 2) * co.f2 + j * co.g1 + co.h0
        + lam * (_ff(j, 2) * co.phi2 + j * co.psi1 + co.theta0),
        _ff(j + 1, 4) * co.c3 + _ff(j + 1, 3) * co.d2 + _ff(j + 1, 2) * co.f1 + (j + 1) * co.g0
        + lam * (_ff(j + 1, 2) * co.phi1 + (j + 1) * co.psi0),
        _ff(j + 2, 4) * co.c2 + _ff(j + 2, 3) * co.d1 + _ff(j + 2, 2) * co.f0 + lam * _ff(j + 2, 2) * co.phi0,
        _ff(j + 3, 4) * co.c1 + _ff(j + 3, 3) * co.d0,
        _ff(j + 4, 4) * co.c0,
    )  # fmt: skip


def build_system(co, n, lam):
    """The ``(n+1) x (n+1)`` matrix whose kernel holds the degree-``<= n`` polynomial solutions."""
    if n < 0:
        raise PencilLabError("invalid-degree", f"n = {n}")
    lam = rat(lam)
    M = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        for off, v in enumerate(_row(co, j, lam)):
            if j + off <= n:
                M[j][j + off] = v
    return M


def solve_polynomial_eigen(co, n):
    """The unique ``λ`` admitting a degree-``n`` polynomial solution, and that solution.

    ``λ`` solves the (linear) last equation with ``μ_n = 1``; the remaining
    coefficients follow by back-substitution. Returns ``(λ, μ)``.
    """
    # last row: K + λ L = 0
    K = _row(co, n, 0)[0]
    L = _row(co, n, 1)[0] - K
    if L == 0:
        raise PencilLabError("lambda-indeterminate", f"λ drops out of the t^{n} equation")
    lam = -K / L
    M = build_system(co, n, lam)
    mu = [Fraction(0)] * (n + 1)
    mu[n] = Fraction(1)
    for j in range(n - 1, -1, -1):
        if M[j][j] == 0:
            raise PencilLabError("degenerate-diagonal", f"zero pivot at j = {j}; solution not unique")
        mu[j] = -sum(M[j][k] * mu[k] for k in range(j + 1, n + 1)) / M[j][j]
    return lam, mu


def verify_ode(co, lam, y):
    """The residual polynomial of the ODE at ``λ = lam`` for the polynomial ``y``."""
    c, d, f, g, h, phi, psi, theta = co.polys()
    lam = rat(lam)
    y1, y2 = y.derivative(), y.derivative(2)
    main = c * y.derivative(4) + d * y.derivative(3) + f * y2 + g * y1 + h * y
    return main + lam * (phi * y2 + psi * y1 + theta * y)


def perturbed_jacobi(a, b, n):
    """``p_n = r_n - (r_n(λ) - r_n(0)) / λ`` from the monic Jacobi polynomial ``r_n``."""
    r = monic_polynomials(monic_recurrence(JacobiWeight(a, b), max(n, 1)), n)[n]
    return r - r.divided_difference_at(0)
