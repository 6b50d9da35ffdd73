"""
Jacobi-type pencils ``J5 - λ J3`` and the solutions of their recurrence.

A pencil is stored as finite prefixes of its matrix diagonals:

* ``a``, ``b``: off-diagonal and diagonal of the Jacobi matrix ``J3``;
* ``alpha_j5``, ``beta_j5``, ``gamma``: diagonal, first and second
  off-diagonals of the symmetric five-diagonal ``J5``;
* ``alpha_const``, ``beta_const``: the seed ``p_1(λ) = alpha_const*λ + beta_const``.

The scalar form of ``(J5 - λ J3) p(λ) = 0`` at row ``n`` is::

    γ[n-2] y[n-2] + (β[n-1] - λ a[n-1]) y[n-1] + (α[n] - λ b[n]) y[n]
        + (β[n] - λ a[n]) y[n+1] + γ[n] y[n+2] = 0

with all negative-index terms absent.
"""
from dataclasses import dataclass, field

from .errors import PencilLabError
from .exactcore import Poly, rat

__all__ = [
    "PencilData",
    "validate_pencil",
    "associated_polynomials",
    "shifted_pencil",
    "shifted_solutions",
    "recurrence_residual",
    "degenerate_from_jacobi",
    "jacobi_polynomials",
    "christoffel_darboux",
]


def _seq(values):
    return tuple(rat(v) for v in values)


@dataclass(frozen=True)
class PencilData:
    a: tuple
    b: tuple
    alpha_j5: tuple
    beta_j5: tuple
    gamma: tuple
    alpha_const: object
    beta_const: object = field(default=0)

    def __post_init__(self):
        for name in ("a", "b", "alpha_j5", "beta_j5", "gamma"):
            object.__setattr__(self, name, _seq(getattr(self, name)))
        object.__setattr__(self, "alpha_const", rat(self.alpha_const))
        object.__setattr__(self, "beta_const", rat(self.beta_const))

    @property
    def max_depth(self):
        """Largest ``K`` for which ``p_0 .. p_K`` can be generated."""
        return min(len(self.a), len(self.b), len(self.alpha_j5), len(self.beta_j5), len(self.gamma)) + 1

    def J3(self, size):
        """Leading ``size x size`` block of ``J3`` as nested lists."""
        return _banded(size, self.b, [self.a])

    def J5(self, size):
        return _banded(size, self.alpha_j5, [self.beta_j5, self.gamma])

    def row_coeffs(self, n):
        """The five coefficient polynomials of row ``n`` (offsets -2 .. +2)."""
        a, b, al, be, ga = self.a, self.b, self.alpha_j5, self.beta_j5, self.gamma
        zero = Poly()
        return (
            Poly.const(ga[n - 2]) if n >= 2 else zero,
            Poly((be[n - 1], -a[n - 1])) if n >= 1 else zero,
            Poly((al[n], -b[n])),
            Poly((be[n], -a[n])),
            Poly.const(ga[n]),
        )


def _banded(size, diag, offdiags):
    M = [[0] * size for _ in range(size)]
    if size > len(diag) or any(size - k - 1 > len(off) for k, off in enumerate(offdiags)):
        raise PencilLabError("insufficient-prefix", f"cannot form a {size}x{size} truncation")
    for i in range(size):
        M[i][i] = diag[i]
    for k, off in enumerate(offdiags, start=1):
        for i in range(size - k):
            M[i][i + k] = M[i + k][i] = off[i]
    return M


def validate_pencil(p, depth):
    """Check positivity constraints and that prefixes reach ``p_depth``.

    Generating ``p_0 .. p_K`` uses the recurrence rows ``n <= K - 2``, hence
    every sequence needs entries up to index ``K - 2``.
    """
    if p.alpha_const <= 0:
        raise PencilLabError("nonpositive-alpha-const", f"alpha_const = {p.alpha_const}")
    for k, v in enumerate(p.a):
        if v <= 0:
            raise PencilLabError("nonpositive-a", f"a[{k}] = {v}")
    for k, v in enumerate(p.gamma):
        if v <= 0:
            raise PencilLabError("nonpositive-gamma", f"gamma[{k}] = {v}")
    need = depth - 1
    if need > 0:
        for name in ("a", "b", "alpha_j5", "beta_j5", "gamma"):
            if len(getattr(p, name)) < need:
                raise PencilLabError(
                    "insufficient-prefix", f"{name} has {len(getattr(p, name))} entries, depth {depth} needs {need}"
                )


def _run_recurrence(p, y0, y1, K):
    seq = [y0, y1]
    for n in range(K - 1):
        c = p.row_coeffs(n)
        acc = c[2] * seq[n] + c[3] * seq[n + 1]
        if n >= 1:
            acc = acc + c[1] * seq[n - 1]
        if n >= 2:
            acc = acc + c[0] * seq[n - 2]
        seq.append(-acc / p.gamma[n])
    return seq[: K + 1]


def associated_polynomials(p, K):
    """``p_0 .. p_K`` seeded by ``p_0 = 1``, ``p_1 = alpha_const*λ + beta_const``."""
    validate_pencil(p, K)
    return _run_recurrence(p, Poly.const(rat(1)), Poly((p.beta_const, p.alpha_const)), K)


def shifted_pencil(p):
    """Drop the first row and column of ``J3`` and ``J5``.

    The new seed constants are ``a[0]/γ[0]`` and ``-β[0]/γ[0]``.
    """
    for name in ("a", "b", "alpha_j5", "beta_j5", "gamma"):
        if len(getattr(p, name)) < 2:
            raise PencilLabError("insufficient-prefix", f"{name} too short to shift")
    return PencilData(
        a=p.a[1:],
        b=p.b[1:],
        alpha_j5=p.alpha_j5[1:],
        beta_j5=p.beta_j5[1:],
        gamma=p.gamma[1:],
        alpha_const=p.a[0] / p.gamma[0],
        beta_const=-p.beta_j5[0] / p.gamma[0],
    )


def shifted_solutions(p, order, K):
    """Shifted (``order=1``, ``u``) or double-shifted (``order=2``, ``w``) solutions.

    ``u_0 = 0, u_k = f_{k-1}`` and ``w_0 = w_1 = 0, w_k = f~_{k-2}`` where ``f``
    and ``f~`` are associated to the once and twice shifted pencils.
    """
    if order not in (1, 2):
        raise PencilLabError("bad-order", f"order must be 1 or 2, got {order}")
    validate_pencil(p, K)
    q = p
    for _ in range(order):
        q = shifted_pencil(q)
    if K < order:
        return [Poly()] * (K + 1)
    return [Poly()] * order + associated_polynomials(q, K - order)


def recurrence_residual(p, seq, n):
    """Left-hand side of the row-``n`` relation applied to ``seq`` (exact polynomial)."""
    if n < 0 or n + 2 >= len(seq):
        raise PencilLabError("index-out-of-range", f"row {n} needs seq[{n + 2}], have {len(seq)} entries")
    try:
        c = p.row_coeffs(n)
    except IndexError:
        raise PencilLabError("index-out-of-range", f"pencil prefix too short for row {n}") from None
    out = c[2] * seq[n] + c[3] * seq[n + 1] + c[4] * seq[n + 2]
    if n >= 1:
        out = out + c[1] * seq[n - 1]
    if n >= 2:
        out = out + c[0] * seq[n - 2]
    return out


def degenerate_from_jacobi(a, b):
    """The pencil ``(J3, J3**2, 1/a0, -b0/a0)`` whose associated polynomials are
    the orthonormal polynomials of ``J3``."""
    a, b = _seq(a), _seq(b)
    for k, v in enumerate(a):
        if v <= 0:
            raise PencilLabError("nonpositive-a", f"a[{k}] = {v}")
    if not a or not b:
        raise PencilLabError("insufficient-prefix", "need a[0] and b[0]")

    def a_(k):
        return a[k] if k >= 0 else 0

    n_alpha = min(len(a), len(b))
    alpha = [a_(n - 1) ** 2 + b[n] ** 2 + a[n] ** 2 for n in range(n_alpha)]
    beta = [a[n] * (b[n] + b[n + 1]) for n in range(min(len(a), len(b) - 1))]
    gamma = [a[n] * a[n + 1] for n in range(len(a) - 1)]
    return PencilData(a, b, alpha, beta, gamma, 1 / a[0], -b[0] / a[0])


def jacobi_polynomials(a, b, K):
    """Orthonormal polynomials of a Jacobi matrix from the three-term recurrence

    ``λ r_n = a[n-1] r_{n-1} + b[n] r_n + a[n] r_{n+1}``, ``r_0 = 1``.
    """
    a, b = _seq(a), _seq(b)
    if K >= 1 and (len(a) < K or len(b) < K):
        raise PencilLabError("insufficient-prefix", f"r_{K} needs a[0..{K - 1}], b[0..{K - 1}]")
    r = [Poly.const(rat(1))]
    prev = Poly()
    for n in range(K):
        nxt = (Poly((-b[n], 1)) * r[n] - (a[n - 1] * prev if n else Poly())) / a[n]
        prev = r[n]
        r.append(nxt)
    return r


def christoffel_darboux(p, n, lam, y, polys=None):
    """Both sides of the Christoffel-Darboux analogue at order ``n``, evaluated at ``(lam, y)``.

    Returns ``(lhs, rhs)``; they agree exactly whenever ``lam != y``.
    """
    if lam == y:
        raise PencilLabError("equal-arguments", "the identity is stated for lam != y")
    if n < 1:
        raise PencilLabError("index-out-of-range", "n must be >= 1")
    if polys is None or len(polys) < n + 3:
        polys = associated_polynomials(p, n + 2)
    P = [q(lam) for q in polys[: n + 3]]
    Q = [q(y) for q in polys[: n + 3]]
    a, b, be, ga = p.a, p.b, p.beta_j5, p.gamma

    lhs = 0
    for k in range(n + 1):
        inner = b[k] * Q[k] + a[k] * Q[k + 1]
        if k >= 1:
            inner += a[k - 1] * Q[k - 1]
        lhs += inner * P[k]

    def cross(i, j):
        return (P[i] * Q[j] - Q[i] * P[j]) / (lam - y)

    rhs = ga[n - 1] * cross(n + 1, n - 1) + ga[n] * cross(n + 2, n) + (be[n] - a[n] * lam) * cross(n + 1, n)
    return lhs, rhs
