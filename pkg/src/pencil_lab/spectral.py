"""
The spectral function of a pencil, its moments, and the four basic solutions.

The spectral function ``S`` is the sesquilinear form on polynomials for which
the associated polynomials are orthonormal. It is determined by the pencil
alone: writing ``λ**m = sum_i c[m][i] p_i`` gives
``s[m][n] = S(λ**m, λ**n) = sum_i c[m][i] * c[n][i]``.
"""
from dataclasses import dataclass
from functools import cached_property

from .errors import PencilLabError
from .exactcore import Poly, det_exact, divided_difference, polymat_det, PolyMatrix
from .pencil import associated_polynomials, shifted_solutions

__all__ = [
    "MomentTable",
    "SolutionQuad",
    "monomial_coords",
    "moment_table",
    "detrep_polynomial",
    "detrep_check",
    "second_kind",
    "basic_solutions",
    "independence_check",
]


@dataclass(frozen=True)
class MomentTable:
    """Symmetric table ``s[m][n] = S(λ**m, λ**n)`` for ``m, n <= M``."""

    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(tuple(row) for row in self.s))

    @property
    def M(self):
        return len(self.s) - 1

    @cached_property
    def delta(self):
        """Leading principal minors ``Δ_0 .. Δ_M``; ``Δ_{-1} = 1`` is implicit."""
        return tuple(det_exact([row[: n + 1] for row in self.s[: n + 1]]) for n in range(len(self.s)))

    def hankel(self, n):
        """``Δ_n`` including the convention ``Δ_{-1} = 1``."""
        return 1 if n == -1 else self.delta[n]

    def S(self, u, v):
        """Evaluate ``S(u, v)``; linear in ``u``, conjugate-linear in ``v``."""
        if u.degree > self.M or v.degree > self.M:
            raise PencilLabError("insufficient-table", f"degrees {u.degree}, {v.degree} exceed M = {self.M}")
        total = 0
        for i, ui in enumerate(u.coeffs):
            if ui == 0:
                continue
            row = self.s[i]
            for j, vj in enumerate(v.coeffs):
                if vj != 0:
                    total += ui * vj.conjugate() * row[j]
        return total


@dataclass(frozen=True)
class SolutionQuad:
    """The four basic solutions ``p, q, u, w`` of the difference equation."""

    p: list
    q: list
    u: list
    w: list


def monomial_coords(pbasis, m):
    """Coordinates of ``λ**m`` in the basis ``p_0 .. p_m`` (triangular back-substitution)."""
    if len(pbasis) <= m:
        raise PencilLabError("insufficient-basis", f"need p_0..p_{m}, have {len(pbasis)} polynomials")
    coords = [0] * (m + 1)
    rest = Poly.monomial(m)
    for i in range(m, -1, -1):
        c = rest[i] / pbasis[i].leading
        coords[i] = c
        rest = rest - c * pbasis[i]
    if rest:
        raise PencilLabError("insufficient-basis", "basis is not degree-graded")
    return coords


def moment_table(p, M, pbasis=None):
    """Exact moments ``s[m][n]`` for ``m, n <= M``, with Hankel positivity checked."""
    if pbasis is None:
        pbasis = associated_polynomials(p, M)
    C = [monomial_coords(pbasis, m) for m in range(M + 1)]
    s = [[sum(x * y for x, y in zip(C[m], C[n])) for n in range(M + 1)] for m in range(M + 1)]
    table = MomentTable(s)
    for n, d in enumerate(table.delta):
        if d <= 0:
            raise PencilLabError("hankel-not-positive", f"Δ_{n} = {d}")
    return table


def detrep_polynomial(table, n):
    """Determinant with moment rows ``(s[0][j] .. s[n][j])``, ``j < n``, over a row ``(1, λ, .., λ**n)``."""
    if n > table.M:
        raise PencilLabError("insufficient-table", f"n = {n} > M = {table.M}")
    rows = [[table.s[k][j] for k in range(n + 1)] for j in range(n)]
    rows.append([Poly.monomial(k) for k in range(n + 1)])
    return polymat_det(PolyMatrix.from_rows(rows))


def detrep_check(table, pbasis, n):
    """True iff ``M_n**2 == Δ_{n-1} Δ_n p_n**2`` exactly and the leading signs agree.

    ``M_n`` is :func:`detrep_polynomial`; the square form avoids the square
    root in the normalising factor.
    """
    Mn = detrep_polynomial(table, n)
    pn = pbasis[n]
    if Mn * Mn != table.hankel(n - 1) * table.hankel(n) * (pn * pn):
        return False
    return (Mn.leading > 0) == (pn.leading > 0)


def second_kind(p, table, K, pbasis=None):
    """``q_n(λ) = S_t((p_n(λ) - p_n(t)) / (λ - t), 1)`` for ``n <= K``."""
    if pbasis is None:
        pbasis = associated_polynomials(p, K)
    if table.M < K - 1:
        raise PencilLabError("insufficient-table", f"q_{K} needs moments up to {K - 1}, table has M = {table.M}")
    out = []
    for pn in pbasis[: K + 1]:
        q = Poly()
        for k, coeff in enumerate(divided_difference(pn)):
            q = q + coeff * table.s[k][0]
        out.append(q)
    return out


def basic_solutions(p, K):
    """Assemble ``p, q, u, w`` up to index ``K``."""
    P = associated_polynomials(p, K)
    table = moment_table(p, K, P)
    return SolutionQuad(
        p=P,
        q=second_kind(p, table, K, P),
        u=shifted_solutions(p, 1, K),
        w=shifted_solutions(p, 2, K),
    )


@dataclass(frozen=True)
class IndependenceResult:
    lam: object
    matrix: tuple
    det: object

    @property
    def nonsingular(self):
        return self.det != 0


def independence_check(quad, lam):
    """Evaluate ``[p_n, q_n, u_n, w_n](lam)`` for ``n = 0..3`` and its determinant."""
    if min(len(quad.p), len(quad.q), len(quad.u), len(quad.w)) < 4:
        raise PencilLabError("insufficient-basis", "need the four solutions up to n = 3")
    rows = tuple(tuple(seq[n](lam) for seq in (quad.p, quad.q, quad.u, quad.w)) for n in range(4))
    return IndependenceResult(lam, rows, det_exact(rows))

