"""
Bandedness of the recurrence for associated polynomials.

``p_n`` satisfy a ``(2N+1)``-term recurrence in ``λ**N`` exactly when ``A**N``
is symmetric in ``L²(σ)``. Two complementary tests live here:

* :func:`symmetry_defect` probes ``<A**N w, g> - <w, A**N g>`` over a monomial
  grid (plus a direct refutation for the perturbation family);
* :func:`band_fit` expands ``λ**N p_k`` in the ``p``-basis through ``S`` and
  checks that coefficients below the band vanish.

:func:`sieve` and :func:`assemble_block` give the matrix-polynomial view of a
banded family.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import PencilLabError
from .exactcore import Poly
from .perturb import apply_A_power, integrate, measure_moments, monic_polynomials, monic_recurrence

__all__ = ["SymmetryReport", "BandFit", "symmetry_defect", "band_fit", "sieve", "assemble_block"]


@dataclass(frozen=True)
class SymmetryReport:
    N: int
    max_defect: Fraction
    witness: tuple
    method: str  # "witness" or "grid"
    grid_degree: int

    @property
    def symmetric_on_grid(self):
        """Zero defect on every tested pair; evidence, not a proof."""
        return self.max_defect == 0


def _defect(prm, N, w, g, moments):
    return integrate(apply_A_power(prm, w, N) * g, moments) - integrate(w * apply_A_power(prm, g, N), moments)


def _refutation(prm, measure, N):
    # φ = (cλ + d)(d^N - λ^N)/(d - λ) has degree <= N, so <A^N φ, π_m> = 0 for m > N,
    # while <φ, A^N π_m> = π_m(0) <φ, φ> != 0 once π_m(0) != 0.
    phi = Poly((prm.d, prm.c)) * Poly.monomial(N).divided_difference_at(prm.d)
    try:
        pis = monic_polynomials(monic_recurrence(measure, N + 2), N + 2)
        m = next((k for k in range(N + 1, N + 3) if pis[k](0) != 0), None)
        if m is None:
            return None
        moments = measure_moments(measure, 2 * N + m + 1)
    except PencilLabError:
        # too few nodes or too short a prefix for the witness; the grid decides
        return None
    return _defect(prm, N, phi, pis[m], moments), (phi, pis[m])


def symmetry_defect(prm, measure, N, M, fast_path=True):
    """Largest ``|<A**N w, g> - <w, A**N g>|`` over monomials ``w, g`` of degree ``<= M``.

    For ``c != 0`` and ``d != 0`` a known nonzero witness pair is tried first
    (skip it with ``fast_path=False``).
    """
    if N < 1:
        raise PencilLabError("invalid-order", f"N = {N}")
    if fast_path and prm.c != 0 and prm.d != 0:
        found = _refutation(prm, measure, N)
        if found is not None and found[0] != 0:
            value, pair = found
            return SymmetryReport(N, abs(value), pair, "witness", M)
    moments = measure_moments(measure, 2 * M + N + 1)
    best, witness = Fraction(0), None
    mono = [Poly.monomial(k, Fraction(1)) for k in range(M + 1)]
    for i in range(M + 1):
        for k in range(i + 1, M + 1):
            v = abs(_defect(prm, N, mono[i], mono[k], moments))
            if v > best:
                best, witness = v, (mono[i], mono[k])
    return SymmetryReport(N, best, witness, "grid", M)


@dataclass(frozen=True)
class BandFit:
    N: int
    xi: tuple  # xi[k][i] = S(λ^N p_k, p_i), 0 <= i <= k + N
    banded: bool
    offenders: tuple  # (k, i) with i < k - N and xi[k][i] != 0

    @property
    def recurrence(self):
        """``alpha[k][j] = xi[k][k+j]`` for ``j = 0..N`` when banded, else ``None``."""
        if not self.banded:
            return None
        return tuple(tuple(row[k + j] for j in range(self.N + 1)) for k, row in enumerate(self.xi))


def band_fit(p, table, N):
    """Expand ``λ**N p_k`` against ``p_i`` through the moment table ``S``.

    Rows run over every ``k`` with ``k + N`` within both the basis and the table.
    """
    if N < 1:
        raise PencilLabError("invalid-order", f"N = {N}")
    kmax = min(len(p) - 1, table.M) - N
    if kmax < 0:
        raise PencilLabError("insufficient-table", f"need degree >= {N}, have basis {len(p)} / table M = {table.M}")
    lamN = Poly.monomial(N, Fraction(1))
    xi = []
    offenders = []
    for k in range(kmax + 1):
        lifted = lamN * p[k]
        row = tuple(table.S(lifted, p[i]) for i in range(k + N + 1))
        offenders.extend((k, i) for i in range(max(k - N, 0)) if row[i] != 0)
        xi.append(row)
    return BandFit(N, tuple(xi), not offenders, tuple(offenders))


def sieve(p, N, m):
    """``R_{N,m}(p)(t) = sum_n [λ**(nN+m)] p * t**n``."""
    if N < 1 or not 0 <= m < N:
        raise PencilLabError("residue-out-of-range", f"m = {m} for N = {N}")
    return Poly(p.coeffs[m::N])


def assemble_block(p, N, n):
    """``N x N`` block with entry ``(i, m) = R_{N,m}(p_{nN+i})``."""
    if len(p) < n * N + N:
        raise PencilLabError("insufficient-basis", f"block {n} needs p_0..p_{n * N + N - 1}")
    return [[sieve(p[n * N + i], N, m) for m in range(N)] for i in range(N)]
