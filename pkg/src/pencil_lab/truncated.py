"""
Truncated pencils ``Φ_j = J5[:j, :j] - λ J3[:j, :j]``.

The characteristic polynomial ``D_j`` is computed exactly; eigenvalues and
eigenvectors are floating point. Eigenvectors are built from the two-term span
``c1 * (p_0..p_{j-1})(λ0) + c2 * (u_0..u_{j-1})(λ0)`` with ``(c1, c2)`` in the
kernel of the 2x2 matrix ``[[p_j, u_j], [p_{j+1}, u_{j+1}]](λ0)``.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import PencilLabError
from .exactcore import Poly, PolyMatrix, polymat_det, roots_float, squarefree_decomposition
from .pencil import associated_polynomials, shifted_solutions

__all__ = [
    "TruncatedSpectrum",
    "OrthogonalityReport",
    "char_poly",
    "wronskian",
    "factorization_check",
    "pencil_eigs",
    "bilinear_form_C",
    "sesquilinear_form",
    "orthogonality_report",
]

RESIDUAL_TOL = 1e-8
CLUSTER_TOL = 1e-9


def char_poly(p, j):
    """``D_j(λ) = det(J5[:j, :j] - λ J3[:j, :j])`` with ``D_0 = 1``."""
    if j < 0:
        raise PencilLabError("index-out-of-range", f"j = {j}")
    return polymat_det(PolyMatrix.pencil(p.J5(j), p.J3(j)))


def wronskian(P, U, j):
    """``p_j u_{j+1} - p_{j+1} u_j``."""
    return P[j] * U[j + 1] - P[j + 1] * U[j]


def factorization_check(p, j):
    """Find ``c_j`` with ``D_j = c_j (p_j u_{j+1} - p_{j+1} u_j)`` and verify it exactly.

    ``c_j`` is the ratio of the highest-degree coefficients; the full polynomial
    identity is then compared term by term. Returns ``(c_j, ok)``.
    """
    if j < 1:
        raise PencilLabError("index-out-of-range", "j must be >= 1")
    D = char_poly(p, j)
    P = associated_polynomials(p, j + 1)
    U = shifted_solutions(p, 1, j + 1)
    W = wronskian(P, U, j)
    if not W:
        raise PencilLabError("zero-wronskian", f"p_j u_(j+1) - p_(j+1) u_j vanishes identically at j = {j}")
    c = D.leading / W.leading
    return c, D == c * W


@dataclass
class TruncatedSpectrum:
    j: int
    charpoly: Poly
    eigenvalues: list = field(default_factory=list)
    eigenvectors: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    J3: np.ndarray = None
    J5: np.ndarray = None

    @property
    def max_residual(self):
        return max(self.residuals, default=0.0)


def _kernel_2x2(M, rel_tol=1e-9):
    """Orthonormal basis of the numerical kernel of a 2x2 complex matrix."""
    _, sv, vh = np.linalg.svd(M)
    scale = max(sv[0], 1.0)
    null = [vh[k].conj() for k in range(2) if sv[k] <= rel_tol * scale]
    if not null:
        null = [vh[1].conj()]
    return null


def pencil_eigs(p, j):
    """Eigenvalues of ``Φ_j`` (roots of ``D_j``) with span-built eigenvectors.

    Root multiplicities come from an exact square-free decomposition of
    ``D_j``; each square-free factor is then solved in floating point. A root
    of multiplicity >= 2 may carry a two-dimensional eigenspace, in which
    case both kernel vectors are returned (with the eigenvalue repeated).
    """
    if j < 1:
        raise PencilLabError("index-out-of-range", "j must be >= 1")
    D = char_poly(p, j)
    if not D:
        raise PencilLabError("singular-pencil", f"D_{j} vanishes identically")
    J3 = np.array(p.J3(j), dtype=float)
    J5 = np.array(p.J5(j), dtype=float)
    spec = TruncatedSpectrum(j=j, charpoly=D, J3=J3, J5=J5)
    if D.degree == 0:
        return spec
    P = [q.to_float() for q in associated_polynomials(p, j + 1)]
    U = [q.to_float() for q in shifted_solutions(p, 1, j + 1)]
    roots = []
    for factor, mult in squarefree_decomposition(D):
        roots.extend((z, mult) for z in roots_float(factor))
    roots.sort(key=lambda zm: (round(zm[0].real, 12), round(zm[0].imag, 12)))
    for lam0, mult in roots:
        M = np.array([[P[j](lam0), U[j](lam0)], [P[j + 1](lam0), U[j + 1](lam0)]], dtype=complex)
        kernel = _kernel_2x2(M) if mult >= 2 else [_kernel_2x2(M)[-1]]
        for c1, c2 in kernel:
            x = np.array([c1 * P[n](lam0) + c2 * U[n](lam0) for n in range(j)], dtype=complex)
            x /= np.linalg.norm(x)
            res = np.linalg.norm((J5 - lam0 * J3) @ x)
            spec.eigenvalues.append(lam0)
            spec.eigenvectors.append(x)
            spec.multiplicities.append(mult)
            spec.residuals.append(float(res))
    return spec


def bilinear_form_C(x, y, J3trunc):
    """``[J3 x, y]_C = sum_i (J3 x)_i y_i`` (no conjugation)."""
    x, y = np.asarray(x), np.asarray(y)
    J3trunc = np.asarray(J3trunc, dtype=float)
    if x.shape != y.shape or J3trunc.shape != (x.size, x.size):
        raise PencilLabError("dimension-mismatch", f"{x.shape}, {y.shape}, {J3trunc.shape}")
    return complex(np.sum((J3trunc @ x) * y))


def sesquilinear_form(x, y, J3trunc):
    """``(J3 x, y) = sum_i (J3 x)_i conj(y_i)``."""
    return bilinear_form_C(x, np.conj(np.asarray(y)), J3trunc)


@dataclass
class OrthogonalityReport:
    eigenvalues: list
    bilinear: np.ndarray
    sesquilinear: np.ndarray
    bilinear_required: np.ndarray
    sesquilinear_required: np.ndarray
    j3_positive_definite: bool
    max_imag: float
    tol: float

    @property
    def pairs(self):
        """Index pairs ``i < j`` with distinct eigenvalues (where ``[J3 x', x'']_C = 0`` must hold)."""
        n = len(self.eigenvalues)
        return [(i, k) for i in range(n) for k in range(i + 1, n) if self.bilinear_required[i, k]]

    @property
    def bilinear_ok(self):
        return bool(np.all(np.abs(self.bilinear[self.bilinear_required]) <= self.tol))

    @property
    def sesquilinear_ok(self):
        return bool(np.all(np.abs(self.sesquilinear[self.sesquilinear_required]) <= self.tol))

    @property
    def real_ok(self):
        return (not self.j3_positive_definite) or self.max_imag <= CLUSTER_TOL

    @property
    def ok(self):
        return self.bilinear_ok and self.sesquilinear_ok and self.real_ok


def orthogonality_report(spec, p=None, tol=RESIDUAL_TOL):
    """Both orthogonality relations over all eigenvector pairs of ``spec``.

    * ``[J3 x', x'']_C = 0`` whenever the eigenvalues differ;
    * ``(J3 x', x'') = 0`` whenever ``λ' != conj(λ'')`` (this includes a
      nonreal eigenvector paired with itself);
    * if ``J3[:j, :j]`` is positive definite every eigenvalue must be real.
    """
    J3 = spec.J3 if p is None else np.array(p.J3(spec.j), dtype=float)
    lams = list(spec.eigenvalues)
    vecs = spec.eigenvectors
    n = len(lams)
    B = np.zeros((n, n), dtype=complex)
    H = np.zeros((n, n), dtype=complex)
    breq = np.zeros((n, n), dtype=bool)
    hreq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for k in range(n):
            B[i, k] = bilinear_form_C(vecs[i], vecs[k], J3)
            H[i, k] = sesquilinear_form(vecs[i], vecs[k], J3)
            scale = max(1.0, abs(lams[i]), abs(lams[k]))
            breq[i, k] = i != k and abs(lams[i] - lams[k]) > CLUSTER_TOL * scale
            hreq[i, k] = abs(lams[i] - np.conj(lams[k])) > CLUSTER_TOL * scale
    pd = bool(np.all(np.linalg.eigvalsh(J3) > 0)) if J3.size else False
    max_imag = max((abs(z.imag) for z in lams), default=0.0)
    return OrthogonalityReport(lams, B, H, breq, hreq, pd, max_imag, tol)
