"""Exact arithmetic toolkit for Jacobi-type pencils and their associated polynomials."""

__version__ = "0.1.0"

from .errors import PencilLabError
from .exactcore import Poly, PolyMatrix, Rat, X, det_exact, polymat_det, rat, roots_float, solve_linear_exact
from .pencil import (
    PencilData,
    associated_polynomials,
    christoffel_darboux,
    degenerate_from_jacobi,
    jacobi_polynomials,
    recurrence_residual,
    shifted_pencil,
    shifted_solutions,
    validate_pencil,
)
from .spectral import MomentTable, SolutionQuad, basic_solutions, detrep_check, independence_check, moment_table, second_kind
from .truncated import char_poly, factorization_check, orthogonality_report, pencil_eigs
from .perturb import (
    DiscreteMeasure,
    JacobiMatrixMeasure,
    JacobiWeight,
    PerturbationParams,
    p_from_r,
    parse_measure,
    perturbation_moment_table,
    perturbation_pencil,
    r_from_p,
)
from .odecheck import OdeCoeffs, perturbed_jacobi, solve_polynomial_eigen, perturbed_jacobi_ode_coeffs, verify_ode
from .bandcheck import assemble_block, band_fit, sieve, symmetry_defect
