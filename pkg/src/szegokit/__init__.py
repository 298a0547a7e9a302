"""szegokit: Szego-type limit theorems for Toeplitz and bordered Gram determinants.

A numpy/scipy library for the numerics around the first Szego limit
theorem and its bordered, complex-measure, and higher-dimensional
extensions: grid Fourier analysis of measures on T and T^d, determinant
kernels (Levinson-Durbin ratios, Schur-complement bordered ratios,
pivoted-LU log-determinants), outer functions and geometric means,
closed-form limit minors, subspace-angle diagnostics for oblique
projections, orthonormal polynomials on the unit circle, and
Helson-Lowdenslager spectral factors under half-space orders.
"""

from .circle import (CircleMeasure, FourierCoeffs, GridFunction, analyze,
                     eval_coeffs, grid_coords, inner_product_mu, load_measure,
                     measure_from_json, moment, moments_table, preset_density,
                     synthesize)
from .config import DEFAULT as TOLERANCES
from .config import Tolerances
from .detkit import (IndexedBasis, LogDet, bordered_ratio, gram_matrix,
                     levinson_ratios, logdet_lu)
from .errors import (AliasingWindowError, InputError, NotPositiveDefiniteError,
                     NumericalError, SzegoKitError, UnsupportedCaseError)
from .angles import (ProjectionBounds, Subspace, bound_epsilon_from_opnorm,
                     bound_opnorm_from_epsilon, check_proj_bounds,
                     epsilon_angle, oblique_projection, orthonormal_basis,
                     poly_shift_subspace, projection_matrix)
from .halfspace import (HalfSpaceOrder, SpectralFactor, check_halfspace_axioms,
                        hd_bordered_ratio, hd_limit_matrix, hd_project_HL2,
                        hd_sn_sets, hd_spectral_factor, order_from_json,
                        order_membership)
from .minors import (BorderedSpec, LimitMinor, epsilon_poly_condition,
                     genfn_check, limit_matrix, project_H2, twform_entry)
from .opuc import OnpTable, expand_in_onp, onp_build, szego_asymptotic_error
from .outer import OuterFactor, eval_Phi, geometric_mean, outer_factor

__version__ = "0.1.0"

__all__ = [
    "AliasingWindowError", "BorderedSpec", "CircleMeasure", "FourierCoeffs",
    "GridFunction", "HalfSpaceOrder", "IndexedBasis", "InputError",
    "LimitMinor", "LogDet", "NotPositiveDefiniteError", "NumericalError",
    "OnpTable", "OuterFactor", "ProjectionBounds", "SpectralFactor",
    "Subspace", "SzegoKitError", "Tolerances", "TOLERANCES",
    "UnsupportedCaseError", "analyze", "bordered_ratio",
    "bound_epsilon_from_opnorm", "bound_opnorm_from_epsilon",
    "check_halfspace_axioms", "check_proj_bounds", "epsilon_angle",
    "epsilon_poly_condition", "eval_Phi", "eval_coeffs", "expand_in_onp",
    "genfn_check", "geometric_mean", "gram_matrix", "grid_coords",
    "hd_bordered_ratio", "hd_limit_matrix", "hd_project_HL2", "hd_sn_sets",
    "hd_spectral_factor", "inner_product_mu", "levinson_ratios",
    "limit_matrix", "load_measure", "logdet_lu", "measure_from_json",
    "moment", "moments_table", "oblique_projection", "onp_build",
    "order_from_json", "order_membership", "orthonormal_basis",
    "outer_factor", "poly_shift_subspace", "preset_density", "project_H2",
    "projection_matrix", "synthesize", "szego_asymptotic_error",
    "twform_entry",
]
