"""Centralized numerical tolerances.

Every hard-coded threshold used by the library lives in this one record so
that the cutoffs can be audited (and, in tests, referenced) in a single place.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # pivot magnitude below which an LU factor is declared singular
    pivot_singular: float = 1e-300
    # relative pivot-ratio floor for base-block factorizations
    base_rank_ratio: float = 1e-12
    # conjugate-symmetry check on Fourier tables
    conj_symmetry: float = 1e-12
    # imaginary / negativity slack when validating "real, nonnegative" samples
    real_slack: float = 1e-12
    # grid average of log f below this is treated as geometric mean zero
    gm_log_floor: float = -700.0
    # spectral leakage allowed at forbidden indices of a spectral factor
    factor_leak: float = 1e-10
    # smallest singular value for a basis to count as independent
    basis_independence: float = 1e-10
    # slack granted when checking the projection-norm inequalities
    projection_slack: float = 1e-9


DEFAULT = Tolerances()
