"""Orthonormal polynomials on the unit circle for a positive weight.

The primary construction is Cholesky factorization of the Toeplitz moment
matrix, which exposes loss of positive definiteness directly; the
Levinson-Durbin recursion serves as a cross-check of the prediction
errors, not as the source of truth.  The prediction errors E_k are the
Toeplitz determinant ratios D_k / D_{k-1}, tying the polynomial table to
the first Szego limit theorem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circle import FourierCoeffs, GridFunction, analyze
from .detkit import levinson_ratios
from .errors import InputError, NotPositiveDefiniteError
from .outer import OuterFactor, eval_Phi, outer_factor

_N_MAX_CAP = 256  # beyond this, near-GM-zero weights are dominated by ill-conditioning


@dataclass(frozen=True)
class OnpTable:
    """Orthonormal polynomial table for a positive weight.

    Row k of ``coeff_matrix`` holds the coefficients of p_k in the basis
    {e_0, ..., e_k}; leading (diagonal) coefficients are strictly positive.
    ``errors`` holds the prediction errors E_k = D_k / D_{k-1}.
    ``moment_matrix`` is the Gram matrix [(e_j, e_k)-form] the table was
    built from, kept for exact expansions.
    """

    weight: GridFunction
    n_max: int
    coeff_matrix: np.ndarray
    errors: np.ndarray
    moment_matrix: np.ndarray

    def poly_coeffs(self, k: int) -> np.ndarray:
        """Coefficients of p_k in e_0..e_k."""
        if not 0 <= k <= self.n_max:
            raise InputError("degree out of table range")
        return self.coeff_matrix[k, :k + 1].copy()

    def eval_poly(self, k: int, z: complex) -> complex:
        """p_k(z) for any complex z (polynomial, so the whole plane is fine)."""
        c = self.poly_coeffs(k)
        return complex(np.polyval(c[::-1], complex(z)))


def onp_build(w: GridFunction, n_max: int) -> OnpTable:
    """Build orthonormal polynomials p_0..p_{n_max} for the weight w.

    The inner product is (p, q)_w = integral p conj(q) w dlambda realized by
    grid quadrature, a Hermitian form on coefficient vectors with matrix
    A_{jk} = w-hat(j - k).  Cholesky A = L L* yields coefficient vectors as
    the columns of (L*)^{-1}; the Cholesky diagonal squared gives E_k,
    which is cross-checked against the Levinson recursion.
    """
    if w.dim != 1:
        raise InputError("onp_build expects a 1-D weight")
    vals = w.real_samples("weight")
    if np.min(vals) <= 0:
        raise InputError("weight must be strictly positive")
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    if n_max > _N_MAX_CAP:
        raise InputError(f"n_max capped at {_N_MAX_CAP}")
    n = w.dims[0]
    if n_max > n // 4:
        raise InputError("n_max exceeds half the Nyquist window; enlarge the grid")
    moments = analyze(w, 2 * n_max if n_max else 1)
    wh = np.array([moments.entry(k) for k in range(n_max + 1)], dtype=np.complex128)
    # A_{jk} = w-hat(j - k): first column wh, first row conj(wh)
    A = scipy.linalg.toeplitz(wh, np.conj(wh))
    try:
        L = scipy.linalg.cholesky(A, lower=True)
    except scipy.linalg.LinAlgError as err:
        raise NotPositiveDefiniteError(
            "weight too close to GM-zero for requested degree") from err
    coeff = scipy.linalg.solve_triangular(
        L.conj().T, np.eye(n_max + 1, dtype=np.complex128)).T
    # normalize the (real) diagonal phases exactly
    errors = np.abs(np.diag(L)) ** 2
    E_lev = levinson_ratios(moments, n_max)
    if np.max(np.abs(errors - E_lev)) > 1e-8 * max(1.0, float(errors[0])):
        raise NotPositiveDefiniteError("weight too close to GM-zero for requested degree")
    return OnpTable(w, n_max, coeff, errors, A)


def _expand_vec(table: OnpTable, v: np.ndarray) -> np.ndarray:
    """ONP coefficients of the analytic polynomial with coefficient vector v."""
    if v.size > table.n_max + 1:
        raise InputError("degree overflow")
    full = np.zeros(table.n_max + 1, dtype=np.complex128)
    full[:v.size] = v
    return np.conj(table.coeff_matrix) @ (table.moment_matrix @ full)


def expand_in_onp(h: FourierCoeffs, table: OnpTable) -> np.ndarray:
    """Coefficients a_k = (h, p_k)_w of an analytic polynomial h.

    Parseval holds exactly for the quadrature form: sum |a_k|^2 = ||h||_w^2.
    """
    if h.dim != 1:
        raise InputError("expand_in_onp expects a 1-D table")
    if any(k[0] < 0 for k in h.entries):
        raise InputError("h must be analytic (supported on k >= 0)")
    deg = max((k[0] for k in h.entries), default=0)
    if deg > table.n_max:
        raise InputError("degree overflow")
    v = np.zeros(deg + 1, dtype=np.complex128)
    for k, val in h.entries.items():
        v[k[0]] = val
    return _expand_vec(table, v)


def szego_asymptotic_error(table: OnpTable, z: complex, k: int,
                           factor: OuterFactor | None = None) -> float:
    """Deviation |z^{-k} p_k(z) / conj(Phi_w(1/conj(z))) - 1| of Szego asymptotics.

    The normalized polynomials z^{-k} p_k(z) conj(Phi_w(1/conj(z)))^{-1}
    tend to 1 uniformly on |z| >= rho for every rho > 1.
    """
    z = complex(z)
    if abs(z) <= 1.0:
        raise InputError("Szego asymptotics require |z| > 1")
    if factor is None:
        factor = outer_factor(table.weight)
    denom = np.conj(eval_Phi(factor, 1.0 / np.conj(z)))
    tilde = table.eval_poly(k, z) / denom
    return float(abs(z ** (-k) * tilde - 1.0))
