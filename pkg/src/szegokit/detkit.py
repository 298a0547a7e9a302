"""Determinant kernels for Toeplitz and bordered Gram matrices.

Determinant *ratios* are never formed by dividing two huge determinants;
they are computed either by the Levinson-Durbin prediction-error recursion
(Hermitian positive definite Toeplitz moments, O(n^2)) or as the
determinant of a Schur complement over the shared base block (general
complex case, pivoted LU, O(n^3)).  Full log-determinants are available
through ``logdet_lu`` for cross-checking in overflow-safe form.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import exp

import numpy as np
import scipy.linalg

from .circle import CircleMeasure, FourierCoeffs, eval_coeffs, synthesize
from .config import DEFAULT as TOL
from .errors import (AliasingWindowError, InputError, NotPositiveDefiniteError,
                     NumericalError)


@dataclass(frozen=True)
class IndexedBasis:
    """An ordered list of coefficient tables used as determinant rows/columns."""

    functions: tuple[FourierCoeffs, ...]

    def __post_init__(self):
        fns = tuple(self.functions)
        if not fns:
            raise InputError("basis must be nonempty")
        d = fns[0].dim
        if any(f.dim != d for f in fns):
            raise InputError("basis functions must share one dimension")
        object.__setattr__(self, "functions", fns)

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, i) -> FourierCoeffs:
        return self.functions[i]

    @property
    def dim(self) -> int:
        return self.functions[0].dim

    @classmethod
    def from_exponents(cls, indices, dim: int | None = None) -> "IndexedBasis":
        """Basis of pure exponentials e_k for the listed indices."""
        indices = list(indices)
        if dim is None and indices:
            k0 = indices[0]
            dim = 1 if isinstance(k0, (int, np.integer)) else len(k0)
        return cls(tuple(FourierCoeffs.exponential(k, dim) for k in indices))


@dataclass(frozen=True)
class LogDet:
    """A determinant in overflow-safe polar form: value = exp(log_modulus) * phase."""

    log_modulus: float
    phase: complex
    singular: bool = False

    @property
    def value(self) -> complex:
        if self.singular:
            raise NumericalError("determinant is singular; no finite value")
        return exp(self.log_modulus) * self.phase

    def divide(self, other: "LogDet") -> complex:
        """The ratio of the two determinants, computed in log space."""
        if self.singular or other.singular:
            raise NumericalError("cannot form a ratio with a singular determinant")
        return exp(self.log_modulus - other.log_modulus) * self.phase / other.phase


def _monomial_exponents(basis: IndexedBasis) -> np.ndarray | None:
    """Exponent rows when every basis element is a unit-coefficient e_k."""
    rows = []
    for f in basis:
        if len(f.entries) != 1:
            return None
        (k, v), = f.entries.items()
        if v != 1.0 + 0.0j:
            return None
        rows.append(k)
    return np.asarray(rows, dtype=np.int64)


def gram_matrix(rows: IndexedBasis, cols: IndexedBasis,
                mu: CircleMeasure) -> np.ndarray:
    """Matrix of inner products entry(j, k) = (rows[j], cols[k])_mu.

    Rectangular blocks are allowed (Schur-complement use).  Pure
    exponential bases take a fast path through the cached moment table;
    the generic path synthesizes the basis on the density grid.
    """
    if rows.dim != mu.dim or cols.dim != mu.dim:
        raise InputError("basis dimension does not match the measure")
    er, ec = _monomial_exponents(rows), _monomial_exponents(cols)
    if er is not None and ec is not None:
        diff = ec[None, :, :] - er[:, None, :]  # (R, C, d); entry = mu-hat(k_col - k_row)
        out = np.zeros(diff.shape[:2], dtype=np.complex128)
        if not mu.density_is_zero:
            dims = np.asarray(mu.dims)
            if np.any(np.abs(diff) > (dims // 2 - 1)):
                raise AliasingWindowError("aliasing window")
            flat = np.ravel_multi_index(
                tuple((diff[..., i] % mu.dims[i]) for i in range(mu.dim)), mu.dims)
            out += mu._density_fft.reshape(-1)[flat]
        for pos, mass in mu.atoms:
            out += mass * np.exp(-2j * np.pi * (diff @ np.asarray(pos)))
        return out
    vr = np.stack([synthesize(f, mu.dims).samples.reshape(-1) for f in rows])
    vc = np.stack([synthesize(f, mu.dims).samples.reshape(-1) for f in cols])
    out = (vr * mu.density.samples.reshape(-1)) @ vc.conj().T / mu.density.size
    if mu.atoms:
        pts = np.array([pos for pos, _ in mu.atoms], dtype=float)
        masses = np.array([m for _, m in mu.atoms])
        pr = np.stack([eval_coeffs(f, pts) for f in rows])
        pc = np.stack([eval_coeffs(f, pts) for f in cols])
        out += (pr * masses) @ pc.conj().T
    return out


def levinson_ratios(moments: FourierCoeffs, n_max: int) -> np.ndarray:
    """Prediction errors E_0..E_{n_max} with E_n = D_n / D_{n-1} (D_{-1} = 1).

    ``moments`` must be the conjugate-symmetric table of a positive measure
    with infinite support, so that every Toeplitz section [mu-hat(k - j)] is
    Hermitian positive definite; the recursion then produces a strictly
    positive, non-increasing sequence.
    """
    if moments.dim != 1:
        raise InputError("levinson_ratios expects 1-D moments")
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    if moments.window[0] < n_max:
        raise InputError("insufficient coefficients for requested n_max")
    r = np.array([moments.entry(k) for k in range(n_max + 1)], dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(r))))
    for k in range(n_max + 1):
        if abs(moments.entry(-k) - np.conj(r[k])) > 1e-10 * scale:
            raise InputError(f"moments not conjugate-symmetric at lag {k}")
    if abs(r[0].imag) > TOL.real_slack * scale or r[0].real <= 0:
        raise NotPositiveDefiniteError("matrix not positive definite (numerical)")
    E = np.empty(n_max + 1)
    E[0] = r[0].real
    a = np.zeros(n_max + 1, dtype=np.complex128)  # a[1..m] = predictor at stage m
    for m in range(1, n_max + 1):
        acc = r[m] + np.dot(a[1:m], r[m - 1:0:-1])
        k = -acc / E[m - 1]
        if not 1.0 - abs(k) ** 2 > 0.0:
            raise NotPositiveDefiniteError("matrix not positive definite (numerical)")
        a[1:m] = a[1:m] + k * np.conj(a[1:m][::-1])
        a[m] = k
        E[m] = E[m - 1] * (1.0 - abs(k) ** 2)
        if E[m] <= 0.0:
            raise NotPositiveDefiniteError("matrix not positive definite (numerical)")
    return E


def _solve_base(A_SS: np.ndarray, rhs: np.ndarray, positive: bool) -> np.ndarray:
    if positive:
        try:
            c, low = scipy.linalg.cho_factor(A_SS)
        except scipy.linalg.LinAlgError as err:
            raise NumericalError("base block singular") from err
        d = np.abs(np.diag(c))
        # pivots at roundoff level relative to the largest signal rank deficiency
        if (np.min(d) / np.max(d)) ** 2 < TOL.base_rank_ratio:
            raise NumericalError("base block singular")
        return scipy.linalg.cho_solve((c, low), rhs)
    lu, piv = scipy.linalg.lu_factor(A_SS)
    d = np.abs(np.diag(lu))
    if np.min(d) < max(TOL.pivot_singular, TOL.base_rank_ratio * np.max(d)):
        raise NumericalError("base block singular")
    return scipy.linalg.lu_solve((lu, piv), rhs)


def bordered_ratio(border_rows: IndexedBasis, border_cols: IndexedBasis,
                   base: IndexedBasis, mu: CircleMeasure) -> complex:
    """det of the bordered Gram matrix divided by det of the base block.

    Computed as det(A_FG - A_FS A_SS^{-1} A_SG), the Schur complement of
    the base block, which equals det[(p_j, q_k)_mu] / det(base block).
    The base solve uses a Hermitian factorization for positive mu and
    pivoted LU otherwise.
    """
    if len(border_rows) != len(border_cols):
        raise InputError("border size mismatch")
    A_SS = gram_matrix(base, base, mu)
    A_FS = gram_matrix(border_rows, base, mu)
    A_SG = gram_matrix(base, border_cols, mu)
    A_FG = gram_matrix(border_rows, border_cols, mu)
    S = A_FG - A_FS @ _solve_base(A_SS, A_SG, mu.positive)
    return complex(np.linalg.det(S))


def logdet_lu(M: np.ndarray) -> LogDet:
    """Pivoted-LU log-determinant of a square complex matrix."""
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError("logdet_lu expects a square matrix")
    n = M.shape[0]
    if n == 0:
        return LogDet(0.0, 1.0 + 0.0j)
    with warnings.catch_warnings():
        # exact singularity is reported through the flag, not a warning
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M)
    diag = np.diag(lu)
    if np.min(np.abs(diag)) < TOL.pivot_singular:
        return LogDet(-np.inf, 0.0j, singular=True)
    sign = 1.0
    for i, p in enumerate(piv):
        if p != i:
            sign = -sign
    phase = complex(sign * np.prod(diag / np.abs(diag)))
    return LogDet(float(np.sum(np.log(np.abs(diag)))), phase)
