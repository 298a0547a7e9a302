"""Subspace angles and oblique projections in finite dimensions.

epsilon(H1, K1) = inf over unit x in H1 of sup over unit y in K1 of
|(x, y)|, the quantity controlling when the projection onto the
orthocomplement of K1 along H1 exists with bounded norm.  The two
inequalities of ``check_proj_bounds`` relate epsilon and the operator
norm of that projection in both directions; they hold for every valid
pair, so any observed failure (beyond the configured slack) is a bug.

Subspaces here are coordinate subspaces of a discretized function space;
the infinite-dimensional statements are exercised through stabilized
finite sections built with ``poly_shift_subspace``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
import scipy.linalg

from .config import DEFAULT as TOL
from .errors import InputError, NumericalError


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^m given by linearly independent basis columns."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim == 1:
            b = b[:, None]
        if b.ndim != 2 or b.shape[1] == 0 or b.shape[0] < b.shape[1]:
            raise InputError("degenerate basis")
        norms = np.linalg.norm(b, axis=0)
        if np.min(norms) == 0:
            raise InputError("degenerate basis")
        if np.min(np.linalg.svd(b / norms, compute_uv=False)) <= TOL.basis_independence:
            raise InputError("degenerate basis")
        b = b.copy()
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)

    @property
    def ambient(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def from_vectors(cls, vectors) -> "Subspace":
        return cls(np.stack([np.asarray(v) for v in vectors], axis=1))


def orthonormal_basis(sub: Subspace) -> np.ndarray:
    """Orthonormal columns via Gram-matrix Cholesky with one reorthogonalization."""
    q = sub.basis / np.linalg.norm(sub.basis, axis=0)
    for _ in range(2):
        g = q.conj().T @ q
        try:
            L = scipy.linalg.cholesky(g, lower=True)
        except scipy.linalg.LinAlgError as err:
            raise InputError("degenerate basis") from err
        # solve Q L* = B, i.e. conj(L) Q^T = B^T with conj(L) lower triangular
        q = scipy.linalg.solve_triangular(np.conj(L), q.T, lower=True).T
    return q


def epsilon_angle(H1: Subspace, K1: Subspace) -> float:
    """inf-sup angle quantity between two subspaces, in [0, 1].

    With orthonormal bases Q_H, Q_K this is the smallest singular value of
    the cross-Gram Q_K* Q_H when dim H1 <= dim K1, and 0 otherwise.
    """
    if H1.ambient != K1.ambient:
        raise InputError("subspaces live in different ambient spaces")
    if H1.dim > K1.dim:
        return 0.0
    qh, qk = orthonormal_basis(H1), orthonormal_basis(K1)
    s = np.linalg.svd(qk.conj().T @ qh, compute_uv=False)
    return float(np.clip(np.min(s), 0.0, 1.0))


def projection_matrix(H1: Subspace, K1: Subspace) -> np.ndarray:
    """Matrix of the projection onto the orthocomplement of K1 along H1.

    Defined when H1 and the orthocomplement of K1 are complementary, which
    in finite dimensions forces dim H1 = dim K1 and an invertible mixed
    Gram block.
    """
    if H1.ambient != K1.ambient:
        raise InputError("subspaces live in different ambient spaces")
    if H1.dim != K1.dim:
        raise NumericalError("oblique projection undefined (H1 meets the orthocomplement of K1)")
    bh = H1.basis
    qk = orthonormal_basis(K1)
    mixed = qk.conj().T @ bh
    finite_cond = np.linalg.cond(mixed) < 1.0 / TOL.basis_independence
    if not finite_cond:
        raise NumericalError("oblique projection undefined (H1 meets the orthocomplement of K1)")
    m = H1.ambient
    return np.eye(m, dtype=np.complex128) - bh @ np.linalg.solve(mixed, qk.conj().T)


def oblique_projection(H1: Subspace, K1: Subspace, v: np.ndarray) -> np.ndarray:
    """T v where T projects onto the orthocomplement of K1 along H1.

    The output w satisfies w perp K1 and v - w in H1.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (H1.ambient,):
        raise InputError("vector has wrong ambient dimension")
    return projection_matrix(H1, K1) @ v


@dataclass(frozen=True)
class ProjectionBounds:
    epsilon: float
    opnorm: float
    bddT_rhs: float
    bddepsi_rhs: float
    passed: bool


def bound_opnorm_from_epsilon(epsilon: float) -> float:
    """Upper bound 1/2 + sqrt(1 / (2 (1 - sqrt(1 - eps^2))) + 1/4) on the projection norm."""
    if not 0.0 < epsilon <= 1.0:
        return float("inf")
    return 0.5 + sqrt(1.0 / (2.0 * (1.0 - sqrt(max(0.0, 1.0 - epsilon ** 2)))) + 0.25)


def bound_epsilon_from_opnorm(opnorm: float) -> float:
    """Lower bound 1 / sqrt(1 + ||T||^2) on the angle quantity."""
    return 1.0 / sqrt(1.0 + opnorm ** 2)


def check_proj_bounds(H1: Subspace, K1: Subspace) -> ProjectionBounds:
    """Evaluate both projection-norm inequalities for a subspace pair."""
    eps = epsilon_angle(H1, K1)
    T = projection_matrix(H1, K1)
    opnorm = float(np.linalg.norm(T, 2))
    rhs_T = bound_opnorm_from_epsilon(eps)
    rhs_eps = bound_epsilon_from_opnorm(opnorm)
    passed = (opnorm <= rhs_T + TOL.projection_slack
              and eps >= rhs_eps - TOL.projection_slack)
    return ProjectionBounds(eps, opnorm, rhs_T, rhs_eps, passed)


def poly_shift_subspace(coeffs, n: int, ambient: int) -> Subspace:
    """The subspace e_1 * phi * Poly_n in coordinates e_0..e_{ambient-1}.

    ``coeffs`` are the analytic coefficients of phi; column j holds the
    coefficient vector of e_1 * phi * e_j.
    """
    c = np.asarray([complex(v) for v in coeffs])
    if c.size == 0 or not np.any(c):
        raise InputError("phi must be a nonzero polynomial")
    deg = c.size - 1
    if 1 + n + deg >= ambient:
        raise InputError("ambient dimension too small for the shifted subspace")
    basis = np.zeros((ambient, n + 1), dtype=np.complex128)
    for j in range(n + 1):
        basis[1 + j:1 + j + deg + 1, j] = c
    return Subspace(basis)
