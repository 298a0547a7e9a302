"""Limiting bordered minors on the circle.

The bordered Szego limit replaces the determinant ratio's limit GM(f) by
det of the (r+1) x (r+1) matrix with entries

    integral of F_j conj(G_k) dlambda,
    F_j = P_{H2}(f_j conj(phi)),  G_k = P_{H2}(g_k conj(psi)),

where phi = psi = the outer factor of f in the positive case, and a pair
of outer functions with mu = psi conj(phi) lambda in the complex case.
Projections are computed spectrally: multiply on the grid, transform,
keep the nonnegative modes.

For exponential borders f_j = e_j, g_k = e_k the entries collapse to the
triangular coefficient sum ``twform_entry``; a bivariate generating
function identity over the open bidisc checks the whole entry table at
once (``genfn_check``).  ``epsilon_poly_condition`` estimates the head-mass
lower bound that the complex-case theorem requires of the pair (phi, psi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import FourierCoeffs, GridFunction, analyze, synthesize
from .errors import InputError
from .opuc import OnpTable, _expand_vec, onp_build
from .outer import OuterFactor, eval_Phi


@dataclass(frozen=True)
class BorderedSpec:
    """Ordered border functions f_0..f_r and g_0..g_r as coefficient tables."""

    f_list: tuple[FourierCoeffs, ...]
    g_list: tuple[FourierCoeffs, ...]

    def __post_init__(self):
        f, g = tuple(self.f_list), tuple(self.g_list)
        if len(f) != len(g):
            raise InputError("border size mismatch")
        if not f:
            raise InputError("border must be nonempty")
        d = f[0].dim
        if any(t.dim != d for t in f + g):
            raise InputError("border functions must share one dimension")
        object.__setattr__(self, "f_list", f)
        object.__setattr__(self, "g_list", g)

    def __len__(self) -> int:
        return len(self.f_list)

    @property
    def dim(self) -> int:
        return self.f_list[0].dim

    @classmethod
    def from_exponents(cls, f_indices, g_indices=None, dim: int | None = None) -> "BorderedSpec":
        if g_indices is None:
            g_indices = f_indices
        f = tuple(FourierCoeffs.exponential(k, dim) for k in f_indices)
        g = tuple(FourierCoeffs.exponential(k, dim) for k in g_indices)
        return cls(f, g)


@dataclass(frozen=True)
class LimitMinor:
    """A limiting matrix, its determinant, and the border it came from."""

    matrix: np.ndarray
    value: complex
    border: BorderedSpec


def project_H2(g: GridFunction, window: int) -> FourierCoeffs:
    """Orthogonal projection onto the Hardy space: keep coefficients k >= 0."""
    c = analyze(g, window)
    kept = {k: v for k, v in c.entries.items() if k[0] >= 0}
    return FourierCoeffs(c.dim, kept, c.window)


def _projected_row(f: FourierCoeffs, conj_factor_grid: np.ndarray,
                   dims: tuple[int, ...]) -> np.ndarray:
    """Nonnegative-mode coefficients of f * conj(factor) as a dense vector."""
    vals = synthesize(f, dims).samples * conj_factor_grid
    spec = np.fft.fft(vals) / dims[0]
    return spec[:dims[0] // 2]


def limit_matrix(spec: BorderedSpec, phi: OuterFactor,
                 psi: OuterFactor | None = None) -> LimitMinor:
    """The limiting bordered minor for the given border and factor pair.

    Omitting psi gives the positive case phi = psi.  A zero factor (GM-zero
    density in the positive case) short-circuits to the zero matrix and
    value 0.
    """
    if psi is None:
        psi = phi
    r1 = len(spec)
    if phi.is_zero() or psi.is_zero():
        return LimitMinor(np.zeros((r1, r1), dtype=np.complex128), 0.0 + 0.0j, spec)
    if phi.dims != psi.dims:
        raise InputError("factor grids must match")
    dims = phi.dims
    F = np.stack([_projected_row(f, np.conj(phi.grid.samples), dims) for f in spec.f_list])
    G = np.stack([_projected_row(g, np.conj(psi.grid.samples), dims) for g in spec.g_list])
    M = F @ G.conj().T
    return LimitMinor(M, complex(np.linalg.det(M)), spec)


def twform_entry(phi: OuterFactor, j: int, k: int) -> complex:
    """Limiting matrix entry for the exponential border {e_j} x {e_k}.

    Equals sum_{l=0}^{min(j,k)} conj(phi-hat(j-l)) phi-hat(k-l), the closed
    form of the projected inner product integral F_j conj(G_k) dlambda.
    """
    if j < 0 or k < 0:
        raise InputError("twform_entry needs j, k >= 0")
    if phi.is_zero():
        return 0.0 + 0.0j
    if max(j, k) > phi.window:
        raise InputError("insufficient coefficients")
    c = phi.coeffs
    return complex(sum(np.conj(c.entry(j - l)) * c.entry(k - l)
                       for l in range(min(j, k) + 1)))


def genfn_check(phi: OuterFactor, z: complex, zeta: complex,
                truncation: int = 64) -> tuple[complex, complex]:
    """Both sides of the generating-function identity for the entry table.

    lhs = truncated double sum of z^j conj(zeta)^k * entry(j, k);
    rhs = Phi(z) conj(Phi(zeta)) / (1 - conj(zeta) z).
    The radii cap keeps the truncation tail below the advertised 1e-6.
    """
    z, zeta = complex(z), complex(zeta)
    if abs(z) > 0.8 + 1e-12 or abs(zeta) > 0.8 + 1e-12:
        raise InputError("radii too large for requested tolerance")
    if truncation > phi.window:
        raise InputError("insufficient coefficients")
    J = truncation
    c = np.zeros(J + 1, dtype=np.complex128)
    for idx, v in phi.coeffs.entries.items():
        if idx[0] <= J:
            c[idx[0]] = v
    # entry(j, k) = sum_l conj(c[j-l]) c[k-l] = (C C*)_{jk} with C lower-triangular shifts
    C = np.zeros((J + 1, J + 1), dtype=np.complex128)
    for j in range(J + 1):
        C[j, :j + 1] = np.conj(c[j::-1])
    E = C @ C.conj().T
    zp = z ** np.arange(J + 1)
    wp = np.conj(zeta) ** np.arange(J + 1)
    lhs = complex(zp @ E @ wp)  # sum_j sum_k z^j E[j,k] conj(zeta)^k
    rhs = eval_Phi(phi, z) * np.conj(eval_Phi(phi, zeta)) / (1.0 - np.conj(zeta) * z)
    return lhs, complex(rhs)


def _ray_candidates(sigma_vec: np.ndarray, n: int) -> list[np.ndarray]:
    """Deterministic near-extremal candidates aimed along the zeros of sigma.

    For a zero z0 of sigma, S with coefficients proportional to z0^{-j}
    telescopes sigma * S down to two terms, exposing the head-mass decay
    when z0 lies inside the closed disc.  Scale-invariant forms are used
    to avoid overflow.
    """
    out = []
    if sigma_vec.size < 2:
        return out
    for z0 in np.roots(sigma_vec[::-1]):
        if z0 == 0:
            continue
        j = np.arange(n + 1)
        if abs(z0) >= 1.0:
            out.append(z0 ** (-j.astype(float)))
        else:
            out.append(z0 ** (n - j).astype(float))
    return out


def epsilon_poly_condition(sigma: FourierCoeffs, w: GridFunction, n: int,
                           trials: int, seed: int = 0,
                           table: OnpTable | None = None) -> float:
    """Sampled lower-bound estimate for the head-mass condition at degree n.

    Expands sigma * S in the orthonormal polynomials of w for sampled S of
    degree <= n (coordinate vectors, seeded random draws, and zero-directed
    rays) and returns the minimum of (mass in degrees <= n) / (total mass).
    A positive limit in n is what the complex-case theorem requires; the
    returned number is an estimate, never a certified bound.
    """
    if sigma.dim != 1:
        raise InputError("sigma must be 1-D")
    if any(k[0] < 0 for k in sigma.entries):
        raise InputError("sigma must be an analytic polynomial")
    deg = max((k[0] for k in sigma.entries if sigma.entries[k] != 0), default=-1)
    if deg < 0:
        raise InputError("sigma must be nonzero")
    sig = np.zeros(deg + 1, dtype=np.complex128)
    for k, v in sigma.entries.items():
        if k[0] <= deg:
            sig[k[0]] = v
    if table is None:
        table = onp_build(w, n + deg)
    elif table.n_max < n + deg:
        raise InputError("table degree too small for sigma * S")
    candidates: list[np.ndarray] = [np.eye(n + 1, dtype=np.complex128)[m] for m in range(n + 1)]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        candidates.append(rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1))
    candidates.extend(_ray_candidates(sig, n))
    best = 1.0
    for s in candidates:
        h = np.convolve(sig, s)
        a = _expand_vec(table, h)
        total = float(np.sum(np.abs(a) ** 2))
        if total == 0.0:
            continue
        head = float(np.sum(np.abs(a[:n + 1]) ** 2))
        best = min(best, head / total)
    return best
