"""Geometric means and outer functions on the circle.

The outer function of a strictly positive density f is constructed
cepstrally: with g-hat = Fourier coefficients of log f, the analytic half
H = g-hat(0)/2 + sum_{n >= 1} g-hat(n) e_n is synthesized on the grid and
exponentiated pointwise, so that |Phi|^2 = f holds sample by sample.  The
coefficient table is then re-windowed by quadrature.  Pointwise
exponentiation is used instead of power-series exponentiation, which is
fragile near small values of f.

A density with any zero sample, or with grid average of log f below the
configured floor, is assigned geometric mean zero and the zero factor.
The grid representation cannot distinguish an integrable logarithmic
singularity from a genuine GM-zero density; callers needing such weights
must resolve the distinction themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import FourierCoeffs, GridFunction, synthesize
from .config import DEFAULT as TOL
from .errors import AliasingWindowError, InputError


def geometric_mean(f: GridFunction) -> float:
    """exp of the grid average of log f; 0 under the GM-zero convention."""
    vals = f.real_samples()
    if np.min(vals, initial=0.0) < 0:
        raise InputError("density not nonnegative")
    if np.any(vals == 0.0):
        return 0.0
    mean_log = float(np.mean(np.log(vals)))
    if mean_log < TOL.gm_log_floor:
        return 0.0
    return float(np.exp(mean_log))


@dataclass(frozen=True)
class OuterFactor:
    """An outer function: analytic coefficients, boundary samples, and GM(|phi|^2).

    For a factor built from a density f, coeffs(0) = sqrt(gm) > 0 and
    |grid|^2 reproduces f at the samples.  ``largest_dropped`` reports the
    largest coefficient magnitude discarded by the truncation window.
    """

    coeffs: FourierCoeffs
    gm: float
    grid: GridFunction
    largest_dropped: float = 0.0

    def __post_init__(self):
        if any(k[0] < 0 for k in self.coeffs.entries):
            raise InputError("outer coefficients must be supported on k >= 0")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.grid.dims

    @property
    def window(self) -> int:
        return self.coeffs.window[0]

    def is_zero(self) -> bool:
        return self.gm == 0.0

    @classmethod
    def zero(cls, dims) -> "OuterFactor":
        g = GridFunction.zero(dims)
        return cls(FourierCoeffs(1, {}, (0,)), 0.0, g)

    @classmethod
    def from_poly(cls, coeffs, dims) -> "OuterFactor":
        """The outer factor given directly as an analytic polynomial.

        The polynomial must have no zeros in the closed unit disc and a
        positive constant coefficient; its squared modulus then has
        geometric mean |c_0|^2.
        """
        c = np.asarray([complex(v) for v in coeffs])
        if c.size == 0 or c[0] == 0:
            raise InputError("polynomial needs a nonzero constant coefficient")
        if abs(c[0].imag) > TOL.real_slack * abs(c[0]) or c[0].real <= 0:
            raise InputError("constant coefficient must be real and positive")
        if c.size > 1:
            roots = np.roots(c[::-1])
            if np.any(np.abs(roots) <= 1.0 + 1e-12):
                raise InputError("polynomial has zeros in the closed unit disc; not outer")
        table = FourierCoeffs(1, {(j,): v for j, v in enumerate(c)}, (c.size - 1,))
        grid = synthesize(table, dims)
        return cls(table, float(abs(c[0]) ** 2), grid)


def outer_factor(f: GridFunction, window: int | None = None) -> OuterFactor:
    """Outer factor of a strictly positive 1-D density.

    Truncation window defaults to N/4; coefficients of smooth densities
    decay far below truncation level well before that edge.
    """
    if f.dim != 1:
        raise InputError("outer factors are 1-D; use hd_spectral_factor on tori")
    gm = geometric_mean(f)
    if gm == 0.0:
        # GM-zero density: the outer factor is the zero function.
        return OuterFactor.zero(f.dims)
    n = f.dims[0]
    if window is None:
        window = n // 4
    if not 0 <= window <= n // 2 - 1:
        raise AliasingWindowError("aliasing window")
    logf = np.log(f.real_samples())
    half = np.zeros(n)
    half[0] = 0.5
    half[1:n // 2] = 1.0
    half[n // 2] = 0.5  # Nyquist bin split evenly so Re H = (log f)/2 on the grid
    h = np.fft.ifft(np.fft.fft(logf) * half)
    phi = np.exp(h)
    spec = np.fft.fft(phi) / n
    entries = {(k,): complex(spec[k]) for k in range(window + 1)}
    dropped = np.concatenate([spec[window + 1:n // 2 + 1], spec[n // 2 + 1:]])
    largest_dropped = float(np.max(np.abs(dropped))) if dropped.size else 0.0
    table = FourierCoeffs(1, entries, (window,))
    return OuterFactor(table, gm, GridFunction(f.dims, phi), largest_dropped)


def eval_Phi(factor: OuterFactor, z: complex) -> complex:
    """Power-series evaluation of the analytic extension at |z| < 1."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise InputError("outside open disc")
    if factor.is_zero():
        return 0.0 + 0.0j
    dense = np.zeros(factor.window + 1, dtype=np.complex128)
    for k, v in factor.coeffs.entries.items():
        dense[k[0]] = v
    return complex(np.polyval(dense[::-1], z))
