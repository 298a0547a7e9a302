"""Functions and measures on the circle and low-dimensional tori.

Everything downstream works with three representations:

* ``GridFunction``: complex samples on a uniform power-of-two grid of
  ``T^d`` (d = 1, 2, 3), the universal numerical stand-in for a function.
* ``FourierCoeffs``: a finitely supported two-sided coefficient table.
* ``CircleMeasure``: an absolutely continuous density given by a
  ``GridFunction`` plus a finite list of atoms; integrals against the
  density are uniform grid averages (spectrally accurate for smooth
  densities), atoms are summed in closed form.

Any operation that would read coefficients outside the grid's Nyquist
window raises ``AliasingWindowError`` instead of aliasing silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import DEFAULT as TOL
from .errors import AliasingWindowError, InputError

Index = tuple[int, ...]

_MAX_DIM = 3
_MIN_GRID = 8


def _as_index(k, dim: int) -> Index:
    if isinstance(k, (int, np.integer)):
        k = (int(k),)
    else:
        k = tuple(int(v) for v in k)
    if len(k) != dim:
        raise InputError(f"index {k} has length {len(k)}, expected {dim}")
    return k


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(n) for n in dims)
    if not 1 <= len(dims) <= _MAX_DIM:
        raise InputError(f"supported torus dimensions are 1..{_MAX_DIM}, got {len(dims)}")
    for n in dims:
        if n < _MIN_GRID or n & (n - 1):
            raise InputError(f"grid size {n} is not a power of two >= {_MIN_GRID}")
    return dims


def _per_axis(window, dims: Sequence[int]) -> tuple[int, ...]:
    if isinstance(window, (int, np.integer)):
        window = (int(window),) * len(dims)
    else:
        window = tuple(int(w) for w in window)
    if len(window) != len(dims):
        raise InputError("window must give one bound per axis")
    if any(w < 0 for w in window):
        raise InputError("window bounds must be nonnegative")
    return window


def grid_coords(dims: Sequence[int]) -> list[np.ndarray]:
    """Meshgrid coordinate arrays x_i = j_i / N_i for a uniform torus grid."""
    axes = [np.arange(n) / n for n in dims]
    return list(np.meshgrid(*axes, indexing="ij"))


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a function at the points (j_1/N_1, ..., j_d/N_d)."""

    dims: tuple[int, ...]
    samples: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.size == int(np.prod(dims)):
            samples = samples.reshape(dims)
        if samples.shape != dims:
            raise InputError(f"samples shape {samples.shape} does not match dims {dims}")
        if not np.all(np.isfinite(samples)):
            raise InputError("samples must be finite (no NaN/Inf)")
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "samples", samples)

    @property
    def dim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    @classmethod
    def constant(cls, dims, value=1.0) -> "GridFunction":
        dims = _check_dims(dims)
        return cls(dims, np.full(dims, complex(value)))

    @classmethod
    def zero(cls, dims) -> "GridFunction":
        return cls.constant(dims, 0.0)

    def is_zero(self) -> bool:
        return not np.any(self.samples)

    def real_samples(self, context: str = "density") -> np.ndarray:
        """Samples as a float array, failing loudly on significant imaginary parts."""
        scale = max(1.0, float(np.max(np.abs(self.samples))) if self.samples.size else 1.0)
        if np.max(np.abs(self.samples.imag)) > TOL.real_slack * scale:
            raise InputError(f"{context} not real")
        return self.samples.real.copy()


@dataclass(frozen=True)
class FourierCoeffs:
    """Finitely supported coefficient table indexed by k in Z^d.

    ``window`` bounds the support per axis: every stored index k satisfies
    |k_i| <= window_i.  When ``conj_symmetric`` is set the table asserts
    entry(-k) = conj(entry(k)), the condition for real-valued synthesis.
    """

    dim: int
    entries: dict[Index, complex]
    window: tuple[int, ...]
    conj_symmetric: bool = False

    def __post_init__(self):
        if not 1 <= self.dim <= _MAX_DIM:
            raise InputError(f"dim must be 1..{_MAX_DIM}")
        window = _per_axis(self.window, (0,) * self.dim)
        entries = {}
        for k, v in self.entries.items():
            k = _as_index(k, self.dim)
            if any(abs(k[i]) > window[i] for i in range(self.dim)):
                raise InputError(f"index {k} outside declared window {window}")
            entries[k] = complex(v)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "window", window)
        if self.conj_symmetric:
            scale = max(1.0, max((abs(v) for v in entries.values()), default=1.0))
            for k, v in entries.items():
                neg = tuple(-i for i in k)
                if abs(entries.get(neg, 0.0) - np.conj(v)) > TOL.conj_symmetry * scale:
                    raise InputError(f"conjugate symmetry violated at index {k}")

    def entry(self, k) -> complex:
        return self.entries.get(_as_index(k, self.dim), 0.0 + 0.0j)

    def __getitem__(self, k) -> complex:
        return self.entry(k)

    def support(self) -> list[Index]:
        return sorted(self.entries.keys())

    def max_abs_index(self) -> tuple[int, ...]:
        if not self.entries:
            return (0,) * self.dim
        return tuple(max(abs(k[i]) for k in self.entries) for i in range(self.dim))

    @classmethod
    def from_dict(cls, entries: Mapping, dim: int | None = None,
                  window=None, conj_symmetric: bool = False) -> "FourierCoeffs":
        keys = list(entries.keys())
        if dim is None:
            if not keys:
                raise InputError("cannot infer dim from an empty table")
            k0 = keys[0]
            dim = 1 if isinstance(k0, (int, np.integer)) else len(k0)
        norm = {_as_index(k, dim): complex(v) for k, v in entries.items()}
        if window is None:
            window = tuple(max((abs(k[i]) for k in norm), default=0) for i in range(dim))
        return cls(dim, norm, _per_axis(window, (0,) * dim), conj_symmetric)

    @classmethod
    def exponential(cls, k, dim: int | None = None) -> "FourierCoeffs":
        """The single mode e_k."""
        if dim is None:
            dim = 1 if isinstance(k, (int, np.integer)) else len(k)
        k = _as_index(k, dim)
        return cls(dim, {k: 1.0 + 0.0j}, tuple(abs(i) for i in k))


def _nyquist_ok(idx_bounds: Sequence[int], dims: Sequence[int]) -> bool:
    return all(b <= n // 2 - 1 for b, n in zip(idx_bounds, dims))


def analyze(g: GridFunction, window) -> FourierCoeffs:
    """Fourier coefficients of a sampled function by grid quadrature.

    entry(k) = (1 / prod N_i) * sum_x g(x) conj(e_k(x)), which is exact for
    trigonometric polynomials whose spectrum lies inside the Nyquist window.
    """
    window = _per_axis(window, g.dims)
    if not _nyquist_ok(window, g.dims):
        raise AliasingWindowError("aliasing window")
    fft = np.fft.fftn(g.samples) / g.size
    entries: dict[Index, complex] = {}
    ranges = [range(-w, w + 1) for w in window]
    for k in np.ndindex(*[2 * w + 1 for w in window]):
        idx = tuple(ranges[i][k[i]] for i in range(g.dim))
        entries[idx] = complex(fft[tuple(idx[i] % g.dims[i] for i in range(g.dim))])
    scale = max(1.0, float(np.max(np.abs(g.samples))))
    is_real = float(np.max(np.abs(g.samples.imag))) <= TOL.real_slack * scale
    return FourierCoeffs(g.dim, entries, window, conj_symmetric=is_real)


def synthesize(c: FourierCoeffs, dims) -> GridFunction:
    """Evaluate a coefficient table on a grid; inverse of ``analyze``."""
    dims = _check_dims(dims)
    if len(dims) != c.dim:
        raise InputError(f"table dim {c.dim} does not match grid dim {len(dims)}")
    if not _nyquist_ok(c.max_abs_index(), dims):
        raise AliasingWindowError("aliasing window")
    spec = np.zeros(dims, dtype=np.complex128)
    for k, v in c.entries.items():
        spec[tuple(k[i] % dims[i] for i in range(c.dim))] = v
    vals = np.fft.ifftn(spec) * int(np.prod(dims))
    return GridFunction(dims, vals)


def eval_coeffs(c: FourierCoeffs, points: np.ndarray) -> np.ndarray:
    """Evaluate sum_k c(k) e^{2 pi i k.t} at arbitrary points (rows of ``points``)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != c.dim:
        raise InputError("points have wrong dimension")
    out = np.zeros(pts.shape[0], dtype=np.complex128)
    for k, v in c.entries.items():
        out += v * np.exp(2j * np.pi * (pts @ np.asarray(k, dtype=float)))
    return out


@dataclass(frozen=True)
class CircleMeasure:
    """A measure dmu = f dlambda + sum_j c_j delta_{t_j} on T^d.

    The density may be identically zero (purely atomic measure).  With the
    ``positive`` flag set, the density samples must be real and nonnegative
    and the atom masses real and nonnegative.
    """

    density: GridFunction
    atoms: tuple[tuple[tuple[float, ...], complex], ...] = ()
    positive: bool = True

    def __post_init__(self):
        atoms = []
        for pos, mass in self.atoms:
            if isinstance(pos, (int, float)):
                pos = (float(pos),)
            pos = tuple(float(p) % 1.0 for p in pos)
            if len(pos) != self.density.dim:
                raise InputError("atom position has wrong dimension")
            atoms.append((pos, complex(mass)))
        if len({p for p, _ in atoms}) != len(atoms):
            raise InputError("atom positions must be pairwise distinct")
        object.__setattr__(self, "atoms", tuple(atoms))
        if self.positive:
            vals = self.density.real_samples()
            if np.min(vals, initial=0.0) < 0:
                raise InputError("positivity flag violated: density has negative samples")
            for _, mass in self.atoms:
                if abs(mass.imag) > TOL.real_slack * max(1.0, abs(mass)) or mass.real < 0:
                    raise InputError("positivity flag violated: atom mass not real nonnegative")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.density.dims

    @property
    def dim(self) -> int:
        return self.density.dim

    @cached_property
    def _density_fft(self) -> np.ndarray:
        return np.fft.fftn(self.density.samples) / self.density.size

    @cached_property
    def density_is_zero(self) -> bool:
        return self.density.is_zero()

    @classmethod
    def lebesgue(cls, dims) -> "CircleMeasure":
        return cls(GridFunction.constant(dims, 1.0))

    @classmethod
    def from_density(cls, density: GridFunction, atoms=()) -> "CircleMeasure":
        """Build a measure, inferring the positivity flag from the data."""
        scale = max(1.0, float(np.max(np.abs(density.samples))))
        pos = (np.max(np.abs(density.samples.imag)) <= TOL.real_slack * scale
               and np.min(density.samples.real) >= 0)
        for _, mass in atoms:
            m = complex(mass)
            pos = pos and abs(m.imag) <= TOL.real_slack * max(1.0, abs(m)) and m.real >= 0
        return cls(density, tuple(atoms), positive=bool(pos))

    def with_atom(self, position, mass) -> "CircleMeasure":
        pos = (float(position),) if isinstance(position, (int, float)) else tuple(position)
        return CircleMeasure.from_density(self.density, self.atoms + ((pos, complex(mass)),))


def moment(mu: CircleMeasure, k) -> complex:
    """mu-hat(k) = integral of e^{-2 pi i k.t} dmu(t)."""
    k = _as_index(k, mu.dim)
    out = 0.0 + 0.0j
    if not mu.density_is_zero:
        if not _nyquist_ok([abs(i) for i in k], mu.dims):
            raise AliasingWindowError("aliasing window")
        out += complex(mu._density_fft[tuple(k[i] % mu.dims[i] for i in range(mu.dim))])
    for pos, mass in mu.atoms:
        out += mass * np.exp(-2j * np.pi * float(np.dot(k, pos)))
    return out


def moments_table(mu: CircleMeasure, n: int) -> FourierCoeffs:
    """The table mu-hat(-n..n) for a 1-D measure (input to Levinson et al.)."""
    if mu.dim != 1:
        raise InputError("moments_table is one-dimensional; use moment() directly on tori")
    entries = {(k,): moment(mu, k) for k in range(-n, n + 1)}
    return FourierCoeffs(1, entries, (n,), conj_symmetric=mu.positive)


def inner_product_mu(p: FourierCoeffs, q: FourierCoeffs, mu: CircleMeasure) -> complex:
    """(p, q)_mu = integral of p conj(q) dmu.

    Sesquilinear: linear in p, conjugate-linear in q; conjugate-symmetric
    whenever mu is positive.
    """
    if p.dim != mu.dim or q.dim != mu.dim:
        raise InputError("operand dimensions do not match the measure")
    out = 0.0 + 0.0j
    if not mu.density_is_zero:
        vp = synthesize(p, mu.dims).samples
        vq = synthesize(q, mu.dims).samples
        out += complex(np.sum(vp * np.conj(vq) * mu.density.samples) / mu.density.size)
    if mu.atoms:
        pts = np.array([pos for pos, _ in mu.atoms], dtype=float)
        masses = np.array([m for _, m in mu.atoms])
        out += complex(np.sum(masses * eval_coeffs(p, pts) * np.conj(eval_coeffs(q, pts))))
    return out


# ---------------------------------------------------------------------------
# JSON measure format
#
#   { "dims": [N, ...],
#     "density": {"preset": name, "params": {...}} | {"samples": [[re,im],...]},
#     "atoms": [{"t": [..], "mass": [re, im]}] }
#
# Presets: const, cos_offset (a + b cos 2 pi t), poly_mod2 (|P(e_1)|^2 for a
# coefficient list), product (tensor product of 1-D presets), indicator
# (c * 1_{[alpha,beta)} applied to one coordinate).
# ---------------------------------------------------------------------------

def _parse_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InputError(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def _poly_mod2_samples(coeffs: Iterable, n: int) -> np.ndarray:
    c = [_parse_complex(v) for v in coeffs]
    if not c:
        raise InputError("poly_mod2 needs a nonempty coefficient list")
    z = np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.zeros(n, dtype=np.complex128)
    for j, cj in enumerate(c):
        vals += cj * z ** j
    return np.abs(vals) ** 2


def preset_density(name: str, dims, params: Mapping | None = None) -> GridFunction:
    """Build one of the named density presets on the given grid."""
    dims = _check_dims(dims)
    params = dict(params or {})
    if name == "const":
        return GridFunction.constant(dims, _parse_complex(params.get("c", 1.0)))
    if name == "cos_offset":
        if len(dims) != 1:
            raise InputError("cos_offset is a 1-D preset; wrap it in product for tori")
        a = float(params.get("a", 2.0))
        b = float(params.get("b", 1.0))
        t = np.arange(dims[0]) / dims[0]
        return GridFunction(dims, a + b * np.cos(2 * np.pi * t))
    if name == "poly_mod2":
        if len(dims) != 1:
            raise InputError("poly_mod2 is a 1-D preset; wrap it in product for tori")
        return GridFunction(dims, _poly_mod2_samples(params["coeffs"], dims[0]))
    if name == "product":
        factors = params.get("factors")
        if not factors or len(factors) != len(dims):
            raise InputError("product preset needs one 1-D factor per axis")
        grids = []
        for spec, n in zip(factors, dims):
            g = preset_density(spec["preset"], (n,), spec.get("params"))
            grids.append(g.samples)
        vals = grids[0]
        for g in grids[1:]:
            vals = np.multiply.outer(vals, g)
        return GridFunction(dims, vals)
    if name == "indicator":
        c = _parse_complex(params.get("c", 1.0))
        alpha = float(params.get("alpha", 0.0))
        beta = float(params.get("beta", 0.5))
        axis = int(params.get("axis", 0))
        if not 0 <= axis < len(dims):
            raise InputError(f"indicator axis {axis} out of range for dims {dims}")
        if not 0.0 <= alpha < beta <= 1.0:
            raise InputError("indicator needs 0 <= alpha < beta <= 1")
        x = np.arange(dims[axis]) / dims[axis]
        line = np.where((x >= alpha) & (x < beta), c, 0.0)
        shape = [1] * len(dims)
        shape[axis] = dims[axis]
        vals = np.broadcast_to(line.reshape(shape), dims).copy()
        return GridFunction(dims, vals)
    raise InputError(f"unknown density preset {name!r}")


def measure_from_json(obj: Mapping) -> CircleMeasure:
    """Parse the JSON measure format into a ``CircleMeasure``."""
    if "dims" not in obj:
        raise InputError("measure JSON missing field 'dims'")
    dims = _check_dims(obj["dims"])
    dspec = obj.get("density")
    if dspec is None:
        density = GridFunction.zero(dims)
    elif "preset" in dspec:
        density = preset_density(dspec["preset"], dims, dspec.get("params"))
    elif "samples" in dspec:
        vals = np.array([_parse_complex(v) for v in dspec["samples"]])
        if vals.size != int(np.prod(dims)):
            raise InputError("density samples length does not match dims")
        density = GridFunction(dims, vals.reshape(dims))
    else:
        raise InputError("density must give either 'preset' or 'samples'")
    atoms = []
    for a in obj.get("atoms", ()):
        t = a["t"]
        if isinstance(t, (int, float)):
            t = [t]
        atoms.append((tuple(float(x) for x in t), _parse_complex(a["mass"])))
    return CircleMeasure.from_density(density, atoms)


def load_measure(path) -> CircleMeasure:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_json(json.load(fh))
