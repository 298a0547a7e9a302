"""Half-space orders on Z^d, spectral factors, and torus determinant limits.

A half-space set S partitions Z^d \\ {0} into S and -S with S + S inside S,
inducing a group ordering.  Two kinds are supported:

* ``lex``: first nonzero coordinate decides the sign (non-archimedean for
  d >= 2);
* ``form``: sign of k . x for a direction x, archimedean when two
  coordinates of x have irrational ratio.  Irrationality cannot be
  certified in floating point; directions are screened only for exact
  integer relations on a small window.

Spectral factors generalize outer functions: phi has spectrum in
S union {0}, phi-hat(0) = sqrt(GM(w)) > 0, and |phi|^2 = w.  The
construction mirrors the 1-D cepstral one with the analytic half replaced
by the S-half of the log spectrum.

GM-zero weights are order-sensitive by design: for archimedean orders the
determinant-ratio limit is 0; for the lexicographic order it is not
determined by the projected-factor formula (a weight depending on one
coordinate only gives ratio w-hat(0) at every finite stage), so
``hd_limit_matrix`` refuses rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circle import FourierCoeffs, GridFunction, analyze, synthesize, _as_index
from .config import DEFAULT as TOL
from .detkit import CircleMeasure, IndexedBasis, bordered_ratio
from .errors import AliasingWindowError, InputError, NumericalError, UnsupportedCaseError
from .minors import BorderedSpec, LimitMinor
from .outer import geometric_mean

_SCREEN_WINDOW = 8


@dataclass(frozen=True)
class HalfSpaceOrder:
    """A half-space ordering of Z^d (lexicographic or linear-form)."""

    dim: int
    kind: str
    direction: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "form"):
            raise InputError("order kind must be 'lex' or 'form'")
        if not 1 <= self.dim <= 3:
            raise InputError("supported dimensions are 1..3")
        if self.kind == "form":
            if self.direction is None or len(self.direction) != self.dim:
                raise InputError("linear-form order needs a direction of length dim")
            x = tuple(float(v) for v in self.direction)
            object.__setattr__(self, "direction", x)
            for k in itertools.product(range(-_SCREEN_WINDOW, _SCREEN_WINDOW + 1),
                                       repeat=self.dim):
                if any(k) and float(np.dot(k, x)) == 0.0:
                    raise InputError(f"direction {x} vanishes on lattice vector {k}")
        elif self.direction is not None:
            raise InputError("lexicographic order takes no direction")

    def membership(self, k) -> int:
        """+1 if k in S, -1 if k in -S, 0 if k = 0."""
        k = _as_index(k, self.dim)
        if not any(k):
            return 0
        if self.kind == "lex":
            for v in k:
                if v:
                    return 1 if v > 0 else -1
        dot = float(np.dot(k, self.direction))
        return 1 if dot > 0 else -1

    def in_S(self, k) -> bool:
        return self.membership(k) > 0

    @property
    def archimedean(self) -> bool:
        """Whether the GM-zero limit-0 statement applies to this order."""
        return self.kind == "form" or self.dim == 1

    def to_json(self) -> dict:
        if self.kind == "form":
            return {"kind": "form", "direction": list(self.direction)}
        return {"kind": "lex"}


def order_from_json(obj: Mapping, dim: int | None = None) -> HalfSpaceOrder:
    """Parse { "kind": "lex" | "form", "direction": [...]? }."""
    kind = obj.get("kind")
    if kind == "form":
        direction = obj.get("direction")
        if direction is None:
            raise InputError("form order JSON needs a direction")
        return HalfSpaceOrder(len(direction), "form", tuple(float(v) for v in direction))
    if kind == "lex":
        if dim is None:
            raise InputError("lex order JSON needs the dimension from context")
        return HalfSpaceOrder(dim, "lex")
    raise InputError(f"unknown order kind {kind!r}")


def order_membership(order: HalfSpaceOrder, k) -> str:
    """Trichotomy of an index under the order: positive, negative, or zero."""
    m = order.membership(k)
    return "positive" if m > 0 else ("negative" if m < 0 else "zero")


def check_halfspace_axioms(order: HalfSpaceOrder, window: int = _SCREEN_WINDOW) -> None:
    """Exhaustively verify partition, antisymmetry, and additivity on a window."""
    rng = range(-window, window + 1)
    members = {}
    for k in itertools.product(rng, repeat=order.dim):
        m = order.membership(k)
        members[k] = m
        neg = tuple(-v for v in k)
        if any(k):
            if m == 0:
                raise NumericalError(f"order assigns zero to nonzero index {k}")
            if order.membership(neg) != -m:
                raise NumericalError(f"antisymmetry fails at {k}")
        elif m != 0:
            raise NumericalError("order assigns nonzero sign to 0")
    for k, mk in members.items():
        if mk != 1:
            continue
        for l, ml in members.items():
            if ml != 1:
                continue
            s = tuple(k[i] + l[i] for i in range(order.dim))
            if all(abs(v) <= window for v in s) and order.membership(s) != 1:
                raise NumericalError(f"additivity fails at {k} + {l}")


def hd_sn_sets(order: HalfSpaceOrder, m: int) -> IndexedBasis:
    """Exponentials at (-S) intersected with the cube [-m, m]^d.

    Ordered by max-norm shell then ascending index, so the basis at m is a
    prefix of the basis at m + 1 and the union exhausts -S.
    """
    if m < 1:
        raise InputError("m must be >= 1")
    idx = [k for k in itertools.product(range(-m, m + 1), repeat=order.dim)
           if order.membership(k) < 0]
    idx.sort(key=lambda k: (max(abs(v) for v in k), k))
    return IndexedBasis.from_exponents(idx, dim=order.dim)


def hd_project_HL2(g: GridFunction, order: HalfSpaceOrder, window) -> FourierCoeffs:
    """Projection onto the Helson-Lowdenslager space: keep modes in S union {0}."""
    if g.dim != order.dim:
        raise InputError("grid and order dimensions differ")
    c = analyze(g, window)
    kept = {k: v for k, v in c.entries.items() if order.membership(k) >= 0}
    return FourierCoeffs(c.dim, kept, c.window)


@dataclass(frozen=True)
class SpectralFactor:
    """A spectral factor: S-supported coefficients, GM, boundary samples."""

    coeffs: FourierCoeffs
    gm: float
    grid: GridFunction
    order: HalfSpaceOrder
    largest_dropped: float = 0.0

    def __post_init__(self):
        for k in self.coeffs.entries:
            if self.order.membership(k) < 0:
                raise InputError(f"factor coefficient at forbidden index {k}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.grid.dims

    def is_zero(self) -> bool:
        return self.gm == 0.0

    @classmethod
    def zero(cls, dims, order: HalfSpaceOrder) -> "SpectralFactor":
        g = GridFunction.zero(dims)
        return cls(FourierCoeffs(order.dim, {}, (0,) * order.dim), 0.0, g, order)


def _s_half_weights(dims: tuple[int, ...], order: HalfSpaceOrder) -> np.ndarray:
    """Bin weights for the S-half of a log spectrum.

    Weight 1 on S, 0 on -S, 1/2 at 0 and on Nyquist-edge bins (which pair
    with themselves under negation mod N), so that for real input the real
    part of the synthesized half equals half the input on the grid.
    """
    w = np.empty(dims)
    for bins in itertools.product(*(range(n) for n in dims)):
        k = tuple(b - n if b > n // 2 else b for b, n in zip(bins, dims))
        if any(b == n // 2 for b, n in zip(bins, dims)):
            w[bins] = 0.5
        else:
            m = order.membership(k)
            w[bins] = 0.5 if m == 0 else (1.0 if m > 0 else 0.0)
    return w


def hd_spectral_factor(w: GridFunction, order: HalfSpaceOrder,
                       window=None) -> SpectralFactor:
    """Spectral factor of a strictly positive weight on T^d.

    phi = exp of the S-half of the log spectrum, so |phi|^2 = w on the grid
    and phi-hat(0) = sqrt(GM(w)).  Coefficient leakage onto -S beyond the
    configured threshold raises; below it, the entries are dropped (and
    reported through ``largest_dropped``).
    """
    if w.dim != order.dim:
        raise InputError("weight and order dimensions differ")
    gm = geometric_mean(w)
    if gm == 0.0:
        return SpectralFactor.zero(w.dims, order)
    if window is None:
        window = tuple(n // 4 for n in w.dims)
    window = tuple(window) if not isinstance(window, int) else (window,) * w.dim
    if any(win > n // 2 - 1 for win, n in zip(window, w.dims)):
        raise AliasingWindowError("aliasing window")
    logw = np.log(w.real_samples("weight"))
    half = _s_half_weights(w.dims, order)
    h = np.fft.ifftn(np.fft.fftn(logw) * half)
    phi = np.exp(h)
    spec = np.fft.fftn(phi) / w.size
    entries: dict[tuple[int, ...], complex] = {}
    largest_dropped = 0.0
    for bins in itertools.product(*(range(n) for n in w.dims)):
        k = tuple(b - n if b >= n // 2 else b for b, n in zip(bins, w.dims))
        v = complex(spec[bins])
        inside = all(abs(k[i]) <= window[i] for i in range(w.dim))
        if order.membership(k) >= 0 and inside:
            entries[k] = v
        else:
            if order.membership(k) < 0 and abs(v) > TOL.factor_leak:
                raise NumericalError("window too small")
            largest_dropped = max(largest_dropped, abs(v))
    table = FourierCoeffs(w.dim, entries, window)
    return SpectralFactor(table, gm, GridFunction(w.dims, phi), order, largest_dropped)


def hd_bordered_ratio(specF: IndexedBasis, specG: IndexedBasis,
                      order: HalfSpaceOrder, m: int, mu: CircleMeasure) -> complex:
    """Finite-stage determinant ratio over the base (-S) cap [-m, m]^d."""
    if len(specF) != len(specG):
        raise InputError("border size mismatch")
    base = hd_sn_sets(order, m)
    return bordered_ratio(specF, specG, base, mu)


def _hl2_row(f: FourierCoeffs, conj_factor: np.ndarray, dims: tuple[int, ...],
             keep: np.ndarray) -> np.ndarray:
    vals = synthesize(f, dims).samples * conj_factor
    spec = np.fft.fftn(vals) / int(np.prod(dims))
    return (spec * keep).reshape(-1)


def hd_limit_matrix(specF: IndexedBasis, specG: IndexedBasis,
                    phi: SpectralFactor,
                    psi: SpectralFactor | None = None) -> LimitMinor:
    """Limiting minor with entries from HL2-projected products.

    entry(j, k) = integral of P_HL2(f_j conj(phi)) conj(P_HL2(g_k conj(psi)))
    dlambda.  With a zero factor the limit is 0 for archimedean orders and
    undetermined (refused) otherwise.
    """
    if psi is None:
        psi = phi
    if len(specF) != len(specG):
        raise InputError("border size mismatch")
    border = BorderedSpec(tuple(specF), tuple(specG))
    r1 = len(specF)
    if phi.is_zero() or psi.is_zero():
        if phi.order.archimedean:
            return LimitMinor(np.zeros((r1, r1), dtype=np.complex128), 0.0 + 0.0j, border)
        raise UnsupportedCaseError(
            "GM-zero with non-archimedean order: limit not determined by this formula")
    if phi.dims != psi.dims or phi.order != psi.order:
        raise InputError("factor grids and orders must match")
    dims = phi.dims
    order = phi.order
    keep = np.empty(dims)
    for bins in itertools.product(*(range(n) for n in dims)):
        k = tuple(b - n if b >= n // 2 else b for b, n in zip(bins, dims))
        keep[bins] = 1.0 if order.membership(k) >= 0 else 0.0
    F = np.stack([_hl2_row(f, np.conj(phi.grid.samples), dims, keep) for f in specF])
    G = np.stack([_hl2_row(g, np.conj(psi.grid.samples), dims, keep) for g in specG])
    M = F @ G.conj().T
    return LimitMinor(M, complex(np.linalg.det(M)), border)
