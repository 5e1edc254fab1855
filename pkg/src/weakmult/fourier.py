"""Discrete Fourier analysis on both domain types.

Conventions (normative for the whole package):

* forward:  c(ξ) = Σ_x f(x) e^{-2πi ξ·x} · w,  with the Riemann weight
  w = cell volume (torus) or h^N (line model);
* inverse:  f(x) = Σ_ξ c(ξ) e^{+2πi ξ·x} · w*, with the dual weight
  w* = 1 (torus) or P^{-N} (line model).

On a torus grid the coefficients of a trigonometric polynomial of
per-axis degree < M/2 are exact.  ``symbol_to_kernel`` uses the e^{+2πi}
character, k(u) = Σ_n φ(n) e^{2πi u·n}, so that recovering coefficients
with ``forward_transform`` returns φ — the sign that makes the
transference identity an identity rather than a reflection.
"""

from __future__ import annotations

import numpy as np

from .grids import (
    Domain,
    GridFunction,
    LineModel,
    Spectrum,
    TorusGrid,
    _domain_weight,
    _dual_weight,
)
from .symbols import DiscreteSymbol

__all__ = [
    "forward_transform",
    "inverse_transform",
    "convolve_periodic",
    "fejer_coefficient",
    "fejer_kernel",
    "symbol_to_kernel",
    "evaluate_spectrum",
    "spectrum_from_coefficients",
]


def _all_axes(domain: Domain) -> tuple[int, ...]:
    return tuple(range(domain.dim))


def forward_transform(f: GridFunction) -> Spectrum:
    """Riemann-weighted DFT; exact on resolved trigonometric polynomials."""
    d = f.domain
    axes = _all_axes(d)
    if isinstance(d, TorusGrid):
        raw = np.fft.fftn(f.values, axes=axes)
    else:
        raw = np.fft.fftn(np.fft.ifftshift(f.values, axes=axes), axes=axes)
    c = np.fft.fftshift(raw, axes=axes) * _domain_weight(d)
    return Spectrum(domain=d, coefficients=c)


def inverse_transform(c: Spectrum) -> GridFunction:
    d = c.domain
    axes = _all_axes(d)
    raw = np.fft.ifftshift(c.coefficients, axes=axes) / _domain_weight(d)
    if isinstance(d, TorusGrid):
        v = np.fft.ifftn(raw, axes=axes)
    else:
        v = np.fft.fftshift(np.fft.ifftn(raw, axes=axes), axes=axes)
    return GridFunction(domain=d, values=v)


def convolve_periodic(k: GridFunction, f: GridFunction) -> GridFunction:
    """Periodic convolution (k*f)(x) = Σ_y k(y) f(x-y) · cell volume.

    Realized through the convolution theorem, which holds exactly on the
    grid: forward(k*f) = forward(k)·forward(f) coefficientwise.
    """
    if k.domain != f.domain:
        raise ValueError("convolve_periodic requires functions on the same grid")
    if not isinstance(k.domain, TorusGrid):
        raise ValueError("periodic convolution is defined on torus grids")
    axes = _all_axes(k.domain)
    prod = np.fft.fftn(k.values, axes=axes) * np.fft.fftn(f.values, axes=axes)
    v = np.fft.ifftn(prod, axes=axes) * k.domain.cell_volume_float
    return GridFunction(domain=k.domain, values=v)


def fejer_coefficient(n: np.ndarray, j: int) -> np.ndarray:
    """Triangular weights ∏ max(1 - |n_i|/(j+1), 0)."""
    n = np.asarray(n, dtype=float)
    return np.prod(np.maximum(1.0 - np.abs(n) / (j + 1), 0.0), axis=-1)


def fejer_kernel(j: int, grid: TorusGrid) -> GridFunction:
    """The j-th Fejér kernel: real, nonnegative, mean 1, coefficients
    ∏ max(1-|n_i|/(j+1), 0) on the window [-j, j]^N."""
    if j < 0:
        raise ValueError("Fejér order must be nonnegative")
    if grid.points_per_dim <= 2 * j:
        raise ValueError(f"grid M={grid.points_per_dim} cannot resolve Fejér order {j}")
    coeffs = fejer_coefficient(grid.frequency_indices(), j)
    g = inverse_transform(Spectrum(domain=grid, coefficients=coeffs))
    return GridFunction(domain=grid, values=g.values.real)


def symbol_to_kernel(phi: DiscreteSymbol, grid: TorusGrid) -> GridFunction:
    """Trigonometric polynomial k(u) = Σ_n φ(n) e^{2πi u·n}."""
    if grid.points_per_dim <= 2 * phi.max_abs_frequency:
        raise ValueError(
            f"grid M={grid.points_per_dim} cannot resolve window "
            f"radius {phi.max_abs_frequency}"
        )
    coeffs = phi(grid.frequency_indices())
    return inverse_transform(Spectrum(domain=grid, coefficients=coeffs))


def spectrum_from_coefficients(domain: Domain, pairs) -> Spectrum:
    """Spectrum with the given ``(index_vector, value)`` entries, zero elsewhere."""
    m = domain.shape[0]
    lo = -(m // 2)
    c = np.zeros(domain.shape, dtype=complex)
    for n, val in pairs:
        idx = tuple(int(ni) - lo for ni in np.atleast_1d(n))
        c[idx] = val
    return Spectrum(domain=domain, coefficients=c)


def evaluate_spectrum(c: Spectrum, points: np.ndarray) -> np.ndarray:
    """Evaluate the band-limited interpolant Σ_ξ c(ξ) w* e^{2πi ξ·x} off-grid.

    ``points`` has shape ``(..., dim)`` in the domain's spatial units.
    """
    d = c.domain
    freqs = d.frequency_indices().reshape(-1, d.dim).astype(float)
    if isinstance(d, LineModel):
        freqs = freqs / d.period
    pts = np.asarray(points, dtype=float).reshape(-1, d.dim)
    phases = np.exp(2j * np.pi * (pts @ freqs.T))
    vals = phases @ (c.coefficients.reshape(-1) * _dual_weight(d))
    return vals.reshape(np.asarray(points).shape[:-1])
