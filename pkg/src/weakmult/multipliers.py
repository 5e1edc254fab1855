"""Multiplier operators: discrete symbols on torus grids, kernel symbols
on line models.  Both act by pointwise multiplication of the spectrum and
are exactly linear; a kernel multiplier is bounded on L² by sup|Λ|
(discrete Plancherel)."""

from __future__ import annotations

import numpy as np

from .fourier import forward_transform, inverse_transform
from .grids import GridFunction, LineModel, Spectrum, TorusGrid
from .kernels import KernelSpec
from .symbols import DiscreteSymbol

__all__ = [
    "apply_discrete_symbol",
    "apply_kernel_symbol",
    "kernel_multiplier",
    "discrete_multiplier",
]


def apply_discrete_symbol(phi: DiscreteSymbol, f: GridFunction) -> GridFunction:
    """(T_φ f)^(n) = φ(n)·f̂(n) on a torus grid resolving φ's window."""
    grid = f.domain
    if not isinstance(grid, TorusGrid):
        raise ValueError("discrete symbols act on torus grids")
    if phi.dim != grid.dim:
        raise ValueError("symbol/grid dimension mismatch")
    if grid.points_per_dim <= 2 * phi.max_abs_frequency:
        raise ValueError(
            f"symbol window radius {phi.max_abs_frequency} exceeds the "
            f"frequency band of M={grid.points_per_dim}"
        )
    sym = phi(grid.frequency_indices())
    c = forward_transform(f)
    return inverse_transform(Spectrum(domain=grid, coefficients=c.coefficients * sym))


def apply_kernel_symbol(lam: KernelSpec, f: GridFunction) -> GridFunction:
    """Multiply the sampled spectrum by Λ at the frequency grid points.

    Refuses kernels whose declared support exceeds the model's band
    [-F, F]: out-of-band symbol mass would alias silently.
    """
    line = f.domain
    if not isinstance(line, LineModel):
        raise ValueError("kernel symbols act on line models")
    if lam.dim != line.dim:
        raise ValueError("kernel/model dimension mismatch")
    fhw = float(line.freq_halfwidth)
    box = lam.support_box
    if np.any(box[:, 0] < -fhw) or np.any(box[:, 1] > fhw):
        raise ValueError(
            f"kernel support {box.tolist()} exceeds the frequency band "
            f"[-{fhw}, {fhw}]^N"
        )
    sym = lam.evaluate(line.frequencies())
    c = forward_transform(f)
    return inverse_transform(Spectrum(domain=line, coefficients=c.coefficients * sym))


def discrete_multiplier(phi: DiscreteSymbol):
    """Operator handle f ↦ T_φ f (for the norm estimators)."""
    return lambda f: apply_discrete_symbol(phi, f)


def kernel_multiplier(lam: KernelSpec):
    """Operator handle f ↦ T_Λ f (for the norm estimators)."""
    return lambda f: apply_kernel_symbol(lam, f)
