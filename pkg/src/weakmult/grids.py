"""Discretized domains and the function/spectrum containers built on them.

Two domain types are provided:

* :class:`TorusGrid` — the N-torus identified with [0,1)^N, sampled at
  ``M`` points per axis, ``x = m/M`` with ``m`` in {0,...,M-1}^N.  Its
  frequency set is the integer box {-M//2, ..., M-1-M//2}^N (ascending,
  symmetric half-open for even M).

* :class:`LineModel` — a period-``P`` torus standing in for the real
  line, sampled at ``M_R`` points with spacing ``h = P/M_R``.  Both the
  spatial grid ``h*{-M_R/2,...,M_R/2-1}^N`` and the frequency grid
  ``(1/P)*{-M_R/2,...,M_R/2-1}^N`` are centered; everything with
  compactly supported frequency data inside the band [-F, F),
  ``F = M_R/(2P)``, is represented exactly.

Values are stored as immutable complex arrays in row-major order; the
row-major flattening is the normative order for file interchange.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "TorusGrid",
    "LineModel",
    "GridFunction",
    "Spectrum",
    "build_torus_grid",
    "build_line_model",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _axis_indices(m: int) -> np.ndarray:
    """Ascending centered index range {-m//2, ..., m-1-m//2}."""
    lo = -(m // 2)
    return np.arange(lo, lo + m)


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid on the N-torus [0,1)^N with M points per axis."""

    dim: int
    points_per_dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.points_per_dim < 2:
            raise ValueError("points_per_dim must be >= 2")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_dim,) * self.dim

    @property
    def total_points(self) -> int:
        return self.points_per_dim**self.dim

    @property
    def cell_volume(self) -> Fraction:
        # exact rational so that cell_volume * M^N == 1 identically
        return Fraction(1, self.total_points)

    @property
    def cell_volume_float(self) -> float:
        return 1.0 / self.total_points

    def points(self) -> np.ndarray:
        """Spatial grid points, shape ``shape + (dim,)``."""
        ax = np.arange(self.points_per_dim) / self.points_per_dim
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    def frequency_indices(self) -> np.ndarray:
        """Integer frequency vectors in ascending order, shape ``shape + (dim,)``."""
        ax = _axis_indices(self.points_per_dim)
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    @property
    def min_frequency(self) -> int:
        return -(self.points_per_dim // 2)

    @property
    def max_frequency(self) -> int:
        return self.points_per_dim - 1 - self.points_per_dim // 2


@dataclass(frozen=True)
class LineModel:
    """Truncated periodic model of R^N: period P, M_R samples per period.

    The spatial spacing is ``h = P/M_R`` and the frequency resolution is
    ``1/P``; the two grids are dual (``h * (1/P) * M_R == 1``).  Frequency
    content outside the band [-F, F), ``F = M_R/(2P)``, does not exist on
    the model — that truncation is the declared approximation of R^N.
    """

    dim: int
    period: int
    samples_per_period: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.period < 2 or self.period % 2 != 0:
            raise ValueError("period must be a positive even integer")
        if self.samples_per_period % 2 != 0:
            raise ValueError("samples_per_period must be even (centered grids)")
        if self.samples_per_period < 2 * self.period:
            raise ValueError(
                "samples_per_period must be >= 2*period so the band holds a lattice cell"
            )

    @property
    def spacing(self) -> Fraction:
        return Fraction(self.period, self.samples_per_period)

    @property
    def spacing_float(self) -> float:
        return self.period / self.samples_per_period

    @property
    def freq_resolution(self) -> Fraction:
        return Fraction(1, self.period)

    @property
    def freq_halfwidth(self) -> Fraction:
        """F = M_R/(2P); the frequency grid is (1/P)*{-M_R/2,...,M_R/2-1}."""
        return Fraction(self.samples_per_period, 2 * self.period)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.samples_per_period,) * self.dim

    @property
    def total_points(self) -> int:
        return self.samples_per_period**self.dim

    def points(self) -> np.ndarray:
        ax = _axis_indices(self.samples_per_period) * self.spacing_float
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    def frequencies(self) -> np.ndarray:
        """Physical frequency vectors ξ, shape ``shape + (dim,)``."""
        ax = _axis_indices(self.samples_per_period) / self.period
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    def frequency_indices(self) -> np.ndarray:
        """Integer frequency indices (ξ·P), shape ``shape + (dim,)``."""
        ax = _axis_indices(self.samples_per_period)
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    def frequency_axis(self) -> np.ndarray:
        return _axis_indices(self.samples_per_period) / self.period

    def band_box(self) -> np.ndarray:
        """Per-axis frequency band [-F, F), returned as closed bounds."""
        f = float(self.freq_halfwidth)
        return np.array([[-f, f]] * self.dim, dtype=float)


Domain = TorusGrid | LineModel


def _domain_weight(domain: Domain) -> float:
    """Riemann weight of one spatial cell."""
    if isinstance(domain, TorusGrid):
        return domain.cell_volume_float
    return domain.spacing_float**domain.dim


def _dual_weight(domain: Domain) -> float:
    """Weight of one frequency node (counting measure on the torus dual)."""
    if isinstance(domain, TorusGrid):
        return 1.0
    return float(domain.freq_resolution) ** domain.dim


@dataclass(frozen=True)
class GridFunction:
    """Complex values on a domain's spatial grid (row-major, immutable)."""

    domain: Domain
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.size != self.domain.total_points:
            raise ValueError(
                f"expected {self.domain.total_points} values, got {v.size}"
            )
        v = v.reshape(self.domain.shape)
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite (no NaN/Inf)")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.domain.shape


@dataclass(frozen=True)
class Spectrum:
    """Complex coefficients on a domain's frequency grid (ascending order)."""

    domain: Domain
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.size != self.domain.total_points:
            raise ValueError(
                f"expected {self.domain.total_points} coefficients, got {c.size}"
            )
        c = c.reshape(self.domain.shape)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite (no NaN/Inf)")
        object.__setattr__(self, "coefficients", _freeze(c))

    def coefficient(self, n) -> complex:
        """Coefficient at integer frequency index vector ``n``."""
        n = np.atleast_1d(np.asarray(n, dtype=int))
        m = self.domain.shape[0]
        lo = -(m // 2)
        idx = n - lo
        if np.any(idx < 0) or np.any(idx >= m):
            raise IndexError(f"frequency {n.tolist()} outside the grid band")
        return complex(self.coefficients[tuple(idx)])


def build_torus_grid(dim: int, points_per_dim: int) -> TorusGrid:
    return TorusGrid(dim=dim, points_per_dim=points_per_dim)


def build_line_model(dim: int, period: int, samples_per_period: int) -> LineModel:
    return LineModel(dim=dim, period=period, samples_per_period=samples_per_period)
