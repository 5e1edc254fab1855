"""Finitely windowed symbols on the integer lattice Z^N.

A :class:`DiscreteSymbol` stores complex values on an inclusive integer
box ``[lo_1,hi_1] x ... x [lo_N,hi_N]`` and is implicitly zero outside.
Evaluation is total; the window only bounds where nonzero values may live.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "DiscreteSymbol",
    "delta_symbol",
    "constant_symbol",
    "random_symbol",
    "sample_kernel_symbol",
    "symbol_to_json",
    "symbol_from_json",
    "save_symbol",
    "load_symbol",
]


@dataclass(frozen=True)
class DiscreteSymbol:
    dim: int
    window: np.ndarray = field(repr=True)  # (dim, 2) inclusive integer bounds
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.window, dtype=int).reshape(self.dim, 2)
        if np.any(w[:, 1] < w[:, 0]):
            raise ValueError("window must be non-empty on every axis")
        shape = tuple(int(hi - lo + 1) for lo, hi in w)
        v = np.asarray(self.values, dtype=complex)
        if v.size != int(np.prod(shape)):
            raise ValueError(f"expected {int(np.prod(shape))} values, got {v.size}")
        v = v.reshape(shape)
        if not np.all(np.isfinite(v)):
            raise ValueError("symbol values must be finite")
        w = np.ascontiguousarray(w)
        w.setflags(write=False)
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        object.__setattr__(self, "window", w)
        object.__setattr__(self, "values", v)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(int(hi - lo + 1) for lo, hi in self.window)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    @property
    def max_abs_frequency(self) -> int:
        return int(np.max(np.abs(self.window)))

    def lattice_points(self) -> np.ndarray:
        """All window points as an array of shape ``(K, dim)``."""
        axes = [np.arange(lo, hi + 1) for lo, hi in self.window]
        grids = np.meshgrid(*axes, indexing="ij")
        return np.stack(grids, axis=-1).reshape(-1, self.dim)

    def __call__(self, n: np.ndarray) -> np.ndarray:
        """Evaluate at integer points ``n`` of shape ``(..., dim)``; zero off-window."""
        n = np.asarray(n, dtype=int)
        scalar = n.ndim == 1
        pts = n.reshape(-1, self.dim)
        lo = self.window[:, 0]
        hi = self.window[:, 1]
        inside = np.all((pts >= lo) & (pts <= hi), axis=1)
        out = np.zeros(pts.shape[0], dtype=complex)
        if np.any(inside):
            idx = pts[inside] - lo
            out[inside] = self.values[tuple(idx.T)]
        if scalar:
            return out[0]
        return out.reshape(n.shape[:-1])

    def equals(self, other: "DiscreteSymbol", tol: float = 0.0) -> bool:
        """Equality as functions on Z^N (windows may differ)."""
        if self.dim != other.dim:
            return False
        lo = np.minimum(self.window[:, 0], other.window[:, 0])
        hi = np.maximum(self.window[:, 1], other.window[:, 1])
        axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack(grids, axis=-1)
        return bool(np.max(np.abs(self(pts) - other(pts)), initial=0.0) <= tol)


def delta_symbol(dim: int, window=None) -> DiscreteSymbol:
    """Kronecker delta at the origin; ``window`` widens the declared box."""
    if window is None:
        window = [[0, 0]] * dim
    w = np.asarray(window, dtype=int).reshape(dim, 2)
    shape = tuple(int(hi - lo + 1) for lo, hi in w)
    v = np.zeros(shape, dtype=complex)
    v[tuple(int(-lo) for lo, _ in w)] = 1.0
    return DiscreteSymbol(dim=dim, window=w, values=v)


def constant_symbol(dim: int, radius: int, value: complex = 1.0) -> DiscreteSymbol:
    w = np.array([[-radius, radius]] * dim, dtype=int)
    shape = (2 * radius + 1,) * dim
    return DiscreteSymbol(dim=dim, window=w, values=np.full(shape, value, dtype=complex))


def random_symbol(dim: int, radius: int, rng: np.random.Generator) -> DiscreteSymbol:
    """Complex Gaussian values on the window [-radius, radius]^dim."""
    shape = (2 * radius + 1,) * dim
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    w = np.array([[-radius, radius]] * dim, dtype=int)
    return DiscreteSymbol(dim=dim, window=w, values=v)


def sample_kernel_symbol(kernel, step: float, radius: int) -> DiscreteSymbol:
    """Symbol n -> kernel(step * n) on the window [-radius, radius]^dim."""
    dim = kernel.dim
    w = np.array([[-radius, radius]] * dim, dtype=int)
    axes = [np.arange(-radius, radius + 1)] * dim
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(grids, axis=-1).astype(float) * step
    return DiscreteSymbol(dim=dim, window=w, values=kernel.evaluate(pts))


def symbol_to_json(phi: DiscreteSymbol) -> dict:
    flat = phi.values.reshape(-1)
    return {
        "dim": phi.dim,
        "window": [[int(lo), int(hi)] for lo, hi in phi.window],
        "re": flat.real.tolist(),
        "im": flat.imag.tolist(),
    }


def symbol_from_json(obj: dict) -> DiscreteSymbol:
    dim = int(obj["dim"])
    window = np.asarray(obj["window"], dtype=int)
    values = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    return DiscreteSymbol(dim=dim, window=window, values=values)


def save_symbol(phi: DiscreteSymbol, path) -> None:
    Path(path).write_text(json.dumps(symbol_to_json(phi), sort_keys=True))


def load_symbol(path) -> DiscreteSymbol:
    return symbol_from_json(json.loads(Path(path).read_text()))
