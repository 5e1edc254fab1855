"""Fejér truncation of symbols, the staircase extension ξ ↦ φ_ε(⌊ξ/ε⌋),
and a liminf-style convergence monitor for families of multipliers.

The truncation satisfies the exact identity T_{φ_j} f = T_φ(k_j * f) on
resolving grids, so each truncate inherits the weak bounds of φ through
the mean-1 nonnegative Fejér kernel; the monitor reports the empirical
weak norms of a family together with a tail-min proxy for their liminf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import fejer_coefficient
from .grids import Domain, LineModel, TorusGrid
from .kernels import KernelSpec, table_kernel
from .multipliers import discrete_multiplier, kernel_multiplier
from .symbols import DiscreteSymbol
from .weaklp import CorpusSpec, estimate_operator_weak_norm

__all__ = [
    "fejer_truncate_symbol",
    "staircase_extension",
    "ConvergenceReport",
    "convergence_monitor",
]


def fejer_truncate_symbol(phi, j: int, dim: int | None = None) -> DiscreteSymbol:
    """φ_j(n) = ∏ max(1-|n_i|/(j+1), 0) · φ(n), windowed to [-j, j]^N.

    ``phi`` may be a :class:`DiscreteSymbol` or a callable full-band
    symbol (then ``dim`` is required); symbols keep the intersection of
    their window with [-j, j]^N.
    """
    if j < 0:
        raise ValueError("Fejér order must be nonnegative")
    if isinstance(phi, DiscreteSymbol):
        dim = phi.dim
        lo = np.maximum(phi.window[:, 0], -j)
        hi = np.minimum(phi.window[:, 1], j)
        if np.any(hi < lo):  # no overlap: the zero symbol
            lo = np.zeros(dim, dtype=int)
            hi = np.zeros(dim, dtype=int)
        window = np.stack([lo, hi], axis=1)
        evaluate = phi
    else:
        if dim is None:
            raise ValueError("dim is required for a callable symbol")
        window = np.array([[-j, j]] * dim, dtype=int)
        evaluate = phi
    axes = [np.arange(a, b + 1) for a, b in window]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    values = np.asarray(evaluate(pts), dtype=complex) * fejer_coefficient(pts, j)
    return DiscreteSymbol(dim=dim, window=window, values=values)


def staircase_extension(
    phi_eps: DiscreteSymbol, eps: float, line: LineModel
) -> KernelSpec:
    """The staircase symbol ψ_ε(ξ) = φ_ε(⌊ξ/ε⌋) sampled on the model's
    frequency grid (one dimension).

    The window of φ_ε must cover every index ⌊ξ/ε⌋ the band produces;
    a narrower window would silently zero the staircase's tails.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if phi_eps.dim != 1 or line.dim != 1:
        raise ValueError("the staircase extension is one-dimensional")
    xi = line.frequency_axis()
    idx = np.floor(xi / eps).astype(int)
    lo, hi = phi_eps.window[0]
    if idx.min() < lo or idx.max() > hi:
        raise ValueError(
            f"window [{lo}, {hi}] does not cover the band's staircase "
            f"indices [{idx.min()}, {idx.max()}]"
        )
    values = phi_eps(idx[:, None])
    fhw = float(line.freq_halfwidth)
    return table_kernel(start=[-fhw], step=[1.0 / line.period], values=values)


@dataclass(frozen=True)
class ConvergenceReport:
    """Empirical face of the liminf lemma for a finite symbol family."""

    labels: tuple
    sup_norms: tuple
    max_sup_norm: float
    deviations_from_last: tuple  # pointwise max |φ_j - φ_last| on the grid
    weak_estimates: tuple
    liminf_proxy: float
    proxy_note: str
    final_estimate: float
    final_below_proxy: bool
    tolerance: float

    def to_json(self) -> dict:
        return {k: list(v) if isinstance(v := getattr(self, k), tuple) else v
                for k in self.__dataclass_fields__}


def _symbol_values_on(domain: Domain, item) -> np.ndarray:
    if isinstance(item, DiscreteSymbol):
        return item(domain.frequency_indices())
    return item.evaluate(domain.frequencies())


def convergence_monitor(
    symbols,
    p: float,
    domain: Domain,
    corpus: CorpusSpec | None = None,
    labels=None,
    tolerance: float = 1e-9,
) -> ConvergenceReport:
    """Monitor a finite symbol sequence approaching its last element.

    Reports per-symbol sup norms, pointwise deviations from the final
    symbol on the domain's frequency grid, empirical weak norms, and the
    min over the tail half of the sequence as a liminf proxy; the
    honest numerical statement is that proxy, not a true liminf.
    """
    symbols = list(symbols)
    if not symbols:
        raise ValueError("empty symbol sequence")
    labels = list(labels) if labels is not None else [f"symbol-{i}" for i in range(len(symbols))]
    corpus = corpus or CorpusSpec()

    grids = [_symbol_values_on(domain, s) for s in symbols]
    sup_norms = tuple(float(np.max(np.abs(g))) for g in grids)
    deviations = tuple(
        float(np.max(np.abs(g - grids[-1]))) for g in grids
    )
    estimates = []
    for s in symbols:
        if isinstance(s, DiscreteSymbol):
            op = discrete_multiplier(s)
        else:
            op = kernel_multiplier(s)
        estimates.append(
            estimate_operator_weak_norm(op, p, domain, corpus).estimate
        )
    tail = estimates[len(estimates) // 2 :]
    proxy = min(tail)
    final = estimates[-1]
    return ConvergenceReport(
        labels=tuple(labels),
        sup_norms=sup_norms,
        max_sup_norm=max(sup_norms),
        deviations_from_last=deviations,
        weak_estimates=tuple(estimates),
        liminf_proxy=proxy,
        proxy_note=(
            "liminf proxied by the minimum over the tail half of the "
            "provided sequence"
        ),
        final_estimate=final,
        final_below_proxy=bool(final <= proxy + tolerance),
        tolerance=tolerance,
    )
