"""Periodization of compactly supported kernels, the transference couple
(S, T), the closed-form tent transform with its summable majorant, and the
transferred operator H_k.

The couple acts on a line model by frequency-side multiplication:

    (T_u f)^(ξ) = Σ_n Λ(ξ-n) e^{2πi u·n} f̂(ξ),     supp Λ ⊆ [1/4,3/4]^N,
    (S_u f)^(ξ) = Σ_n b(ξ-n)  e^{2πi u·n} f̂(ξ),     b the plateau tent.

Because supp Λ sits inside the tent's plateau and has per-axis diameter
≤ 1/2, at most one lattice point contributes at any frequency and the
intertwining law S_v T_u = T_{u+v} holds exactly on the grid.

The transferred operator is the rectangle-rule average

    H_k f = (1/M_u^N) Σ_{u ∈ grid} k(u) · T_{-u} f,

which reproduces the periodized multiplier W_{φ,Λ} exactly when k is the
trigonometric polynomial with coefficients φ and the quadrature resolves
every frequency the integrand carries (the operator refuses otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourier import forward_transform, inverse_transform
from .grids import GridFunction, LineModel, Spectrum, TorusGrid
from .kernels import KernelSpec, table_kernel, tent_kernel
from .symbols import DiscreteSymbol

__all__ = [
    "TransferCoupleConfig",
    "periodize",
    "periodize_to_kernel",
    "modulated_symbol",
    "transfer_family_T",
    "transfer_family_S",
    "apply_S_spatial",
    "beta_check",
    "beta_majorant",
    "beta_majorant_sum_1d",
    "BETA_MAJORANT_SUM_1D",
    "transferred_operator_Hk",
]

_SUPPORT_TOL = 1e-12
_NUMERICAL_SUPPORT_RTOL = 1e-12


def periodize(phi: DiscreteSymbol, lam: KernelSpec, xi) -> np.ndarray:
    """W_{φ,Λ}(ξ) = Σ_n φ(n) Λ(ξ-n), an exact finite sum at each point.

    Compact support of Λ means only lattice points with ξ-n ∈ supp Λ
    contribute; points of φ's window that cannot reach the query set are
    skipped up front.
    """
    if phi.dim != lam.dim:
        raise ValueError("symbol/kernel dimension mismatch")
    xi = np.asarray(xi, dtype=float)
    scalar = xi.ndim == 1
    pts = xi.reshape(-1, phi.dim)
    lattice = phi.lattice_points()
    values = phi(lattice)
    lo = pts.min(axis=0) - lam.support_box[:, 1]
    hi = pts.max(axis=0) - lam.support_box[:, 0]
    keep = np.all((lattice >= np.floor(lo)) & (lattice <= np.ceil(hi)), axis=1)
    out = np.zeros(pts.shape[0], dtype=complex)
    for n, v in zip(lattice[keep], values[keep]):
        if v != 0:
            out += v * lam.evaluate(pts - n)
    if scalar:
        return out[0]
    return out.reshape(xi.shape[:-1])


def periodize_to_kernel(phi: DiscreteSymbol, lam: KernelSpec, line: LineModel) -> KernelSpec:
    """Sample W_{φ,Λ} on the model's frequency grid as a table kernel.

    The table covers the whole band; its declared support box is the
    Minkowski sum of φ's window and supp Λ clipped to the band.
    """
    values = periodize(phi, lam, line.frequencies())
    fhw = float(line.freq_halfwidth)
    step = 1.0 / line.period
    lo = np.maximum(phi.window[:, 0] + lam.support_box[:, 0], -fhw)
    hi = np.minimum(phi.window[:, 1] + lam.support_box[:, 1], fhw)
    hi = np.maximum(hi, lo)
    return table_kernel(
        start=[-fhw] * line.dim,
        step=[step] * line.dim,
        values=values,
        support_box=np.stack([lo, hi], axis=1),
    )


# ---------------------------------------------------------------------------
# the couple


def _unique_contributor_table(lam: KernelSpec, line: LineModel):
    """Per grid frequency, the unique lattice point n with Λ(ξ-n) ≠ 0.

    Returns ``(n_unique, n_index, values)`` where ``values[ξ] = Λ(ξ-n)``
    and ``n_unique[n_index[ξ]]`` is the contributing point.  Requires a
    kernel whose nonzero set has per-axis diameter ≤ 1 (checked by
    construction: any double assignment raises).
    """
    freqs = line.frequencies()
    grid_shape = freqs.shape[:-1]
    pts = freqs.reshape(-1, line.dim)
    lo = np.floor(pts.min(axis=0) - lam.support_box[:, 1]).astype(int)
    hi = np.ceil(pts.max(axis=0) - lam.support_box[:, 0]).astype(int)
    axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    candidates = np.stack(mesh, axis=-1).reshape(-1, line.dim)

    values = np.zeros(pts.shape[0], dtype=complex)
    n_star = np.zeros((pts.shape[0], line.dim), dtype=int)
    assigned = np.zeros(pts.shape[0], dtype=bool)
    for n in candidates:
        v = lam.evaluate(pts - n)
        mask = v != 0
        if not np.any(mask):
            continue
        if np.any(assigned & mask):
            raise ValueError(
                "kernel support too wide for the transference couple: "
                "two lattice translates overlap at a grid frequency"
            )
        values[mask] = v[mask]
        n_star[mask] = n
        assigned |= mask

    n_unique, n_index = np.unique(n_star, axis=0, return_inverse=True)
    return (
        n_unique.astype(float),
        n_index.reshape(grid_shape),
        values.reshape(grid_shape),
    )


@dataclass(frozen=True, eq=False)
class TransferCoupleConfig:
    """The (S, T) couple on a line model.

    ``kernel`` must be supported in [1/4,3/4]^N; ``u_grid`` supplies the
    quadrature nodes for the transferred operator.  All fields are
    immutable; the lazily built periodization tables are shared safely
    between concurrent readers.
    """

    kernel: KernelSpec
    line: LineModel
    u_grid: TorusGrid
    p: float = 2.0
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if not (self.kernel.dim == self.line.dim == self.u_grid.dim):
            raise ValueError("kernel, line model and u-grid dimensions differ")
        box = self.kernel.support_box
        if np.any(box[:, 0] < 0.25 - _SUPPORT_TOL) or np.any(box[:, 1] > 0.75 + _SUPPORT_TOL):
            raise ValueError(
                f"transference couple requires supp Λ ⊆ [1/4,3/4]^N, got {box.tolist()}"
            )
        if not (1.0 < self.p < np.inf):
            raise ValueError("p must lie in (1, inf)")

    def _table(self, which: str):
        if which not in self._cache:
            lam = self.kernel if which == "kernel" else tent_kernel(self.line.dim)
            self._cache[which] = _unique_contributor_table(lam, self.line)
        return self._cache[which]


def modulated_symbol(cfg: TransferCoupleConfig, u, which: str = "kernel") -> np.ndarray:
    """Σ_n Λ(ξ-n) e^{2πi u·n} on the model's frequency grid."""
    u = np.broadcast_to(np.asarray(u, dtype=float), (cfg.line.dim,))
    n_unique, n_index, values = cfg._table(which)
    phases = np.exp(2j * np.pi * (n_unique @ u))
    return values * phases[n_index]


def _apply_symbol(line: LineModel, sym: np.ndarray, f: GridFunction) -> GridFunction:
    c = forward_transform(f)
    return inverse_transform(Spectrum(domain=line, coefficients=c.coefficients * sym))


def transfer_family_T(cfg: TransferCoupleConfig, u, f: GridFunction) -> GridFunction:
    """(T_u f)^(ξ) = Σ_n Λ(ξ-n) e^{2πi u·n} f̂(ξ)."""
    if f.domain != cfg.line:
        raise ValueError("f does not live on the couple's line model")
    return _apply_symbol(cfg.line, modulated_symbol(cfg, u, "kernel"), f)


def transfer_family_S(cfg: TransferCoupleConfig, u, f: GridFunction) -> GridFunction:
    """(S_u f)^(ξ) = Σ_n b(ξ-n) e^{2πi u·n} f̂(ξ), with the plateau tent b."""
    if f.domain != cfg.line:
        raise ValueError("f does not live on the couple's line model")
    return _apply_symbol(cfg.line, modulated_symbol(cfg, u, "tent"), f)


# ---------------------------------------------------------------------------
# the tent transform and its majorant


def _tent_transform_1d(y: np.ndarray) -> np.ndarray:
    """∫ b_1(ζ) e^{2πi ζ y} dζ = e^{iπy} · 2(cos(πy/2) - cos(πy))/(π²y²).

    The quotient has a removable singularity at y = 0 (value 3/4, the
    area of the tent); within |y| < 1e-6 the quotient form loses all
    precision to cancellation, so the limit branch takes over there
    (the neglected term is ≤ (5/64)π²y² ≈ 8e-13).
    """
    y = np.asarray(y, dtype=float)
    near = np.abs(y) < 1e-6
    ysafe = np.where(near, 1.0, y)
    quotient = (
        2.0
        * (np.cos(0.5 * np.pi * ysafe) - np.cos(np.pi * ysafe))
        / (np.pi**2 * ysafe**2)
    )
    magnitude = np.where(near, 0.75, quotient)
    return np.exp(1j * np.pi * y) * magnitude


def beta_check(u, l) -> np.ndarray:
    """Closed form of the tent coefficients β̌_u(l) = ∫ b(ζ)e^{2πiζ(u+l)}dζ
    (product over axes)."""
    u = np.asarray(u, dtype=float)
    l = np.asarray(l, dtype=float)
    y = u + l
    vals = _tent_transform_1d(y)
    return np.prod(vals, axis=-1)


def beta_majorant(l) -> np.ndarray:
    """Summable majorant β(l) with |β̌_u(l)| ≤ β(l) for every u ∈ [0,1)^N.

    Per axis: 1/(l-1)² for l ≥ 2, 1/(l+1)² for l ≤ -2, and ‖b_1‖₁ = 3/4
    on {-1, 0, 1} (where the quadratic branches blow up or are undefined).
    """
    l = np.asarray(l, dtype=float)
    a = np.abs(l)
    denom = np.where(a >= 2, (a - 1.0) ** 2, 1.0)
    branch = np.where(a >= 2, 1.0 / denom, 0.75)
    return np.prod(branch, axis=-1)


def beta_majorant_sum_1d(radius: int) -> float:
    """Σ_{|l| ≤ radius} β_1(l); converges to 9/4 + π²/3 with tail ≤ 2/radius."""
    l = np.arange(-radius, radius + 1).reshape(-1, 1)
    return float(np.sum(beta_majorant(l)))


BETA_MAJORANT_SUM_1D = 9.0 / 4.0 + np.pi**2 / 3.0


def apply_S_spatial(
    cfg: TransferCoupleConfig, u, f: GridFunction, truncation: int
) -> GridFunction:
    """Spatial synthesis of S_u: a truncated translate sum

        S_u f(x) ≈ Σ_{‖l‖_∞ ≤ L} β̌_{-u}(l) · f(x + u - l),

    whose weights β̌_{-u}(l) = ∫b(ζ)e^{2πiζ(l-u)}dζ = beta_check(-u, l)
    are exactly the ones reproducing the frequency-side family as
    L → ∞; the truncation error is bounded by ‖f‖_∞ times the majorant
    tail Σ_{‖l‖_∞ > L} β(l) ≤ 2N/(L-1).  ``u`` is snapped to the spatial
    grid so translates need no interpolation, which requires the spacing
    to divide 1 (samples_per_period a multiple of period).
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    line = cfg.line
    if f.domain != line:
        raise ValueError("f does not live on the couple's line model")
    if line.samples_per_period % line.period != 0:
        raise ValueError(
            "spatial route needs integer translates on the grid "
            "(period must divide samples_per_period)"
        )
    h = line.spacing_float
    per_unit = line.samples_per_period // line.period  # grid steps per unit length
    u = np.broadcast_to(np.asarray(u, dtype=float), (line.dim,))
    u_idx = np.rint(u / h).astype(int)
    u_snap = u_idx * h

    axes = [np.arange(-truncation, truncation + 1)] * line.dim
    mesh = np.meshgrid(*axes, indexing="ij")
    lattice = np.stack(mesh, axis=-1).reshape(-1, line.dim)
    weights = beta_check(-u_snap, lattice)

    acc = np.zeros(line.shape, dtype=complex)
    for l, w in zip(lattice, weights):
        shift = tuple(-(int(ui) - int(li) * per_unit) for ui, li in zip(u_idx, l))
        acc += w * np.roll(f.values, shift, axis=tuple(range(line.dim)))
    return GridFunction(domain=line, values=acc)


# ---------------------------------------------------------------------------
# the transferred operator


def _numerical_band(coeffs: np.ndarray, indices: np.ndarray) -> int:
    """Largest ‖n‖_∞ carrying more than a relative-1e-12 coefficient."""
    mag = np.abs(coeffs)
    top = mag.max()
    if top == 0.0:
        return 0
    mask = mag > _NUMERICAL_SUPPORT_RTOL * top
    return int(np.max(np.abs(indices[mask])))


def transferred_operator_Hk(
    cfg: TransferCoupleConfig, k: GridFunction, f: GridFunction
) -> GridFunction:
    """H_k f = (1/M_u^N) Σ_{u ∈ grid} k(u) T_{-u} f.

    Exactness contract: the rectangle rule must resolve every product
    k(u)·e^{-2πiu·n} the sum meets, i.e. M_u ≥ deg k + n_max + 1 where
    n_max is the largest lattice point paired with f's spectral content.
    Undersampled calls are refused rather than silently aliased.  For
    k = symbol_to_kernel(φ) this makes (H_k f)^ = W_{φ,Λ}·f̂ an identity.
    """
    if k.domain != cfg.u_grid:
        raise ValueError("k must live on the couple's u-grid")
    if f.domain != cfg.line:
        raise ValueError("f does not live on the couple's line model")
    m_u = cfg.u_grid.points_per_dim

    k_spec = forward_transform(k)
    deg = _numerical_band(k_spec.coefficients, cfg.u_grid.frequency_indices())
    if m_u < 2 * deg + 1:
        raise ValueError(
            f"quadrature undersampled: u-grid {m_u} < 2·deg(k)+1 = {2 * deg + 1}"
        )

    n_unique, n_index, lam_values = cfg._table("kernel")
    fc = forward_transform(f).coefficients
    mag = np.abs(fc)
    n_eff = 0
    if mag.max() > 0.0:
        active = (mag > _NUMERICAL_SUPPORT_RTOL * mag.max()) & (lam_values != 0)
        if active.any():
            n_eff = int(np.max(np.abs(n_unique[n_index[active]])))
    if m_u < deg + n_eff + 1:
        raise ValueError(
            f"quadrature undersampled: u-grid {m_u} < deg(k)+n_max+1 = "
            f"{deg + n_eff + 1} for this input's spectral support"
        )

    u_points = cfg.u_grid.points().reshape(-1, cfg.line.dim)
    k_values = k.values.reshape(-1)
    # Σ_u k(u) e^{-2πi u·n}, accumulated node by node over the u-grid
    total = np.zeros(n_unique.shape[0], dtype=complex)
    for u, kv in zip(u_points, k_values):
        total += kv * np.exp(-2j * np.pi * (n_unique @ u))
    total /= cfg.u_grid.total_points

    sym = lam_values * total[n_index]
    return inverse_transform(Spectrum(domain=cfg.line, coefficients=fc * sym))
