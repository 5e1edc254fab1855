"""Multiplier action of discrete symbols and kernel symbols, symbol
composition, and the modulation covariance of kernel translation."""

import numpy as np
import pytest

import weakmult as wm


def _random_f(domain, rng, max_idx=None):
    if max_idx is None:
        return wm.GridFunction(
            domain, rng.standard_normal(domain.shape) + 1j * rng.standard_normal(domain.shape)
        )
    inside = np.all(np.abs(domain.frequency_indices()) <= max_idx, axis=-1)
    c = np.where(inside, rng.standard_normal(domain.shape) + 1j * rng.standard_normal(domain.shape), 0)
    return wm.inverse_transform(wm.Spectrum(domain, c))


def test_identity_symbol():
    rng = np.random.default_rng(0)
    g = wm.build_torus_grid(1, 16)
    f = _random_f(g, rng)
    out = wm.apply_discrete_symbol(wm.constant_symbol(1, 7), f)
    assert np.max(np.abs(out.values - f.values)) < 1e-13 * np.max(np.abs(f.values))


def test_delta_symbol_projects_to_mean():
    rng = np.random.default_rng(1)
    g = wm.build_torus_grid(1, 16)
    f = _random_f(g, rng)
    out = wm.apply_discrete_symbol(wm.delta_symbol(1), f)
    assert np.allclose(out.values, np.mean(f.values))


def test_modulation_symbol_translates():
    # φ(n) = e^{-2πi n a} with a on the grid acts as translation by a
    rng = np.random.default_rng(2)
    g = wm.build_torus_grid(1, 16)
    f = _random_f(g, rng)
    shift_cells = 3
    a = shift_cells / 16
    n = np.arange(-7, 8)
    phi = wm.DiscreteSymbol(1, [[-7, 7]], np.exp(-2j * np.pi * n * a))
    out = wm.apply_discrete_symbol(phi, f)
    rolled = np.roll(f.values, shift_cells)
    assert np.max(np.abs(out.values - rolled)) < 1e-12 * np.max(np.abs(f.values))


def test_symbols_compose_pointwise():
    rng = np.random.default_rng(3)
    g = wm.build_torus_grid(1, 32)
    f = _random_f(g, rng)
    a = wm.random_symbol(1, 5, rng)
    b = wm.random_symbol(1, 5, rng)
    seq = wm.apply_discrete_symbol(a, wm.apply_discrete_symbol(b, f))
    prod_vals = a(a.lattice_points()) * b(a.lattice_points())
    prod = wm.DiscreteSymbol(1, a.window, prod_vals)
    once = wm.apply_discrete_symbol(prod, f)
    assert np.max(np.abs(seq.values - once.values)) < 1e-12 * np.max(np.abs(f.values))


def test_symbol_commutes_with_grid_translations():
    rng = np.random.default_rng(4)
    g = wm.build_torus_grid(1, 16)
    f = _random_f(g, rng)
    phi = wm.random_symbol(1, 5, rng)
    shifted_then_applied = wm.apply_discrete_symbol(
        phi, wm.GridFunction(g, np.roll(f.values, 5))
    )
    applied_then_shifted = np.roll(wm.apply_discrete_symbol(phi, f).values, 5)
    assert np.max(np.abs(shifted_then_applied.values - applied_then_shifted)) < 1e-12


def test_symbol_window_exceeding_band_refused():
    g = wm.build_torus_grid(1, 8)
    f = wm.GridFunction(g, np.ones(8))
    with pytest.raises(ValueError):
        wm.apply_discrete_symbol(wm.constant_symbol(1, 4), f)


def test_full_band_indicator_is_identity():
    rng = np.random.default_rng(5)
    lm = wm.build_line_model(1, 8, 64)
    f = _random_f(lm, rng)
    full = wm.indicator_kernel([[-4.0, 4.0]])
    out = wm.apply_kernel_symbol(full, f)
    assert np.max(np.abs(out.values - f.values)) < 1e-12 * np.max(np.abs(f.values))


def test_triangle_at_half_frequency():
    lm = wm.build_line_model(1, 16, 256)
    x = lm.points()[..., 0]
    f = wm.GridFunction(lm, np.exp(2j * np.pi * 0.5 * x))
    out = wm.apply_kernel_symbol(wm.triangle_kernel_spec(1), f)
    assert np.max(np.abs(out.values - 0.5 * f.values)) < 1e-12


def test_zero_kernel_gives_zero():
    rng = np.random.default_rng(6)
    lm = wm.build_line_model(1, 8, 64)
    f = _random_f(lm, rng)
    zero = wm.table_kernel([-4.0], [1 / 8], np.zeros(64))
    assert np.max(np.abs(wm.apply_kernel_symbol(zero, f).values)) == 0.0


def test_kernel_support_exceeding_band_refused():
    lm = wm.build_line_model(1, 16, 64)  # band [-2, 2)
    f = wm.GridFunction(lm, np.ones(64))
    wide = wm.indicator_kernel([[-3.0, 3.0]])
    with pytest.raises(ValueError):
        wm.apply_kernel_symbol(wide, f)


def test_kernel_multiplier_l2_bounded_by_sup():
    rng = np.random.default_rng(7)
    lm = wm.build_line_model(1, 8, 64)
    lam = wm.triangle_kernel_spec(1)
    sup = 1.0
    for _ in range(25):
        f = _random_f(lm, rng)
        out = wm.apply_kernel_symbol(lam, f)
        assert wm.lp_norm(out, 2.0) <= sup * wm.lp_norm(f, 2.0) * (1 + 1e-12)


def test_translate_kernel_box_arithmetic():
    tri = wm.triangle_kernel_spec(1)
    assert np.allclose(wm.translate_kernel(tri, 0.0).support_box, [[-1, 1]])
    shifted = wm.translate_kernel(tri, 0.5)
    assert np.allclose(shifted.support_box, [[-0.5, 1.5]])
    xs = np.linspace(-2, 2, 101)[:, None]
    assert np.allclose(shifted.evaluate(xs), tri.evaluate(xs - 0.5))


def test_translate_kernel_modulation_covariance():
    # T_{Λ(·-c)} f and T_Λ(e^{-2πicx} f) share all output magnitudes
    rng = np.random.default_rng(8)
    lm = wm.build_line_model(1, 16, 256)  # band [-8, 8), resolution 1/16
    x = lm.points()[..., 0]
    c = 3 / 16  # on the frequency grid
    lam = wm.triangle_kernel_spec(1)
    shifted = wm.translate_kernel(lam, c)
    for _ in range(50):
        f = _random_f(lm, rng, max_idx=64)  # keep content well inside the band
        a = wm.apply_kernel_symbol(shifted, f)
        modulated = wm.GridFunction(lm, np.exp(-2j * np.pi * c * x) * f.values)
        b = wm.apply_kernel_symbol(lam, modulated)
        sa = np.sort(np.abs(a.values))
        sb = np.sort(np.abs(b.values))
        assert np.max(np.abs(sa - sb)) < 1e-10 * max(sa[-1], 1e-30)
        # stronger: the distribution functions agree at every level
        for t in np.linspace(0, sa[-1], 7):
            assert wm.distribution_function(a, t) == wm.distribution_function(b, t)
