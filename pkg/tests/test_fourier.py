"""Transform engine: orthogonality, Parseval against a direct-summation
oracle, the convolution theorem against a brute-force sum, and the Fejér
kernel's frozen coefficients."""

import numpy as np
import pytest

import weakmult as wm


def test_forward_pure_exponential():
    g = wm.build_torus_grid(1, 8)
    x = g.points()[..., 0]
    c = wm.forward_transform(wm.GridFunction(g, np.exp(2j * np.pi * x)))
    assert abs(c.coefficient([1]) - 1.0) < 1e-14
    others = [abs(c.coefficient([n])) for n in range(-4, 4) if n != 1]
    assert max(others) < 1e-14


def test_forward_impulse():
    g = wm.build_torus_grid(1, 8)
    v = np.zeros(8)
    v[0] = 1.0
    c = wm.forward_transform(wm.GridFunction(g, v))
    assert np.allclose(c.coefficients, 1 / 8)


def _direct_forward(f):
    """Direct O(M^2N) summation oracle for the weighted DFT."""
    d = f.domain
    pts = d.points().reshape(-1, d.dim)
    if isinstance(d, wm.TorusGrid):
        freqs = d.frequency_indices().reshape(-1, d.dim).astype(float)
        w = d.cell_volume_float
    else:
        freqs = d.frequencies().reshape(-1, d.dim)
        w = d.spacing_float**d.dim
    phases = np.exp(-2j * np.pi * freqs @ pts.T)
    return (phases @ f.values.reshape(-1)) * w


@pytest.mark.parametrize(
    "domain", [wm.build_torus_grid(1, 16), wm.build_torus_grid(2, 6), wm.build_line_model(1, 4, 16)]
)
def test_forward_matches_direct_sum(domain):
    rng = np.random.default_rng(1)
    f = wm.GridFunction(
        domain, rng.standard_normal(domain.shape) + 1j * rng.standard_normal(domain.shape)
    )
    fast = wm.forward_transform(f).coefficients.reshape(-1)
    slow = _direct_forward(f)
    assert np.max(np.abs(fast - slow)) < 1e-12 * np.max(np.abs(slow))


def test_parseval_random():
    rng = np.random.default_rng(2)
    for domain in (wm.build_torus_grid(1, 32), wm.build_line_model(1, 8, 64)):
        for _ in range(20):
            f = wm.GridFunction(
                domain,
                rng.standard_normal(domain.shape) + 1j * rng.standard_normal(domain.shape),
            )
            c = wm.forward_transform(f)
            if isinstance(domain, wm.TorusGrid):
                spatial = np.sum(np.abs(f.values) ** 2) * domain.cell_volume_float
                dual = np.sum(np.abs(c.coefficients) ** 2)
            else:
                spatial = np.sum(np.abs(f.values) ** 2) * domain.spacing_float
                dual = np.sum(np.abs(c.coefficients) ** 2) / domain.period
            assert abs(spatial - dual) < 1e-12 * spatial


def test_inverse_constant():
    g = wm.build_torus_grid(1, 8)
    f = wm.inverse_transform(wm.spectrum_from_coefficients(g, [([0], 1.0)]))
    assert np.allclose(f.values, 1.0)


def test_roundtrip_many():
    rng = np.random.default_rng(3)
    g = wm.build_torus_grid(1, 32)
    for _ in range(100):
        f = wm.GridFunction(g, rng.standard_normal(32) + 1j * rng.standard_normal(32))
        back = wm.inverse_transform(wm.forward_transform(f))
        assert np.max(np.abs(back.values - f.values)) <= 1e-12 * np.max(np.abs(f.values))


def test_inverse_linearity():
    rng = np.random.default_rng(4)
    g = wm.build_torus_grid(1, 16)
    c1 = wm.Spectrum(g, rng.standard_normal(16) + 1j * rng.standard_normal(16))
    c2 = wm.Spectrum(g, rng.standard_normal(16) + 1j * rng.standard_normal(16))
    a, b = 2.0 - 1j, -0.5 + 3j
    combo = wm.inverse_transform(wm.Spectrum(g, a * c1.coefficients + b * c2.coefficients))
    split = a * wm.inverse_transform(c1).values + b * wm.inverse_transform(c2).values
    assert np.max(np.abs(combo.values - split)) < 1e-12 * np.max(np.abs(split))


def _direct_convolve(k, f):
    """Brute-force periodic convolution, O(M^{2N})."""
    g = k.domain
    m = g.points_per_dim
    idx = np.stack(np.meshgrid(*([np.arange(m)] * g.dim), indexing="ij"), axis=-1)
    flat = idx.reshape(-1, g.dim)
    out = np.zeros(flat.shape[0], dtype=complex)
    kv = k.values
    fv = f.values
    for i, x in enumerate(flat):
        diff = (x - flat) % m
        out[i] = np.sum(kv[tuple(flat.T)] * fv[tuple(diff.T)])
    return out.reshape(g.shape) * g.cell_volume_float


@pytest.mark.parametrize("grid", [wm.build_torus_grid(1, 16), wm.build_torus_grid(2, 6)])
def test_convolution_against_direct_sum(grid):
    rng = np.random.default_rng(5)
    k = wm.GridFunction(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    f = wm.GridFunction(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    fast = wm.convolve_periodic(k, f)
    slow = _direct_convolve(k, f)
    assert np.max(np.abs(fast.values - slow)) < 1e-10 * np.max(np.abs(slow))


def test_convolution_delta_and_mean():
    rng = np.random.default_rng(6)
    g = wm.build_torus_grid(1, 8)
    f = wm.GridFunction(g, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    delta = np.zeros(8)
    delta[0] = 8.0  # unit mass after the cell weight
    out = wm.convolve_periodic(wm.GridFunction(g, delta), f)
    assert np.allclose(out.values, f.values)
    ones = wm.GridFunction(g, np.ones(8))
    out = wm.convolve_periodic(ones, f)
    assert np.allclose(out.values, np.mean(f.values))


def test_convolution_theorem_coefficientwise():
    rng = np.random.default_rng(7)
    g = wm.build_torus_grid(1, 16)
    k = wm.GridFunction(g, rng.standard_normal(16))
    f = wm.GridFunction(g, rng.standard_normal(16))
    conv = wm.forward_transform(wm.convolve_periodic(k, f)).coefficients
    prod = wm.forward_transform(k).coefficients * wm.forward_transform(f).coefficients
    assert np.max(np.abs(conv - prod)) < 1e-12


def test_convolution_rejects_mismatched_grids():
    f1 = wm.GridFunction(wm.build_torus_grid(1, 8), np.ones(8))
    f2 = wm.GridFunction(wm.build_torus_grid(1, 16), np.ones(16))
    with pytest.raises(ValueError):
        wm.convolve_periodic(f1, f2)


def test_fejer_kernel_j1_frozen():
    g = wm.build_torus_grid(1, 8)
    k = wm.fejer_kernel(1, g)
    assert k.values[0].real == pytest.approx(2.0, abs=1e-13)  # 1 + 2*(1/2)
    c = wm.forward_transform(k)
    for n, want in ((-1, 0.5), (0, 1.0), (1, 0.5), (2, 0.0)):
        assert abs(c.coefficient([n]) - want) < 1e-13


def test_fejer_j0_constant():
    g = wm.build_torus_grid(1, 8)
    k = wm.fejer_kernel(0, g)
    assert np.allclose(k.values, 1.0)


@pytest.mark.parametrize("j", [1, 2, 5, 10])
def test_fejer_positive_mean_one(j):
    g = wm.build_torus_grid(1, 64)
    k = wm.fejer_kernel(j, g)
    assert k.values.real.min() >= -1e-12
    assert abs(k.values.real.mean() - 1.0) < 1e-12


def test_fejer_rejects_unresolved():
    with pytest.raises(ValueError):
        wm.fejer_kernel(4, wm.build_torus_grid(1, 8))


def test_symbol_to_kernel_examples():
    g = wm.build_torus_grid(1, 16)
    k = wm.symbol_to_kernel(wm.delta_symbol(1), g)
    assert np.allclose(k.values, 1.0)
    phi = wm.DiscreteSymbol(1, [[1, 1]], [1.0])
    k = wm.symbol_to_kernel(phi, g)
    x = g.points()[..., 0]
    assert np.max(np.abs(k.values - np.exp(2j * np.pi * x))) < 1e-13


def test_symbol_to_kernel_coefficient_roundtrip():
    rng = np.random.default_rng(8)
    g = wm.build_torus_grid(1, 32)
    phi = wm.random_symbol(1, 6, rng)
    c = wm.forward_transform(wm.symbol_to_kernel(phi, g))
    recovered = np.array([c.coefficient([n]) for n in range(-6, 7)])
    assert np.max(np.abs(recovered - phi.values)) < 1e-12


def test_symbol_to_kernel_window_too_large():
    with pytest.raises(ValueError):
        wm.symbol_to_kernel(wm.constant_symbol(1, 5), wm.build_torus_grid(1, 10))


def test_evaluate_spectrum_interpolates():
    g = wm.build_torus_grid(1, 16)
    phi = wm.DiscreteSymbol(1, [[2, 2]], [1.0])
    f = wm.symbol_to_kernel(phi, g)
    spec = wm.forward_transform(f)
    pts = np.array([[0.1], [0.37], [0.77]])
    vals = wm.evaluate_spectrum(spec, pts)
    assert np.max(np.abs(vals - np.exp(2j * np.pi * 2 * pts[:, 0]))) < 1e-12
