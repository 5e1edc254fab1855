"""Domain construction, container invariants, and symbol/kernel file I/O."""

import json

import numpy as np
import pytest

import weakmult as wm


def test_torus_grid_basic():
    g = wm.build_torus_grid(1, 8)
    assert g.total_points == 8
    assert g.cell_volume == pytest.approx(1 / 8)
    assert np.allclose(g.points()[..., 0], np.arange(8) / 8)

    g2 = wm.build_torus_grid(2, 4)
    assert g2.total_points == 16
    assert float(g2.cell_volume) == pytest.approx(1 / 16)


def test_torus_cell_volume_exact():
    # rational bookkeeping: cell_volume * M^N == 1 identically, even for M=12
    g = wm.build_torus_grid(2, 12)
    assert g.cell_volume * g.total_points == 1


def test_torus_grid_rejects_degenerate():
    with pytest.raises(ValueError):
        wm.build_torus_grid(1, 1)
    with pytest.raises(ValueError):
        wm.build_torus_grid(0, 8)


def test_torus_frequency_band():
    g = wm.build_torus_grid(1, 8)
    assert g.min_frequency == -4 and g.max_frequency == 3
    g = wm.build_torus_grid(1, 9)
    assert g.min_frequency == -4 and g.max_frequency == 4


def test_line_model_basic():
    lm = wm.build_line_model(1, 16, 256)
    assert lm.spacing_float == pytest.approx(1 / 16)
    assert float(lm.freq_halfwidth) == 8
    ax = lm.frequency_axis()
    assert ax[0] == -8 and ax[-1] == pytest.approx(8 - 1 / 16)
    # duality: h * (1/P) * M_R == 1 exactly
    assert lm.spacing * lm.freq_resolution * lm.samples_per_period == 1


def test_line_model_band_too_small():
    with pytest.raises(ValueError):
        wm.build_line_model(1, 16, 16)


def test_line_model_2d():
    lm = wm.build_line_model(2, 8, 64)
    assert lm.spacing_float == pytest.approx(1 / 8)
    assert float(lm.freq_halfwidth) == 4


def test_line_model_rejects_odd():
    with pytest.raises(ValueError):
        wm.build_line_model(1, 15, 256)
    with pytest.raises(ValueError):
        wm.build_line_model(1, 16, 255)


def test_grid_function_rejects_nonfinite():
    g = wm.build_torus_grid(1, 4)
    with pytest.raises(ValueError):
        wm.GridFunction(g, [1.0, np.nan, 0.0, 0.0])
    with pytest.raises(ValueError):
        wm.GridFunction(g, [1.0, np.inf, 0.0, 0.0])
    with pytest.raises(ValueError):
        wm.GridFunction(g, [1.0, 2.0])  # wrong count


def test_grid_function_immutable():
    g = wm.build_torus_grid(1, 4)
    f = wm.GridFunction(g, np.ones(4))
    with pytest.raises(ValueError):
        f.values[0] = 5.0


def test_spectrum_roundtrip_invariant():
    rng = np.random.default_rng(0)
    for domain in (wm.build_torus_grid(2, 8), wm.build_line_model(1, 4, 32)):
        f = wm.GridFunction(
            domain, rng.standard_normal(domain.shape) + 1j * rng.standard_normal(domain.shape)
        )
        back = wm.inverse_transform(wm.forward_transform(f))
        assert np.max(np.abs(back.values - f.values)) <= 1e-12 * np.max(np.abs(f.values))


def test_spectrum_coefficient_accessor():
    g = wm.build_torus_grid(1, 8)
    c = wm.spectrum_from_coefficients(g, [([3], 2.5)])
    assert c.coefficient([3]) == 2.5
    assert c.coefficient([0]) == 0.0
    with pytest.raises(IndexError):
        c.coefficient([4])  # outside the band for M=8


def test_discrete_symbol_window_and_call():
    phi = wm.DiscreteSymbol(1, [[-2, 2]], [1, 2, 3, 4, 5])
    assert phi(np.array([0])) == 3
    assert phi(np.array([-2])) == 1
    assert phi(np.array([7])) == 0  # implicit zero outside the window
    assert phi.sup_norm == 5
    assert phi.max_abs_frequency == 2


def test_discrete_symbol_rejects_bad():
    with pytest.raises(ValueError):
        wm.DiscreteSymbol(1, [[2, -2]], [1])
    with pytest.raises(ValueError):
        wm.DiscreteSymbol(1, [[-1, 1]], [1, np.nan, 2])


def test_symbol_json_roundtrip(tmp_path):
    rng = np.random.default_rng(3)
    phi = wm.random_symbol(2, 2, rng)
    path = tmp_path / "phi.json"
    wm.save_symbol(phi, path)
    obj = json.loads(path.read_text())
    assert obj["dim"] == 2 and obj["window"] == [[-2, 2], [-2, 2]]
    assert len(obj["re"]) == 25  # row-major flattening of the window box
    back = wm.load_symbol(path)
    assert back.equals(phi)


def test_kernel_json_roundtrip(tmp_path):
    specs = [
        wm.tent_kernel(2),
        wm.triangle_kernel_spec(1),
        wm.indicator_kernel([[0.25, 0.75]]),
        wm.reduce_support_affine(wm.triangle_kernel_spec(1), 1.0),
        wm.table_kernel([0.0], [0.5], np.array([1.0, 2.0, 0.5])),
    ]
    pts = np.linspace(-2, 2, 41)[:, None]
    for i, spec in enumerate(specs):
        path = tmp_path / f"k{i}.json"
        wm.save_kernel(spec, path)
        back = wm.load_kernel(path)
        if spec.form == "table":
            query = np.array([[0.0], [0.5], [1.0], [2.0]])
            assert np.allclose(back.evaluate(query), spec.evaluate(query))
        elif spec.dim == 1:
            assert np.allclose(back.evaluate(pts), spec.evaluate(pts))
        else:
            pts2 = np.stack([np.linspace(-2, 2, 21)] * 2, axis=-1)
            assert np.allclose(back.evaluate(pts2), spec.evaluate(pts2))


def test_kernel_zero_outside_support():
    tri = wm.triangle_kernel_spec(1)
    assert tri.evaluate(np.array([1.5])) == 0.0
    assert tri.evaluate(np.array([-1.0])) == 0.0
    tent = wm.tent_kernel(1)
    assert tent.evaluate(np.array([1.1])) == 0.0


def test_table_kernel_alignment_contract():
    tab = wm.table_kernel([0.0], [0.25], np.array([1.0, 2.0, 3.0]))
    assert tab.evaluate(np.array([0.25])) == 2.0
    with pytest.raises(ValueError):
        tab.evaluate(np.array([0.3]))  # off the sample grid
