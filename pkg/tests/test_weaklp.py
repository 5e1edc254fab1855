"""Distribution functions against a sort-based oracle, the weak/Lorentz
norm sandwich, and the empirical operator norm machinery."""

import json

import numpy as np
import pytest

import weakmult as wm

P_VALUES = (4 / 3, 2.0, 4.0)


def _grid(m=32):
    return wm.build_torus_grid(1, m)


def test_distribution_indicator():
    g = _grid(8)
    f = wm.GridFunction(g, [1, 1, 0, 0, 0, 0, 0, 0])  # |E| = 1/4
    assert wm.distribution_function(f, 0.5) == pytest.approx(0.25)
    assert wm.distribution_function(f, 1.5) == 0.0


def test_distribution_rejects_negative_threshold():
    g = _grid(8)
    f = wm.GridFunction(g, np.ones(8))
    with pytest.raises(ValueError):
        wm.distribution_function(f, -1.0)


def test_distribution_against_sorted_oracle():
    rng = np.random.default_rng(0)
    g = _grid(64)
    f = wm.GridFunction(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
    mags = np.sort(np.abs(f.values))
    for t in np.linspace(0, mags[-1] * 1.1, 20):
        oracle = np.searchsorted(mags, t, side="right")
        expect = (64 - oracle) / 64
        assert wm.distribution_function(f, t) == pytest.approx(expect)


def test_distribution_monotone_right_continuous():
    rng = np.random.default_rng(1)
    g = _grid(32)
    f = wm.GridFunction(g, rng.standard_normal(32))
    ts = np.linspace(0, 3, 50)
    vals = [wm.distribution_function(f, t) for t in ts]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    # right continuity at a value level: counting uses strict >
    level = np.abs(f.values).reshape(-1)[3]
    assert wm.distribution_function(f, level) == wm.distribution_function(f, level + 1e-15)


def test_weak_quasinorm_indicator():
    g = _grid(8)
    f = wm.GridFunction(g, 3.0 * np.array([1, 1, 0, 0, 0, 0, 0, 0]))
    for p in P_VALUES:
        assert wm.weak_quasinorm(f, p) == pytest.approx(3.0 * 0.25 ** (1 / p))


def test_weak_quasinorm_two_levels():
    # half the cells at 1, half at 2, p = 2: max(1, 2*sqrt(1/2)) = sqrt 2
    g = _grid(8)
    f = wm.GridFunction(g, [1, 1, 1, 1, 2, 2, 2, 2])
    assert wm.weak_quasinorm(f, 2.0) == pytest.approx(np.sqrt(2.0))


def test_weak_quasinorm_chebyshev():
    rng = np.random.default_rng(2)
    g = _grid(64)
    for _ in range(100):
        f = wm.GridFunction(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        for p in P_VALUES:
            assert wm.weak_quasinorm(f, p) <= wm.lp_norm(f, p) * (1 + 1e-12)


def test_weak_quasinorm_homogeneous():
    rng = np.random.default_rng(3)
    g = _grid(32)
    f = wm.GridFunction(g, rng.standard_normal(32))
    c = 3.7
    scaled = wm.GridFunction(g, c * f.values)
    assert wm.weak_quasinorm(scaled, 2.0) == pytest.approx(c * wm.weak_quasinorm(f, 2.0))


def test_weak_quasinorm_rejects_bad_p():
    g = _grid(8)
    f = wm.GridFunction(g, np.ones(8))
    for p in (1.0, 0.5, np.inf):
        with pytest.raises(ValueError):
            wm.weak_quasinorm(f, p)
        with pytest.raises(ValueError):
            wm.weak_star_norm(f, p)


def test_star_norm_flat_function():
    g = _grid(8)
    f = wm.GridFunction(g, [1, 1, 1, 0, 0, 0, 0, 0])
    for p in P_VALUES:
        assert wm.weak_star_norm(f, p) == pytest.approx((3 / 8) ** (1 / p))
        assert wm.weak_star_norm(f, p) == pytest.approx(wm.weak_quasinorm(f, p))


def test_sandwich_inequality():
    rng = np.random.default_rng(4)
    g = _grid(64)
    for _ in range(200):
        f = wm.GridFunction(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        for p in P_VALUES:
            q = wm.weak_quasinorm(f, p)
            s = wm.weak_star_norm(f, p)
            assert q <= s * (1 + 1e-12)
            assert s <= (p / (p - 1)) * q * (1 + 1e-12)


def test_star_norm_triangle_inequality():
    rng = np.random.default_rng(5)
    g = _grid(64)
    for _ in range(100):
        f = wm.GridFunction(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        h = wm.GridFunction(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        both = wm.GridFunction(g, f.values + h.values)
        for p in P_VALUES:
            assert wm.weak_star_norm(both, p) <= (
                wm.weak_star_norm(f, p) + wm.weak_star_norm(h, p)
            ) * (1 + 1e-12)


def test_estimate_identity_zero_scalar():
    g = _grid(16)
    spec = wm.CorpusSpec(per_family=4, seed=10)
    assert wm.estimate_operator_weak_norm(lambda f: f, 2.0, g, spec).estimate == pytest.approx(1.0)
    zero = wm.estimate_operator_weak_norm(
        lambda f: wm.GridFunction(g, np.zeros(16)), 2.0, g, spec
    )
    assert zero.estimate == 0.0
    c = 2.5 - 1.0j
    scaled = wm.estimate_operator_weak_norm(
        lambda f: wm.GridFunction(g, c * f.values), 2.0, g, spec
    )
    assert scaled.estimate == pytest.approx(abs(c))


def test_estimate_strong_identity_zero_constant_symbol():
    g = _grid(16)
    spec = wm.CorpusSpec(per_family=4, seed=10)
    assert wm.estimate_operator_strong_norm(lambda f: f, 2.0, g, spec).estimate == pytest.approx(1.0)
    phi = wm.constant_symbol(1, 7, value=1.5)
    op = wm.discrete_multiplier(phi)
    est = wm.estimate_operator_strong_norm(op, 2.0, g, spec)
    assert est.estimate == pytest.approx(1.5)


def test_weak_never_exceeds_strong():
    g = _grid(16)
    rng = np.random.default_rng(11)
    phi = wm.random_symbol(1, 5, rng)
    spec = wm.CorpusSpec(per_family=4, seed=12)
    op = wm.discrete_multiplier(phi)
    for p in P_VALUES:
        weak = wm.estimate_operator_weak_norm(op, p, g, spec)
        strong = wm.estimate_operator_strong_norm(op, p, g, spec)
        for (_, _, _, rw), (_, _, _, rs) in zip(weak.per_function, strong.per_function):
            assert rw <= rs * (1 + 1e-12)


def test_report_estimate_is_max_of_ratios():
    g = _grid(16)
    spec = wm.CorpusSpec(per_family=3, seed=13)
    rep = wm.estimate_operator_weak_norm(lambda f: f, 2.0, g, spec)
    assert rep.estimate == max(r for _, _, _, r in rep.per_function)


def test_corpus_deterministic():
    g = _grid(16)
    spec = wm.CorpusSpec(per_family=3, seed=21)
    a = wm.build_corpus(g, spec)
    b = wm.build_corpus(g, spec)
    assert [l for l, _ in a] == [l for l, _ in b]
    for (_, fa), (_, fb) in zip(a, b):
        assert np.array_equal(fa.values, fb.values)
    other = wm.build_corpus(g, wm.CorpusSpec(per_family=3, seed=22))
    assert any(
        not np.array_equal(fa.values, fo.values) for (_, fa), (_, fo) in zip(a, other)
    )


def test_corpus_id_tracks_spec_and_domain():
    g = _grid(16)
    s1 = wm.CorpusSpec(per_family=3, seed=21)
    s2 = wm.CorpusSpec(per_family=3, seed=22)
    assert wm.corpus_id(g, s1) == wm.corpus_id(g, s1)
    assert wm.corpus_id(g, s1) != wm.corpus_id(g, s2)
    assert wm.corpus_id(g, s1) != wm.corpus_id(_grid(32), s1)


def test_corpus_rejects_unknown_family():
    g = _grid(16)
    with pytest.raises(ValueError):
        wm.build_corpus(g, wm.CorpusSpec(families=("nope",), per_family=1))


def test_report_serialization():
    g = _grid(16)
    spec = wm.CorpusSpec(per_family=2, seed=1)
    rep = wm.estimate_operator_weak_norm(lambda f: f, 2.0, g, spec)
    blob = json.dumps(rep.to_json(), sort_keys=True)
    parsed = json.loads(blob)
    assert parsed["lower_bound"] is True
    assert parsed["estimate"] == rep.estimate
    csv_text = rep.to_csv()
    lines = csv_text.strip().split("\n")
    assert lines[0].startswith("label,")
    assert len(lines) == 1 + len(rep.per_function) + 2  # header + rows + footer
    assert "corpus_id" in lines[-2]
