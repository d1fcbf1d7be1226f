"""Fractal families and the box-counting dimension estimator."""

import numpy as np
import pytest

from symprod import fractal, geometry2d


def test_weierstrass_eval_matches_series():
    fn = fractal.Weierstrass(a=0.5, b=3.0, terms=10)
    x = np.linspace(0.0, 1.0, 7)
    expected = sum(0.5 ** k * np.cos(2.0 * np.pi * 3.0 ** k * x)
                   for k in range(11))
    assert np.allclose(fn(x), expected, atol=1e-12)


def test_graph_dimension_formula():
    fn = fractal.Weierstrass(a=0.5, b=3.0, terms=10)
    assert fn.graph_dimension == pytest.approx(
        2.0 + np.log(0.5) / np.log(3.0))


def test_weierstrass_rejects_divergent_parameters():
    with pytest.raises(ValueError):
        fractal.Weierstrass(a=1.2, b=3.0, terms=5)
    with pytest.raises(ValueError):
        fractal.Weierstrass(a=0.5, b=1.2, terms=5)  # a * b <= 1


def test_phase_shifted_family_seeded():
    f1 = fractal.PhaseShiftedWeierstrass(a=0.5, b=3.0, terms=8, seed=3)
    f2 = fractal.PhaseShiftedWeierstrass(a=0.5, b=3.0, terms=8, seed=3)
    x = np.linspace(0.0, 1.0, 50)
    assert np.allclose(f1(x), f2(x))
    assert f1.graph_dimension == pytest.approx(2.0 + np.log(0.5) / np.log(3.0))


def test_xiao_zhou_family_evaluates():
    fn = fractal.XiaoZhou(a=0.5, alpha=1.2, beta=1.5, terms=10)
    vals = fn(np.linspace(0.0, 1.0, 32))
    assert np.all(np.isfinite(vals))


def test_make_fractal_dispatch():
    fn = fractal.make_fractal("weierstrass", a=0.5, b=3.0, terms=5)
    assert isinstance(fn, fractal.Weierstrass)
    with pytest.raises(ValueError):
        fractal.make_fractal("unknown")


def test_box_count_unit_segment():
    """[TRIVIAL] oracle: a unit segment meets ~1/eps grid cells."""
    t = np.linspace(0.0, 1.0, 100001)
    pts = np.stack([t, np.zeros_like(t)], axis=1)
    for k in (4, 16, 64):
        n = fractal.box_count(pts, 1.0 / k, offset=np.zeros(2))
        assert k <= n <= k + 1


def test_segment_dimension_is_one():
    scales = 2.0 ** -np.arange(4, 12)
    counts = fractal.count_scales(fractal.segment_sampler(), scales, seed=0)
    est = fractal.estimate_dimension(scales, counts)
    assert est.slope == pytest.approx(1.0, abs=0.02)


def test_counts_increase_as_scale_shrinks():
    fn = fractal.Weierstrass(a=0.5, b=3.0, terms=20)
    scales = 2.0 ** -np.arange(4, 11)
    counts = fractal.count_scales(fractal.graph_sampler(fn), scales, seed=1)
    assert np.all(np.diff(counts) > 0)


def test_weierstrass_graph_dimension_coarse():
    fn = fractal.Weierstrass(a=0.5, b=3.0, terms=30)
    scales = 2.0 ** -np.arange(4, 12)
    counts = fractal.count_scales(fractal.graph_sampler(fn), scales, seed=2)
    est = fractal.estimate_dimension(scales, counts)
    assert est.slope == pytest.approx(fn.graph_dimension, abs=0.1)
    assert est.r_squared > 0.999


def test_truncation_stability():
    """Estimates for K and K + 10 terms agree within confidence widths."""
    scales = 2.0 ** -np.arange(4, 12)
    ests = []
    for terms in (20, 30):
        fn = fractal.Weierstrass(a=0.5, b=3.0, terms=terms)
        counts = fractal.count_scales(fractal.graph_sampler(fn), scales,
                                      seed=3)
        ests.append(fractal.estimate_dimension(scales, counts, bootstrap=50))
    gap = abs(ests[0].slope - ests[1].slope)
    assert gap <= ests[0].ci_halfwidth + ests[1].ci_halfwidth + 1e-3


def test_product_rule_counts_multiply():
    base = np.array([10.0, 40.0, 160.0])
    scales = np.array([0.25, 0.125, 0.0625])
    out = fractal.product_interval_count(base, scales, z_length=1.0)
    assert np.allclose(out, base * np.ceil(1.0 / scales))


def test_estimate_dimension_requires_enough_scales():
    with pytest.raises(ValueError):
        fractal.estimate_dimension([0.5, 0.25], [2, 4])


def test_fill_segments_covers_jumps():
    x = np.array([0.0, 1.0])
    y = np.array([0.0, 1.0])
    pts = fractal.fill_segments(x, y, pitch=0.1)
    # vertical fill inserts intermediate y values at the jump
    assert pts.shape[0] >= 10
    assert np.max(np.abs(np.diff(np.sort(pts[:, 1])))) <= 0.1 + 1e-12


def test_boundary_patch_rejects_singular_box():
    profile = geometry2d.disk_profile(np.pi)
    with pytest.raises(ValueError):
        fractal.boundary_patch_counts(profile, [1.0],
                                      scales=2.0 ** -np.arange(3, 8),
                                      r1_range=(0.5, 1.0))


def test_boundary_patch_rejects_multiple_tail_factors():
    profile = geometry2d.disk_profile(np.pi)
    with pytest.raises(NotImplementedError):
        fractal.boundary_patch_counts(profile, [1.0, 1.0],
                                      scales=2.0 ** -np.arange(3, 8))


def test_boundary_graph_sampler_points_on_boundary():
    profile = geometry2d.disk_profile(np.pi)
    sampler = fractal.boundary_graph_sampler(profile, [1.0])
    pts = sampler(pitch=0.05)
    z1 = pts[:, 0] + 1j * pts[:, 1]
    z2 = pts[:, 2] + 1j * pts[:, 3]
    g = profile.gauge(z1) ** 2 + np.pi * np.abs(z2) ** 2 / 1.0
    assert np.allclose(g, 1.0, atol=1e-10)
