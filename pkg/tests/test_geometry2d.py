"""Profiles, sector areas, gauges."""

import numpy as np
import pytest

from symprod import geometry2d
from symprod.geometry2d import (EllipsoidSpec, RadialProfile, TWO_PI,
                                make_profile)

SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]


def preset_profiles():
    return {
        "disk": geometry2d.disk_profile(np.pi),
        "cosine": geometry2d.cosine_profile(np.pi),
        "square": geometry2d.polygon_profile(SQUARE),
        "weierstrass": geometry2d.weierstrass_profile(terms=20),
        "hunt": geometry2d.hunt_profile(terms=20, seed=3),
        "xz": geometry2d.xz_profile(),
    }


def trapezoid_area(profile, n=1 << 20):
    """Independent oracle: trapezoid rule for int 0.5 R^2 dtheta."""
    theta = np.linspace(0.0, TWO_PI, n + 1)
    r = profile.radius(theta)
    return np.trapezoid(0.5 * r * r, theta)


def test_disk_area_exact():
    assert geometry2d.disk_profile(2.5).area == pytest.approx(2.5, abs=1e-12)


def test_cosine_profile_area():
    assert geometry2d.cosine_profile(1.7).area == pytest.approx(1.7, abs=1e-9)


@pytest.mark.parametrize("name", list(preset_profiles()))
def test_area_against_trapezoid_oracle(name):
    profile = preset_profiles()[name]
    oracle = trapezoid_area(profile)
    assert profile.area == pytest.approx(oracle, rel=1e-6)


@pytest.mark.parametrize("name", list(preset_profiles()))
def test_sector_area_against_trapezoid_oracle(name):
    profile = preset_profiles()[name]
    for theta in [0.3, 1.0, np.pi, 5.0]:
        n = 1 << 18
        grid = np.linspace(0.0, theta, n + 1)
        r = profile.radius(grid)
        oracle = np.trapezoid(0.5 * r * r, grid)
        assert profile.sector_area(theta) == pytest.approx(
            oracle, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("name", list(preset_profiles()))
def test_inverse_sector_area_roundtrip(name):
    profile = preset_profiles()[name]
    rng = np.random.default_rng(42)
    theta = rng.uniform(0.0, TWO_PI, 5000)
    back = profile.inverse_sector_area(profile.sector_area(theta))
    err = np.abs(np.angle(np.exp(1j * (back - theta))))
    assert np.max(err) < 1e-9


def test_sector_area_monotone_and_total():
    profile = geometry2d.weierstrass_profile(terms=20)
    theta = np.linspace(0.0, TWO_PI, 10001)
    s = profile.sector_area(theta)
    assert np.all(np.diff(s) > 0.0)
    assert s[0] == pytest.approx(0.0, abs=1e-15)
    assert s[-1] == pytest.approx(profile.area, rel=1e-12)


@pytest.mark.parametrize("name", list(preset_profiles()))
def test_gauge_homogeneity(name):
    profile = preset_profiles()[name]
    rng = np.random.default_rng(7)
    z = rng.normal(size=200) + 1j * rng.normal(size=200)
    lam = rng.uniform(0.1, 5.0, 200)
    assert np.allclose(profile.gauge(lam * z), lam * profile.gauge(z),
                       rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("name", list(preset_profiles()))
def test_boundary_point_has_unit_gauge(name):
    profile = preset_profiles()[name]
    theta = np.linspace(0.0, TWO_PI, 257)
    z = profile.boundary_point(theta)
    assert np.allclose(profile.gauge(z), 1.0, atol=1e-12)


def test_polygon_square_radius():
    profile = geometry2d.polygon_profile(SQUARE)
    # support function of the unit square: R = 1 / max(|cos|, |sin|)
    theta = np.arange(4096) * (TWO_PI / 4096)
    expected = 1.0 / np.maximum(np.abs(np.cos(theta)), np.abs(np.sin(theta)))
    assert np.allclose(profile.radius(theta), expected, atol=1e-12)
    assert profile.area == pytest.approx(4.0, rel=1e-5)


def test_polygon_orientation_insensitive():
    ccw = geometry2d.polygon_profile(SQUARE)
    cw = geometry2d.polygon_profile(list(reversed(SQUARE)))
    theta = np.linspace(0.0, TWO_PI, 100)
    assert np.allclose(cw.radius(theta), ccw.radius(theta), atol=1e-12)


def test_polygon_rejects_nonstar():
    # origin outside the polygon
    with pytest.raises(ValueError):
        geometry2d.polygon_profile([(2, 2), (3, 2), (3, 3), (2, 3)])


def test_profile_rejects_nonpositive_radius():
    samples = np.ones(32)
    samples[5] = -0.1
    with pytest.raises(ValueError):
        RadialProfile(samples)


def test_ellipsoid_gauge_and_volume():
    spec = EllipsoidSpec([1.0, 2.0])
    assert spec.volume == pytest.approx(1.0, abs=1e-15)
    z = np.array([np.sqrt(1.0 / np.pi), 0.0], dtype=complex)
    assert spec.gauge(z) == pytest.approx(1.0, abs=1e-12)
    z = np.array([0.0, np.sqrt(2.0 / np.pi)], dtype=complex)
    assert spec.gauge(z) == pytest.approx(1.0, abs=1e-12)


def test_ellipsoid_requires_positive_areas():
    with pytest.raises(ValueError):
        EllipsoidSpec([1.0, 0.0])


def test_make_profile_dispatch():
    p = make_profile("disk", area=2.0)
    assert p.area == pytest.approx(2.0, abs=1e-12)
    p = make_profile("polygon", vertices=SQUARE)
    assert p.area == pytest.approx(4.0, rel=1e-5)
    with pytest.raises(ValueError):
        make_profile("nope")


def test_weierstrass_requires_convergent_series():
    with pytest.raises(ValueError):
        geometry2d.weierstrass_profile(a=1.5, b=3.0)
    with pytest.raises(ValueError):
        geometry2d.weierstrass_profile(a=0.5, b=0.9)


def test_functional_aliases_agree_with_methods():
    profile = geometry2d.cosine_profile(np.pi)
    theta = np.array([0.4, 2.2])
    assert np.allclose(geometry2d.sector_area(profile, theta),
                       profile.sector_area(theta))
    assert geometry2d.area(profile) == profile.area
    z = np.array([0.3 + 0.1j])
    assert np.allclose(geometry2d.gauge2d(profile, z), profile.gauge(z))
