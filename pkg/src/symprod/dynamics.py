"""Characteristic flow on star-shaped boundaries and its ellipsoid model.

On a planar star-shaped boundary the characteristic advances at unit
sector-area rate: the angle moves so that the swept sector area equals the
elapsed time, and one period equals the enclosed area. The flow extends
1-homogeneously off the boundary (angles independent of the level). On a
2-product boundary the flow splits factor-wise at full speed, which makes it
conjugate to the Reeb rotation on the matching ellipsoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational

import numpy as np

from .geometry2d import EllipsoidSpec, RadialProfile, TWO_PI
from .product import ProductDomain


@dataclass
class FlowPoint:
    """Boundary point of a 2-product in per-factor (angle, level) form.

    The ambient point is z_i = level_i * R_i(angle_i) e^{i angle_i}; on the
    boundary the levels satisfy sum level_i^2 = 1.
    """

    angles: np.ndarray
    levels: np.ndarray

    def __post_init__(self):
        self.angles = np.mod(np.asarray(self.angles, dtype=float), TWO_PI)
        self.levels = np.asarray(self.levels, dtype=float)
        if self.angles.shape != self.levels.shape:
            raise ValueError("angles and levels must have matching shapes")
        if np.any(self.levels < 0.0):
            raise ValueError("levels must be nonnegative")

    def ambient(self, factors):
        """Reconstruct the point in complex coordinates."""
        radii = np.array([f.radius(t) for f, t in zip(factors, self.angles)])
        return self.levels * radii * np.exp(1j * self.angles)

    def level_norm(self):
        return float(np.sqrt(np.sum(self.levels ** 2)))


def char_flow_2d(profile, z, t):
    """Closed-form characteristic flow: sector area swept equals t.

    The gauge level is conserved exactly and the origin is fixed. Time is in
    area units; the minimal period on the boundary equals the domain area.
    """
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    theta = np.mod(np.angle(z), TWO_PI)
    level = np.where(r == 0.0, 0.0, r / profile.radius(theta))
    theta2 = np.mod(
        profile.inverse_sector_area(profile.sector_area(theta) + t), TWO_PI)
    out = level * profile.radius(theta2) * np.exp(1j * theta2)
    out = np.where(r == 0.0, 0.0 + 0.0j, out)
    return complex(out) if out.ndim == 0 else out


def _planar_factors(domain):
    if isinstance(domain, ProductDomain):
        if domain.p != 2.0:
            raise ValueError("splitting of the characteristic requires p = 2")
        factors = domain.factors
    else:
        factors = tuple(domain)
    for f in factors:
        if not isinstance(f, RadialProfile):
            raise TypeError("product flow needs planar (RadialProfile) factors")
    return factors


def product_flow(domain, point, t):
    """Characteristic flow on a 2-product boundary: factor-wise, full speed."""
    factors = _planar_factors(domain)
    angles = np.empty_like(point.angles)
    for i, f in enumerate(factors):
        angles[i] = np.mod(
            f.inverse_sector_area(f.sector_area(point.angles[i]) + t), TWO_PI)
    return FlowPoint(angles=angles, levels=point.levels.copy())


def reeb_ellipsoid(spec, z, t):
    """Reeb flow on E(a_1, ..., a_n): z_i -> e^{i 2 pi t / a_i} z_i."""
    if not isinstance(spec, EllipsoidSpec):
        spec = EllipsoidSpec(spec)
    z = np.asarray(z, dtype=complex)
    phases = np.exp(1j * TWO_PI * t / np.asarray(spec.areas))
    return z * phases


def conjugacy_map(factors, z, tol=1e-8):
    """Homeomorphism from the ellipsoid boundary onto the product boundary.

    Writes z_i = r_i e^{2 pi i theta_i}; the image factor is the flow for
    time theta_i * a_i applied to the base point at angle 0 with factor
    gauge level sqrt(pi r_i^2 / a_i).
    """
    factors = _planar_factors(factors)
    z = np.asarray(z, dtype=complex)
    areas = np.array([f.area for f in factors])
    r = np.abs(z)
    if abs(float(np.sum(np.pi * r ** 2 / areas)) - 1.0) > tol:
        raise ValueError("point is not on the ellipsoid boundary")
    theta = np.mod(np.angle(z), TWO_PI) / TWO_PI
    levels = np.sqrt(np.pi * r ** 2 / areas)
    angles = np.empty_like(levels)
    for i, f in enumerate(factors):
        angles[i] = np.mod(f.inverse_sector_area(theta[i] * areas[i]), TWO_PI)
    return FlowPoint(angles=angles, levels=levels)


def conjugacy_residual(factors, z, t):
    """Distance between Psi(Reeb^t z) and Phi^t(Psi(z)); zero up to rounding."""
    factors = _planar_factors(factors)
    areas = [f.area for f in factors]
    lhs = conjugacy_map(factors, reeb_ellipsoid(areas, z, t))
    rhs = product_flow(factors, conjugacy_map(factors, z), t)
    diff = lhs.ambient(factors) - rhs.ambient(factors)
    return float(np.sqrt(np.sum(np.abs(diff) ** 2)))


ACTIVE_LEVEL = 1e-12


def orbit_period(domain, point, tol=1e-8, denominator_bound=1000):
    """Least closing time of the product flow, or None within the bound.

    Closure requires t to be an integer multiple of every active factor's
    area. When all active areas are exact rationals the least common
    multiple is computed in integer arithmetic; otherwise candidate
    multiples of the largest active area are scanned with the tolerance
    applied to the fractional turn count.
    """
    factors = _planar_factors(domain)
    areas = [f.area for f in factors]
    active = [i for i in range(len(factors))
              if point.levels[i] > ACTIVE_LEVEL]
    if not active:
        return None
    if len(active) == 1:
        return areas[active[0]]

    raw = [getattr(factors[i], "exact_area", None) for i in active]
    if all(isinstance(v, Rational) for v in raw):
        fracs = [Fraction(v) for v in raw]
        num = fracs[0].numerator
        den = fracs[0].denominator
        for fr in fracs[1:]:
            num = num * fr.numerator // gcd(num, fr.numerator)
            den = gcd(den, fr.denominator)
        period = Fraction(num, den)
        bound = denominator_bound * max(float(f) for f in fracs)
        return float(period) if period <= bound else None

    a_max = max(areas[i] for i in active)
    others = [areas[i] for i in active]
    for k in range(1, denominator_bound + 1):
        t = k * a_max
        turns = np.array([t / a for a in others])
        if np.all(np.abs(turns - np.round(turns)) <= tol):
            return t
    return None


@dataclass
class FoliationReport:
    area: float
    samples: int
    seed: int
    passed: bool
    worst_deviation: float
    failures: int


def sample_boundary_flow_points(factors, count, seed):
    """Seeded FlowPoints on the product boundary (Dirichlet levels)."""
    rng = np.random.default_rng(seed)
    n = len(factors)
    t = rng.dirichlet(np.ones(n), size=count)
    angles = rng.uniform(0.0, TWO_PI, size=(count, n))
    return [FlowPoint(angles=angles[j], levels=np.sqrt(t[j]))
            for j in range(count)]


def is_foliated_by_systoles(domain, count, seed, tol=1e-8):
    """Check that every sampled boundary orbit closes at t = common area."""
    factors = _planar_factors(domain)
    areas = np.array([f.area for f in factors])
    if np.max(areas) - np.min(areas) > 1e-10:
        raise ValueError("systole foliation check requires equal factor areas")
    a = float(areas[0])
    worst = 0.0
    failures = 0
    for point in sample_boundary_flow_points(factors, count, seed):
        start = point.ambient(factors)
        end = product_flow(factors, point, a).ambient(factors)
        dev = float(np.max(np.abs(end - start)))
        worst = max(worst, dev)
        if dev > tol:
            failures += 1
    return FoliationReport(area=a, samples=count, seed=seed,
                           passed=failures == 0, worst_deviation=worst,
                           failures=failures)


def hamiltonian_flow_ode(profile, z0, t_final, steps):
    """RK4 integration of the gauge-squared Hamiltonian field (validation).

    The vector field i * grad H with H = gauge^2 is evaluated by central
    differences of the gauge; used only to cross-check the closed-form
    sector-area flow on C^1 profiles.
    """
    h = 1e-6 * np.sqrt(profile.area / np.pi)

    def velocity(z):
        z = np.atleast_1d(z)
        gx = (profile.gauge(z + h) ** 2 - profile.gauge(z - h) ** 2) / (2 * h)
        gy = (profile.gauge(z + 1j * h) ** 2 -
              profile.gauge(z - 1j * h) ** 2) / (2 * h)
        return 1j * (gx + 1j * gy)

    state = np.atleast_1d(np.asarray(z0, dtype=complex))
    dt = t_final / steps
    for _ in range(steps):
        k1 = velocity(state)
        k2 = velocity(state + 0.5 * dt * k1)
        k3 = velocity(state + 0.5 * dt * k2)
        k4 = velocity(state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return state if np.asarray(z0).ndim else complex(state[0])
