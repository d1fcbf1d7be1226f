"""Area-preserving maps from disks onto star-shaped planar domains.

The primary object is the exact 1-homogeneous map

    psi(rho e^{i theta}) = rho sqrt(pi/a) R(phi(theta)) e^{i phi(theta)},

where phi is the monotone circle map solving S(phi(theta)) = (a / 2 pi) theta
for the cumulative sector area S. It preserves area wherever R is C^1 and
carries each circle of enclosed area A onto the sqrt(A/a)-scaled boundary.
A separate cutoff construction smooths the map near the origin by integrating
a time-dependent Hamiltonian and is used for the epsilon-sandwich check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry2d import RadialProfile, TWO_PI
from .product import ProductDomain, sample_complex_box


class MonotoneCircleMap:
    """Degree-one circle map phi with S(phi(theta)) = (a / 2 pi) theta."""

    def __init__(self, profile: RadialProfile):
        self.profile = profile
        grid = np.arange(profile.N) * (TWO_PI / profile.N)
        self.table = self.forward(grid)
        self.inverse_table = self.inverse(grid)

    def forward(self, theta):
        a = self.profile.area
        return self.profile.inverse_sector_area(
            np.asarray(theta, dtype=float) * (a / TWO_PI))

    def inverse(self, alpha):
        a = self.profile.area
        return self.profile.sector_area(alpha) * (TWO_PI / a)


def angle_map(profile):
    return MonotoneCircleMap(profile)


def disk_to_domain(profile, z):
    """Exact 1-homogeneous area-preserving map of D(area) onto the domain."""
    z = np.asarray(z, dtype=complex)
    a = profile.area
    rho = np.abs(z)
    theta = np.mod(np.angle(z), TWO_PI)
    phi = profile.inverse_sector_area(theta * (a / TWO_PI))
    out = rho * np.sqrt(np.pi / a) * profile.radius(phi) * np.exp(1j * phi)
    out = np.where(rho == 0.0, 0.0 + 0.0j, out)
    return complex(out) if out.ndim == 0 else out


def domain_to_disk(profile, w):
    """Inverse of disk_to_domain."""
    w = np.asarray(w, dtype=complex)
    a = profile.area
    alpha = np.mod(np.angle(w), TWO_PI)
    level = np.abs(w) / profile.radius(alpha)
    theta = profile.sector_area(alpha) * (TWO_PI / a)
    out = level * np.sqrt(a / np.pi) * np.exp(1j * theta)
    out = np.where(np.abs(w) == 0.0, 0.0 + 0.0j, out)
    return complex(out) if out.ndim == 0 else out


def product_map(factors, z):
    """Factor-wise disk_to_domain on a point of R^{2n} (complex length n)."""
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != len(factors):
        raise ValueError("point length does not match factor count")
    out = np.empty_like(z)
    for i, profile in enumerate(factors):
        out[..., i] = disk_to_domain(profile, z[..., i])
    return out


def product_map_inverse(factors, w):
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    for i, profile in enumerate(factors):
        out[..., i] = domain_to_disk(profile, w[..., i])
    return out


# -- cutoff (smoothed) map --------------------------------------------------

def _smoothstep(u):
    """Quintic smoothstep: 0 below 0, 1 above 1, C^2 across."""
    u = np.clip(u, 0.0, 1.0)
    return u ** 3 * (10.0 + u * (-15.0 + 6.0 * u))


def _smoothstep_d(u):
    inside = (u > 0.0) & (u < 1.0)
    u = np.clip(u, 0.0, 1.0)
    return np.where(inside, 30.0 * u ** 2 * (1.0 - u) ** 2, 0.0)


@dataclass
class CutoffMapConfig:
    """Parameters of the smoothed disk map.

    delta is the cutoff level in area units: the Hamiltonian is frozen well
    below it and untouched for pi |z|^2 >= delta. The smoothing ramp runs
    over [ramp_lo, ramp_hi] * delta / pi in |z|^2, leaving a safety band so
    trajectories started at pi |z|^2 >= delta stay in the exact regime.
    """

    delta: float
    steps: int = 256
    epsilon: float = 0.05
    ramp_lo: float = 0.2
    ramp_hi: float = 0.6

    def __post_init__(self):
        if self.delta <= 0.0:
            raise ValueError("cutoff level delta must be positive")
        if self.steps < 8:
            raise ValueError("need at least 8 integration steps")
        if not 0.0 < self.ramp_lo < self.ramp_hi <= 1.0:
            raise ValueError("need 0 < ramp_lo < ramp_hi <= 1")

    def rho(self, u):
        """Cutoff profile in u = |z|^2; identically 1 for u >= delta/pi."""
        span = (self.ramp_hi - self.ramp_lo) * self.delta / np.pi
        return _smoothstep((u - self.ramp_lo * self.delta / np.pi) / span)

    def rho_d(self, u):
        span = (self.ramp_hi - self.ramp_lo) * self.delta / np.pi
        return _smoothstep_d(
            (u - self.ramp_lo * self.delta / np.pi) / span) / span


def sandwich_delta(profile, epsilon, n_factors, shrink=0.9):
    """Cutoff level delta < a * eps'^2 with eps' < sqrt(eps/n)."""
    eps_prime = shrink * np.sqrt(epsilon / n_factors)
    return shrink * profile.area * eps_prime ** 2


def _contact_hamiltonian(profile, theta, t):
    """f_t on the circle for the interpolated isotopy, plus its derivative.

    The isotopy interpolates cumulative sector areas linearly,
    S_t = (1 - t) S_disk + t S, and f_t = -(a/2pi)(S - S_disk)/S_t'.
    The angular derivative is taken by central differences.
    """
    a = profile.area
    rate = a / TWO_PI

    def f(th):
        num = profile.sector_area(th) - rate * th
        r = profile.radius(th)
        den = (1.0 - t) * rate + t * 0.5 * r * r
        return -rate * num / den

    h = 1e-6
    val = f(theta)
    deriv = (f(theta + h) - f(theta - h)) / (2.0 * h)
    return val, deriv


def _cutoff_velocity(profile, config, z, t):
    """Hamiltonian vector field of rho(|z|^2) f_t(arg z) pi |z|^2 / a."""
    u = np.abs(z) ** 2
    theta = np.mod(np.angle(z), TWO_PI)
    rho = config.rho(u)
    rho_d = config.rho_d(u)
    active = rho > 0.0
    f = np.zeros_like(u)
    fd = np.zeros_like(u)
    if np.any(active):
        f_a, fd_a = _contact_hamiltonian(profile, theta[active], t)
        f[active] = f_a
        fd[active] = fd_a
    scale = np.pi / profile.area
    return scale * (2.0 * (rho_d * u + rho) * f * 1j * z - rho * fd * z)


def cutoff_disk_map(profile, config, z, inverse=False):
    """Time-1 map of the cutoff Hamiltonian flow (RK4, fixed steps).

    Smooth at the origin (identity in a neighborhood of 0) and agreeing with
    disk_to_domain for pi |z|^2 >= delta up to integration tolerance. With
    ``inverse`` set, integrates the field backwards from t = 1.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    state = np.atleast_1d(z).astype(complex)
    n = config.steps
    dt = -1.0 / n if inverse else 1.0 / n
    t = 1.0 if inverse else 0.0
    for _ in range(n):
        k1 = _cutoff_velocity(profile, config, state, t)
        k2 = _cutoff_velocity(profile, config, state + 0.5 * dt * k1, t + 0.5 * dt)
        k3 = _cutoff_velocity(profile, config, state + 0.5 * dt * k2, t + 0.5 * dt)
        k4 = _cutoff_velocity(profile, config, state + dt * k3, t + dt)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
    return complex(state[0]) if scalar else state


def verify_cutoff_containment(profile, config, eps_prime, rings=5, angles=64):
    """Check that the cutoff map sends D(delta) inside eps' * domain.

    Scans concentric rings of D(delta); returns the worst gauge ratio
    (<= 1 means the containment of the sandwich construction holds).
    """
    worst = 0.0
    for level in np.linspace(0.2, 1.0, rings):
        radius = np.sqrt(level * config.delta / np.pi)
        theta = np.arange(angles) * (TWO_PI / angles)
        img = cutoff_disk_map(profile, config, radius * np.exp(1j * theta))
        worst = max(worst, float(np.max(profile.gauge(img))) / eps_prime)
    return worst


# -- epsilon-sandwich check -------------------------------------------------

@dataclass
class SandwichReport:
    epsilon: float
    samples: int
    seed: int
    deltas: list
    violations_outer: int
    violations_inner: int
    worst_outer_gauge: float
    worst_inner_gauge: float
    offenders: list = field(default_factory=list)

    @property
    def passed(self):
        return self.violations_outer == 0 and self.violations_inner == 0


def sandwich_check(factors, epsilon, samples, seed, steps=64, deltas=None):
    """Verify (1-eps) product  subset  Psi(E)  subset  (1+eps) product.

    Outer direction: map seeded uniform samples of E(a_1, ..., a_n) through
    the cutoff map and check product gauge <= 1 + eps. Inner direction: draw
    samples of (1-eps) * product, pull back per factor by backward
    integration, and check the preimage lies in E.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    factors = list(factors)
    n = len(factors)
    areas = np.array([f.area for f in factors])
    if deltas is None:
        deltas = [sandwich_delta(f, epsilon, n) for f in factors]
    configs = [CutoffMapConfig(delta=d, steps=steps, epsilon=epsilon)
               for d in deltas]
    domain = ProductDomain(factors, p=2.0)
    rng = np.random.default_rng(seed)

    # Outer: samples of E, pushed forward.
    disk_radii = np.sqrt(areas / np.pi)
    ellipsoid_pts = _rejection_sample(
        rng, disk_radii,
        lambda pts: np.sqrt(np.sum(np.pi * np.abs(pts) ** 2 / areas, axis=-1)),
        samples)
    image = np.empty_like(ellipsoid_pts)
    for i, (f, cfg) in enumerate(zip(factors, configs)):
        image[:, i] = cutoff_disk_map(f, cfg, ellipsoid_pts[:, i])
    outer_gauge = domain.gauge(image)
    outer_bad = outer_gauge > 1.0 + epsilon

    # Inner: samples of (1 - eps) * product, pulled back.
    box_radii = (1.0 - epsilon) * domain.bounding_radii()
    target = _rejection_sample(
        rng, box_radii, lambda pts: domain.gauge(pts) / (1.0 - epsilon),
        samples)
    preimage = np.empty_like(target)
    for i, (f, cfg) in enumerate(zip(factors, configs)):
        preimage[:, i] = cutoff_disk_map(f, cfg, target[:, i], inverse=True)
    inner_gauge = np.sqrt(
        np.sum(np.pi * np.abs(preimage) ** 2 / areas, axis=-1))
    inner_bad = inner_gauge > 1.0

    offenders = []
    for idx in np.flatnonzero(outer_bad)[:5]:
        offenders.append(("outer", ellipsoid_pts[idx], float(outer_gauge[idx])))
    for idx in np.flatnonzero(inner_bad)[:5]:
        offenders.append(("inner", target[idx], float(inner_gauge[idx])))

    return SandwichReport(
        epsilon=epsilon,
        samples=samples,
        seed=seed,
        deltas=list(deltas),
        violations_outer=int(np.count_nonzero(outer_bad)),
        violations_inner=int(np.count_nonzero(inner_bad)),
        worst_outer_gauge=float(np.max(outer_gauge)),
        worst_inner_gauge=float(np.max(inner_gauge)),
        offenders=offenders,
    )


def _rejection_sample(rng, radii, gauge_fn, count):
    """Uniform samples of {gauge <= 1} by rejection from the bounding box."""
    out = []
    have = 0
    while have < count:
        draw = max(4096, int(1.5 * (count - have)))
        pts = sample_complex_box(rng, radii, draw)
        keep = pts[gauge_fn(pts) <= 1.0]
        out.append(keep)
        have += keep.shape[0]
    return np.concatenate(out)[:count]
