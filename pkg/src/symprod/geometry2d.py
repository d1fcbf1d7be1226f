"""Radial-profile representation of star-shaped planar domains.

A domain is encoded by its boundary radius R(theta) sampled on a uniform
angular grid. Everything downstream (area-preserving maps, boundary flows,
volume estimates) reduces to three primitives implemented here: the radius
interpolant, the cumulative sector area S(theta) = int_0^theta R(u)^2/2 du,
and its inverse.
"""

from __future__ import annotations

import numbers

import numpy as np
from scipy.interpolate import CubicSpline

TWO_PI = 2.0 * np.pi

# Quadrature refinement factor for the cumulative sector-area table.
REFINE = 8

# 4-point Gauss-Legendre nodes/weights on [0, 1]; exact through degree 7,
# in particular for the square of a cubic radius interpolant.
_GL_NODES = 0.5 * (1.0 + np.array(
    [-0.8611363115940526, -0.3399810435848563,
     0.3399810435848563, 0.8611363115940526]))
_GL_WEIGHTS = 0.5 * np.array(
    [0.3478548451374538, 0.6521451548625461,
     0.6521451548625461, 0.3478548451374538])


def wrap_angle(theta):
    """Reduce angles to [0, 2*pi), returning (wrapped, winding number)."""
    theta = np.asarray(theta, dtype=float)
    winds = np.floor(theta / TWO_PI)
    wrapped = theta - winds * TWO_PI
    # Guard against wrapped == 2*pi from rounding.
    over = wrapped >= TWO_PI
    wrapped = np.where(over, 0.0, wrapped)
    winds = winds + over
    return wrapped, winds


class RadialProfile:
    """Star-shaped planar domain given by boundary radii on a uniform grid.

    Parameters
    ----------
    samples : array_like
        Strictly positive radii R(theta_j) at theta_j = 2*pi*j/N.
    interpolation : {"linear", "cubic"}
        Periodic interpolation rule between grid nodes.
    smooth : bool
        Set for profiles known to be C^1 (enables derivative-based checks).

    The instance is immutable after construction; all methods are pure and
    accept scalars or arrays.
    """

    def __init__(self, samples, interpolation="linear", smooth=False):
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 1 or samples.size < 16:
            raise ValueError("need a 1-d array of at least 16 radius samples")
        if interpolation not in ("linear", "cubic"):
            raise ValueError(f"unknown interpolation {interpolation!r}")
        if not np.all(samples > 0.0):
            raise ValueError("radius samples must be strictly positive")

        self.samples = samples
        self.samples.setflags(write=False)
        self.N = samples.size
        self.interpolation = interpolation
        self.smoothness_flag = bool(smooth)

        if interpolation == "cubic":
            grid = np.linspace(0.0, TWO_PI, self.N + 1)
            vals = np.append(samples, samples[0])
            self._spline = CubicSpline(grid, vals, bc_type="periodic")
        else:
            self._spline = None

        # Refined grid for the cumulative sector-area table.
        self._M = REFINE * self.N
        self._h = TWO_PI / self._M
        self._ref_theta = np.arange(self._M + 1) * self._h
        ref_r = self.radius(self._ref_theta[:-1])
        if not np.all(ref_r > 0.0):
            raise ValueError(
                "interpolated radius is non-positive on the refined grid; "
                "domain is not star-shaped with a single ray intersection")
        self._ref_r = np.append(ref_r, ref_r[0])

        cell = self._cell_integral(np.arange(self._M), np.full(self._M, self._h))
        self._cumulative = np.concatenate(([0.0], np.cumsum(cell)))
        self.area = float(self._cumulative[-1])

    # -- radius interpolant -------------------------------------------------

    def radius(self, theta):
        """Boundary radius R(theta), 2*pi-periodic."""
        wrapped, _ = wrap_angle(theta)
        if self._spline is not None:
            return self._spline(wrapped)
        pos = wrapped / (TWO_PI / self.N)
        j = np.minimum(pos.astype(np.int64), self.N - 1)
        frac = pos - j
        nxt = (j + 1) % self.N
        return (1.0 - frac) * self.samples[j] + frac * self.samples[nxt]

    @property
    def max_radius(self):
        return float(np.max(self.samples))

    @property
    def min_radius(self):
        return float(np.min(self.samples))

    # -- sector area and its inverse ---------------------------------------

    def _cell_integral(self, k, s):
        """int of R(u)^2/2 from refined node t_k over a length s <= h.

        Exact for the linear interpolant; 4-point Gauss-Legendre (exact for
        the squared cubic) otherwise.
        """
        if self._spline is None:
            r0 = self._ref_r[k]
            m = (self._ref_r[k + 1] - r0) / self._h
            return 0.5 * (r0 * r0 * s + r0 * m * s * s + m * m * s ** 3 / 3.0)
        t0 = self._ref_theta[k]
        acc = 0.0
        for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
            r = self.radius(t0 + node * s)
            acc = acc + weight * 0.5 * r * r
        return s * acc

    def sector_area(self, theta):
        """Cumulative sector area S(theta), unwrapped by +area per turn."""
        theta = np.asarray(theta, dtype=float)
        scalar = theta.ndim == 0
        wrapped, winds = wrap_angle(theta)
        k = np.minimum((wrapped / self._h).astype(np.int64), self._M - 1)
        s = wrapped - k * self._h
        out = self._cumulative[k] + self._cell_integral(k, s) + winds * self.area
        return float(out) if scalar else out

    def inverse_sector_area(self, s):
        """Angle theta with S(theta) = s, unwrapped like sector_area.

        Bisection bracket from the cumulative table, then safeguarded Newton
        with S'(theta) = R(theta)^2/2, to |S - s| <= 1e-12 * area.
        """
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        winds = np.floor(s / self.area)
        s0 = s - winds * self.area
        over = s0 >= self.area
        s0 = np.where(over, 0.0, s0)
        winds = winds + over

        k = np.searchsorted(self._cumulative, s0, side="right") - 1
        k = np.clip(k, 0, self._M - 1)
        start = self._ref_theta[k]
        lo = start.copy()
        hi = start + self._h
        target = s0 - self._cumulative[k]
        theta = start + 0.5 * self._h
        tol = 1e-12 * self.area
        for _ in range(80):
            val = self._cell_integral(k, theta - start) - target
            if np.max(np.abs(val)) <= tol:
                break
            r = self.radius(theta)
            step = val / (0.5 * r * r)
            hi = np.where(val > 0.0, theta, hi)
            lo = np.where(val < 0.0, theta, lo)
            newton = theta - step
            bad = (newton <= lo) | (newton >= hi)
            theta = np.where(bad, 0.5 * (lo + hi), newton)
        out = theta + winds * TWO_PI
        return float(out[0]) if scalar else out

    # -- gauge and membership ----------------------------------------------

    def gauge(self, z):
        """Minkowski gauge g(z) = |z| / R(arg z); g(0) = 0 by definition."""
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        ang = np.mod(np.angle(z), TWO_PI)
        out = np.where(r == 0.0, 0.0, r / self.radius(ang))
        return float(out) if out.ndim == 0 else out

    def contains(self, z, tol=0.0):
        return self.gauge(z) <= 1.0 + tol

    def boundary_point(self, theta):
        """Point R(theta) e^{i theta} on the boundary."""
        theta = np.asarray(theta, dtype=float)
        return self.radius(theta) * np.exp(1j * theta)

    def __repr__(self):
        return (f"RadialProfile(N={self.N}, interpolation={self.interpolation!r}, "
                f"area={self.area:.6g})")


class EllipsoidSpec:
    """Symplectic ellipsoid E(a_1, ..., a_n): sum_i pi|z_i|^2 / a_i <= 1."""

    def __init__(self, areas):
        areas = tuple(float(a) for a in np.atleast_1d(areas))
        if not all(a > 0.0 for a in areas):
            raise ValueError("ellipsoid areas must be positive")
        self.areas = areas
        self.n = len(areas)
        self.dim = 2 * self.n

    def gauge(self, z):
        """1-homogeneous gauge: sqrt(sum pi|z_i|^2 / a_i) over the block."""
        z = np.asarray(z, dtype=complex)
        a = np.asarray(self.areas)
        return np.sqrt(np.sum(np.pi * np.abs(z) ** 2 / a, axis=-1))

    def contains(self, z, tol=0.0):
        return self.gauge(z) <= 1.0 + tol

    @property
    def volume(self):
        """Euclidean volume a_1 ... a_n / n!."""
        vol = 1.0
        for i, a in enumerate(self.areas, start=1):
            vol *= a / i
        return vol

    def __repr__(self):
        return f"EllipsoidSpec(areas={self.areas})"


# -- presets ----------------------------------------------------------------

def disk_profile(area, N=4096, interpolation="linear"):
    """Disk of the given area centered at the origin."""
    if area <= 0.0:
        raise ValueError("disk area must be positive")
    r = np.sqrt(area / np.pi)
    return RadialProfile(np.full(N, r), interpolation, smooth=True)


def polygon_profile(vertices, N=4096):
    """Simple polygon star-shaped with respect to the origin.

    Vertices may be given in either orientation; each edge must keep the
    origin strictly on its interior side.
    """
    verts = np.asarray(vertices, dtype=float)
    if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
        raise ValueError("vertices must be an (m, 2) array with m >= 3")
    nxt = np.roll(verts, -1, axis=0)
    cross = verts[:, 0] * nxt[:, 1] - verts[:, 1] * nxt[:, 0]
    if np.all(cross < 0.0):
        verts = verts[::-1]
        nxt = np.roll(verts, -1, axis=0)
        cross = verts[:, 0] * nxt[:, 1] - verts[:, 1] * nxt[:, 0]
    if not np.all(cross > 0.0):
        raise ValueError("polygon is not star-shaped with respect to the origin")

    ang = np.mod(np.arctan2(verts[:, 1], verts[:, 0]), TWO_PI)
    start = int(np.argmin(ang))
    verts = np.roll(verts, -start, axis=0)
    ang = np.roll(ang, -start)
    if np.any(np.diff(ang) <= 0.0):
        raise ValueError("polygon is not star-shaped with respect to the origin")

    theta = np.arange(N) * (TWO_PI / N)
    edge = np.searchsorted(ang, theta, side="right") - 1
    edge = np.mod(edge, verts.shape[0])
    p = verts[edge]
    q = verts[(edge + 1) % verts.shape[0]]
    d = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    e = q - p
    denom = d[:, 0] * e[:, 1] - d[:, 1] * e[:, 0]
    numer = p[:, 0] * e[:, 1] - p[:, 1] * e[:, 0]
    radii = numer / denom
    return RadialProfile(radii, "linear", smooth=False)


def weierstrass_series(x, a, b, terms, phases=None):
    """Partial sum of sum a^k cos(2 pi (b^k x + phase_k))."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for k in range(terms + 1):
        shift = 0.0 if phases is None else phases[k]
        out += a ** k * np.cos(TWO_PI * (b ** k * x + shift))
    return out


def weierstrass_profile(r0=1.0, amplitude=0.1, a=0.5, b=3.0, terms=20, N=4096):
    """Disk-like profile perturbed by a Weierstrass series in the angle.

    Fractal presets force linear interpolation: cubic overshoot can drive
    the interpolated radius negative.
    """
    _check_weierstrass(a, b, terms)
    theta = np.arange(N) * (TWO_PI / N)
    radii = r0 + amplitude * weierstrass_series(theta / TWO_PI, a, b, terms)
    return RadialProfile(radii, "linear", smooth=False)


def hunt_profile(r0=1.0, amplitude=0.1, a=0.5, b=3.0, terms=20, phases=None,
                 seed=0, N=4096):
    """Phase-shifted Weierstrass perturbation; phases drawn i.i.d. if absent."""
    _check_weierstrass(a, b, terms)
    if phases is None:
        phases = np.random.default_rng(seed).uniform(0.0, 1.0, terms + 1)
    phases = np.asarray(phases, dtype=float)
    if phases.size != terms + 1:
        raise ValueError("need one phase per series term")
    theta = np.arange(N) * (TWO_PI / N)
    radii = r0 + amplitude * weierstrass_series(theta / TWO_PI, a, b, terms, phases)
    return RadialProfile(radii, "linear", smooth=False)


def triangle_wave(x):
    """Even 1-periodic wave with phi(x) = 2x on [0, 1/2]."""
    x = np.abs(np.mod(np.asarray(x, dtype=float), 1.0))
    return 2.0 * np.minimum(x, 1.0 - x)


def xz_series(x, a, alpha, beta, terms):
    """Partial sum of sum a^(k^alpha) phi(a^(-k^beta) x), phi a triangle wave."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for k in range(1, terms + 1):
        out += a ** (k ** alpha) * triangle_wave(a ** (-(k ** beta)) * x)
    return out


def xz_profile(r0=1.0, amplitude=0.1, a=0.5, alpha=1.2, beta=1.5, terms=12,
               N=4096):
    """Triangle-wave series profile (dimension-2 boundary family)."""
    if not 0.0 < a < 1.0:
        raise ValueError("need 0 < a < 1")
    if not 1.0 < alpha < beta:
        raise ValueError("need 1 < alpha < beta")
    theta = np.arange(N) * (TWO_PI / N)
    radii = r0 + amplitude * xz_series(theta / TWO_PI, a, alpha, beta, terms)
    return RadialProfile(radii, "linear", smooth=False)


def cosine_profile(area=np.pi, N=4096, interpolation="cubic"):
    """Smooth reference profile with R(theta)^2 = (area/pi)(1 + cos(theta)/2)."""
    theta = np.arange(N) * (TWO_PI / N)
    radii = np.sqrt(area / np.pi * (1.0 + 0.5 * np.cos(theta)))
    return RadialProfile(radii, interpolation, smooth=True)


def _check_weierstrass(a, b, terms):
    if not 0.0 < a < 1.0 < b:
        raise ValueError("need 0 < a < 1 < b")
    if terms < 0:
        raise ValueError("term count must be nonnegative")


_PRESETS = {
    "disk": disk_profile,
    "polygon": polygon_profile,
    "weierstrass": weierstrass_profile,
    "hunt": hunt_profile,
    "xz": xz_profile,
    "cosine": cosine_profile,
}


def make_profile(source, N=4096, interpolation="linear", smooth=False, **params):
    """Build a RadialProfile from a sample array or a preset name.

    ``source`` is either an array of radii (length N) or one of the preset
    names {"disk", "polygon", "weierstrass", "hunt", "xz", "cosine"} with
    preset parameters passed as keywords.
    """
    if N < 16:
        raise ValueError("grid size must be at least 16")
    if isinstance(source, str):
        try:
            builder = _PRESETS[source]
        except KeyError:
            raise ValueError(f"unknown preset {source!r}") from None
        if source == "disk":
            return builder(N=N, interpolation=interpolation, **params)
        if source == "cosine":
            return builder(N=N, interpolation=interpolation, **params)
        return builder(N=N, **params)
    samples = np.asarray(source, dtype=float)
    if samples.size != N:
        raise ValueError("sample array length must equal N")
    return RadialProfile(samples, interpolation, smooth=smooth)


# Spec-style functional aliases.

def area(profile):
    """Total area of the domain."""
    return profile.area


def sector_area(profile, theta):
    return profile.sector_area(theta)


def inverse_sector_area(profile, s):
    return profile.inverse_sector_area(s)


def gauge2d(profile, z):
    if isinstance(z, (tuple, list)) and len(z) == 2 and \
            isinstance(z[0], numbers.Real):
        z = complex(z[0], z[1])
    return profile.gauge(z)
