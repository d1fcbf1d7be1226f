"""Fractal function families and box-counting dimension estimation.

Dimension claims are verified in box-counting (Minkowski) form only. Graph
samplers emit filled-in graphs: vertical fill points are inserted between
consecutive samples so that the point cloud is dense at the counting scale,
which makes occupied-cell counting equivalent to column-range counting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry2d import triangle_wave, weierstrass_series


@dataclass(frozen=True)
class Weierstrass:
    """W_{a,b}(x) = sum a^k cos(2 pi b^k x), truncated at ``terms``.

    Truncation error is bounded by a^(terms+1) / (1 - a). The graph's
    box-counting dimension is 2 + log a / log b.
    """

    a: float = 0.5
    b: float = 3.0
    terms: int = 30

    def __post_init__(self):
        if not 0.0 < self.a < 1.0 < self.b:
            raise ValueError("need 0 < a < 1 < b")
        if self.a * self.b <= 1.0:
            raise ValueError("need a * b > 1 for a fractal graph")
        if self.terms < 0:
            raise ValueError("term count must be nonnegative")

    def __call__(self, x):
        return weierstrass_series(x, self.a, self.b, self.terms)

    @property
    def graph_dimension(self):
        return 2.0 + np.log(self.a) / np.log(self.b)


@dataclass(frozen=True)
class PhaseShiftedWeierstrass:
    """Weierstrass series with per-term phase shifts theta_k in [0, 1)."""

    a: float = 0.5
    b: float = 3.0
    terms: int = 30
    phases: tuple = None
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.a < 1.0 < self.b:
            raise ValueError("need 0 < a < 1 < b")
        if self.a * self.b <= 1.0:
            raise ValueError("need a * b > 1 for a fractal graph")
        if self.phases is None:
            rng = np.random.default_rng(self.seed)
            object.__setattr__(
                self, "phases",
                tuple(rng.uniform(0.0, 1.0, self.terms + 1)))
        elif len(self.phases) != self.terms + 1:
            raise ValueError("need one phase per term")

    def __call__(self, x):
        return weierstrass_series(x, self.a, self.b, self.terms,
                                  np.asarray(self.phases))

    @property
    def graph_dimension(self):
        return 2.0 + np.log(self.a) / np.log(self.b)


@dataclass(frozen=True)
class XiaoZhou:
    """f(x) = sum_{k>=1} a^(k^alpha) phi(a^(-k^beta) x), phi a triangle wave.

    Exposed without a numeric dimension target: the truncated sums have no
    quantified box-counting behavior at finite resolution.
    """

    a: float = 0.5
    alpha: float = 1.2
    beta: float = 1.5
    terms: int = 12

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError("need 0 < a < 1")
        if not 1.0 < self.alpha < self.beta:
            raise ValueError("need 1 < alpha < beta")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for k in range(1, self.terms + 1):
            out += self.a ** (k ** self.alpha) * triangle_wave(
                self.a ** (-(k ** self.beta)) * x)
        return out


_FAMILIES = {
    "weierstrass": Weierstrass,
    "weierstrass_phase": PhaseShiftedWeierstrass,
    "xiao_zhou": XiaoZhou,
}


def make_fractal(family, **params):
    try:
        cls = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown fractal family {family!r}") from None
    return cls(**params)


def eval_fractal(fn, x):
    return fn(x)


# -- box counting -----------------------------------------------------------

def box_count(points, eps, offset=None):
    """Occupied cells of the grid eps * Z^d intersecting the point set."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError("points must be an (M, d) array")
    if offset is None:
        offset = np.zeros(points.shape[1])
    idx = np.floor((points - offset) / eps).astype(np.int64)
    # Collapse rows to single keys; ranges are far below the int64 overflow.
    idx -= idx.min(axis=0)
    key = idx[:, 0]
    for j in range(1, idx.shape[1]):
        key = key * (np.int64(idx[:, j].max()) + 1) + idx[:, j]
    return int(np.unique(key).size)


def box_count_dithered(points, eps, rng, n_offsets=4):
    """Mean occupied-cell count over random grid origins (lattice de-bias)."""
    d = np.asarray(points).shape[1]
    counts = [box_count(points, eps, offset=rng.uniform(0.0, eps, d))
              for _ in range(n_offsets)]
    return float(np.mean(counts))


def count_scales(sampler, scales, seed=0, n_offsets=4, pitch_factor=4.0):
    """Counts N(eps) over a scale list, resampling at pitch eps/pitch_factor.

    ``sampler`` maps a resolution hint (target pitch) to an (M, d) point
    array; the hint must be honored or the counts are rejected upstream.
    """
    rng = np.random.default_rng(seed)
    counts = []
    for eps in scales:
        pts = sampler(eps / pitch_factor)
        counts.append(box_count_dithered(pts, eps, rng, n_offsets))
    return np.asarray(counts)


@dataclass
class DimensionEstimate:
    scales: np.ndarray
    counts: np.ndarray
    slope: float
    intercept: float
    r_squared: float
    ci_halfwidth: float = None
    residuals: np.ndarray = field(default=None, repr=False)

    @property
    def dimension(self):
        return self.slope


def estimate_dimension(scales, counts, bootstrap=0, seed=0):
    """OLS slope of log N versus log(1/eps) over the declared scale window."""
    scales = np.asarray(scales, dtype=float)
    counts = np.asarray(counts, dtype=float)
    if scales.size < 5:
        raise ValueError("need at least 5 scales")
    if np.max(counts) == np.min(counts):
        raise ValueError("degenerate counts: constant over the scale window")
    x = np.log(1.0 / scales)
    y = np.log(counts)
    slope, intercept = np.polyfit(x, y, 1)
    fit = slope * x + intercept
    ss_res = float(np.sum((y - fit) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot

    ci = None
    if bootstrap > 0:
        rng = np.random.default_rng(seed)
        slopes = []
        m = scales.size
        for _ in range(bootstrap):
            pick = rng.integers(0, m, m)
            if np.unique(x[pick]).size < 2:
                continue
            slopes.append(np.polyfit(x[pick], y[pick], 1)[0])
        ci = float(1.96 * np.std(slopes))
    return DimensionEstimate(scales=scales, counts=counts, slope=float(slope),
                            intercept=float(intercept), r_squared=r2,
                            ci_halfwidth=ci, residuals=y - fit)


# -- samplers ---------------------------------------------------------------

def fill_segments(x, y, pitch):
    """Points of the filled-in graph: samples plus vertical fill at jumps.

    Between consecutive samples, points are inserted along the y-segment at
    spacing <= pitch; the filled graph has the same box dimension as the
    graph for the families used here.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dy = np.abs(np.diff(y))
    extra = np.maximum(np.ceil(dy / pitch).astype(np.int64) - 1, 0)
    base = np.stack([x, y], axis=1)
    if extra.sum() == 0:
        return base
    seg = np.flatnonzero(extra)
    reps = extra[seg]
    xs = np.repeat(x[seg], reps)
    y0 = np.repeat(y[:-1][seg], reps)
    dy_full = np.repeat(np.diff(y)[seg], reps)
    steps = np.repeat(reps + 1, reps)
    # per-segment running index 1..reps
    idx = np.arange(reps.sum()) - np.repeat(
        np.concatenate(([0], np.cumsum(reps)[:-1])), reps) + 1
    ys = y0 + dy_full * idx / steps
    return np.concatenate([base, np.stack([xs, ys], axis=1)])


def graph_sampler(fn, x_min=0.0, x_max=1.0, chunk=1 << 20):
    """Sampler for the filled graph of ``fn`` over [x_min, x_max]."""

    def sample(pitch):
        n = int(np.ceil((x_max - x_min) / pitch)) + 1
        parts = []
        for start in range(0, n, chunk):
            stop = min(start + chunk, n)
            x = x_min + pitch * np.arange(start, stop)
            # overlap one sample so fill spans chunk boundaries
            if start > 0:
                x = np.concatenate(([x_min + pitch * (start - 1)], x))
            parts.append(fill_segments(x, fn(x), pitch))
        return np.concatenate(parts)

    return sample


def segment_sampler(length=1.0):
    """Straight unit-speed segment in the plane (estimator baseline)."""

    def sample(pitch):
        t = np.arange(0.0, length + pitch, pitch)
        return np.stack([t, 0.3 * t], axis=1)

    return sample


def product_interval_count(base_counts, scales, z_length=1.0):
    """Box counts of (point set) x (interval grid) from base counts.

    For a Cartesian product of point sets with an axis-aligned grid the
    occupied-cell set is the product of the occupied sets, so the counts
    multiply exactly; the interval contributes ceil(L / eps) cells.
    """
    scales = np.asarray(scales, dtype=float)
    n_z = np.ceil(z_length / scales)
    return np.asarray(base_counts) * n_z


def _grid(lo, hi, pitch):
    """Inclusive grid over [lo, hi] that never oversteps hi."""
    n = max(int(np.ceil((hi - lo) / pitch)), 1)
    return np.linspace(lo, hi, n + 1)


def boundary_patch_counts(profile, tail_areas, scales, seed=0,
                          r1_range=(0.25, 0.5), theta1_range=(0.0, 1.0),
                          theta2_range=(0.0, 1.0), margin=0.05,
                          oversample=8, n_offsets=2, pitch_factor=4.0):
    """Dithered box counts of a boundary patch of (profile) x_2 E(a_2).

    Memory-bounded variant of counting boundary_graph_sampler output: the
    smooth angle of the ellipsoid factor is processed in chunks and only
    occupied-cell keys are retained. Counts are exact for the emitted point
    set; the fractal angle is oversampled by ``oversample`` relative to the
    base pitch eps / pitch_factor.
    """
    tail_areas = [float(a) for a in np.atleast_1d(tail_areas)]
    if len(tail_areas) != 1:
        raise NotImplementedError(
            "full-dimensional counting is limited to one ellipsoid factor")
    a2 = tail_areas[0]
    rng = np.random.default_rng(seed)
    rmax = max(profile.max_radius * r1_range[1] * 1.5,
               np.sqrt(a2 / np.pi)) + 1.0

    counts = []
    for eps in np.asarray(scales, dtype=float):
        pitch = eps / pitch_factor
        r1 = _grid(r1_range[0], r1_range[1], pitch)
        t1 = _grid(theta1_range[0], theta1_range[1], pitch / oversample)
        t2 = _grid(theta2_range[0], theta2_range[1],
                   pitch / max(np.sqrt(a2 / np.pi), 1.0))
        R1 = profile.radius(t1)
        rows = []
        for r in r1:
            radicand = 1.0 - (r / R1) ** 2
            if np.min(radicand) < margin:
                raise ValueError(
                    "parameter box reaches the singular locus; "
                    "shrink r1_range")
            # fill vertically along the fractal axis so no grid cell
            # crossed by the graph goes uncounted
            pts = fill_segments(t1, np.sqrt(a2 * radicand / np.pi), pitch)
            rows.append((r, pts))
        t1f = np.concatenate([pts[:, 0] for _, pts in rows])
        r2 = np.concatenate([pts[:, 1] for _, pts in rows])
        r1f = np.concatenate([np.full(pts.shape[0], r) for r, pts in rows])
        x1 = r1f * np.cos(t1f)
        y1 = r1f * np.sin(t1f)

        side = np.int64(np.ceil(2.0 * rmax / eps)) + 2
        scale_counts = []
        for _ in range(n_offsets):
            off = rng.uniform(0.0, eps, 4)
            i0 = np.floor((x1 + rmax - off[0]) / eps).astype(np.int64)
            i1 = np.floor((y1 + rmax - off[1]) / eps).astype(np.int64)
            base = (i0 * side + i1) * side
            uniques = []
            chunk = max(1, int(4e7 // max(r2.size, 1)))
            for lo in range(0, t2.size, chunk):
                tc = t2[lo:lo + chunk]
                xc = r2[:, None] * np.cos(tc)[None, :]
                yc = r2[:, None] * np.sin(tc)[None, :]
                i2 = np.floor((xc + rmax - off[2]) / eps).astype(np.int64)
                i3 = np.floor((yc + rmax - off[3]) / eps).astype(np.int64)
                key = (base[:, None] + i2) * side + i3
                uniques.append(np.unique(key))
            scale_counts.append(np.unique(np.concatenate(uniques)).size)
        counts.append(float(np.mean(scale_counts)))
    return np.asarray(counts)


def boundary_graph_sampler(profile, tail_areas, r1_range=(0.25, 0.5),
                           theta1_range=(0.0, 1.0), theta_ranges=None,
                           margin=0.05, oversample=8):
    """Sampler for a patch of the boundary of (profile) x_2 E(a_2, ..., a_n).

    The boundary is the graph r_n(r_1, theta_1, ..., theta_n) =
    sqrt((a_n / pi)(1 - g_1(z_1)^2 - ...)) in polar coordinates; the patch
    is a compact parameter box bounded away from r_1 = 0 and z_n = 0
    (radicand >= margin). The fractal theta_1 axis is oversampled so the
    emitted point set stays dense at the counting scale. Points are in
    R^{2n} with product gauge 1 up to rounding.
    """
    if profile is None:
        raise ValueError("need a planar factor profile")
    tail_areas = [float(a) for a in np.atleast_1d(tail_areas)]
    if len(tail_areas) != 1:
        raise NotImplementedError(
            "full-dimensional counting is limited to one ellipsoid factor; "
            "use the product-rule decomposition for higher n")
    a2 = tail_areas[0]
    if theta_ranges is None:
        theta_ranges = [(0.0, 1.0)]
    (t2_lo, t2_hi), = theta_ranges

    def sample(pitch):
        r1 = _grid(r1_range[0], r1_range[1], pitch)
        t1 = _grid(theta1_range[0], theta1_range[1], pitch / oversample)
        t2 = _grid(t2_lo, t2_hi, pitch)
        g1 = (r1[:, None] / profile.radius(t1)[None, :]) ** 2
        radicand = 1.0 - g1
        if np.min(radicand) < margin:
            raise ValueError(
                "parameter box reaches the singular locus; shrink r1_range")
        r2 = np.sqrt(a2 * radicand / np.pi)  # (n_r1, n_t1)
        x1 = (r1[:, None] * np.cos(t1)[None, :]).ravel()
        y1 = (r1[:, None] * np.sin(t1)[None, :]).ravel()
        r2f = r2.ravel()
        cols = []
        for t in t2:
            pts = np.empty((r2f.size, 4))
            pts[:, 0] = x1
            pts[:, 1] = y1
            pts[:, 2] = r2f * np.cos(t)
            pts[:, 3] = r2f * np.sin(t)
            cols.append(pts)
        return np.concatenate(cols)

    return sample
