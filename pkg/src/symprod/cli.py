"""Command-line surface: ``symprod <command> ...``.

All stochastic commands require a seed and produce byte-identical output
for identical configuration. Exit codes: 0 success, 1 check failure,
2 usage or spec-file error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import __version__, capacities, diskmap, dynamics, fractal, geometry2d
from . import product as product_mod
from .dynamics import FlowPoint
from .geometry2d import TWO_PI
from .selftest import run_selftest
from .specfile import SpecFileError, load_spec


def _writer(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8")
    return contextlib.nullcontext(sys.stdout)


def _emit_csv(fh, columns, rows):
    fh.write(f"# symprod {__version__}\n")
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(f"{v:.12g}" if isinstance(v, float) else str(v)
                          for v in row) + "\n")


def _planar_factors(domain):
    for f in domain.factors:
        if not isinstance(f, geometry2d.RadialProfile):
            raise SystemExit("command requires planar (2d) factors only")
    return list(domain.factors)


def _parse_point(text, n):
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) != n:
        raise SystemExit(f"expected {n} 'x,y' pairs separated by ';'")
    out = np.empty(n, dtype=complex)
    for i, p in enumerate(parts):
        x, y = (float(tok) for tok in p.split(","))
        out[i] = complex(x, y)
    return out


def cmd_area(args):
    domain = load_spec(args.spec)
    with _writer(args) as fh:
        rows = [(i, float(a)) for i, a in enumerate(domain.factor_areas)]
        _emit_csv(fh, ["factor", "area"], rows)
    return 0


def cmd_map(args):
    domain = load_spec(args.spec)
    factors = _planar_factors(domain)
    profile = factors[args.factor]
    k = args.grid
    rho = np.sqrt(np.linspace(0.05, 1.0, k) * profile.area / np.pi)
    theta = np.linspace(0.0, TWO_PI, k, endpoint=False)
    rr, tt = np.meshgrid(rho, theta)
    z = (rr * np.exp(1j * tt)).ravel()
    w = diskmap.disk_to_domain(profile, z)
    h = 1e-5 * np.abs(z)
    dx = (diskmap.disk_to_domain(profile, z + h) -
          diskmap.disk_to_domain(profile, z - h)) / (2 * h)
    dy = (diskmap.disk_to_domain(profile, z + 1j * h) -
          diskmap.disk_to_domain(profile, z - 1j * h)) / (2 * h)
    det = dx.real * dy.imag - dx.imag * dy.real
    rows = [(float(a.real), float(a.imag), float(b.real), float(b.imag),
             float(d)) for a, b, d in zip(z, w, det)]
    with _writer(args) as fh:
        _emit_csv(fh, ["x", "y", "u", "v", "jacobian"], rows)
    return 0


def cmd_volume(args):
    domain = load_spec(args.spec)
    est = product_mod.mc_volume(domain, args.samples, args.seed,
                                threads=args.threads)
    with _writer(args) as fh:
        fh.write(f"# symprod {__version__}\n")
        fh.write(f"estimate = {est.volume:.12g}\n")
        fh.write(f"stderr = {est.std_error:.12g}\n")
        areas = domain.factor_areas
        if domain.p == 2.0:
            exact = product_mod.ellipsoid_volume(areas)
            fh.write(f"ellipsoid_reference = {exact:.12g}\n")
    return 0


def cmd_flow(args):
    domain = load_spec(args.spec)
    factors = _planar_factors(domain)
    z0 = _parse_point(args.point, len(factors))
    t0, t1 = (float(tok) for tok in args.t_range.split(","))
    times = np.linspace(t0, t1, args.steps)
    rows = []
    for t in times:
        zt = np.array([dynamics.char_flow_2d(f, z0[i], t)
                       for i, f in enumerate(factors)])
        row = [float(t)]
        for z in zt:
            row.extend([float(z.real), float(z.imag)])
        row.append(float(domain.gauge(zt)))
        rows.append(tuple(row))
    cols = ["t"]
    for i in range(len(factors)):
        cols.extend([f"x{i}", f"y{i}"])
    cols.append("gauge")
    with _writer(args) as fh:
        _emit_csv(fh, cols, rows)
    return 0


def cmd_conjugacy(args):
    domain = load_spec(args.spec)
    factors = _planar_factors(domain)
    areas = np.array([f.area for f in factors])
    rng = np.random.default_rng(args.seed)
    t_frac = rng.dirichlet(np.ones(len(factors)), size=args.samples)
    ang = rng.uniform(0.0, TWO_PI, size=(args.samples, len(factors)))
    times = rng.uniform(-2.0, 2.0, args.samples) * float(np.max(areas))
    residuals = []
    for j in range(args.samples):
        r = np.sqrt(t_frac[j] * areas / np.pi)
        z = r * np.exp(1j * ang[j])
        residuals.append(dynamics.conjugacy_residual(factors, z, times[j]))
    residuals = np.asarray(residuals)
    with _writer(args) as fh:
        fh.write(f"# symprod {__version__}\n")
        fh.write(f"samples = {args.samples}\n")
        fh.write(f"max_residual = {residuals.max():.12g}\n")
        fh.write(f"mean_residual = {residuals.mean():.12g}\n")
    return 0 if residuals.max() <= args.tolerance else 1


def cmd_capacities(args):
    areas = [float(tok) for tok in args.areas.split(",")]
    table = capacities.gh_capacities(areas, args.count)
    with _writer(args) as fh:
        fh.write(f"# symprod {__version__}\n")
        fh.write(",".join(f"{v:.12g}" for v in table.values) + "\n")
        zoll, c1, cn = capacities.zoll_check(areas)
        fh.write(f"zoll = {'true' if zoll else 'false'} "
                 f"(c1={c1:.12g}, cn={cn:.12g})\n")
    return 0


def cmd_sandwich(args):
    domain = load_spec(args.spec)
    factors = _planar_factors(domain)
    report = diskmap.sandwich_check(factors, args.epsilon, args.samples,
                                    args.seed, steps=args.steps)
    with _writer(args) as fh:
        fh.write(f"# symprod {__version__}\n")
        fh.write(f"epsilon = {report.epsilon:.12g}\n")
        fh.write(f"violations_outer = {report.violations_outer}\n")
        fh.write(f"violations_inner = {report.violations_inner}\n")
        fh.write(f"worst_outer_gauge = {report.worst_outer_gauge:.12g}\n")
        fh.write(f"worst_inner_gauge = {report.worst_inner_gauge:.12g}\n")
        for kind, point, gauge in report.offenders:
            fh.write(f"offender {kind} gauge={gauge:.12g} point={point}\n")
    return 0 if report.passed else 1


def cmd_boundary_minimal(args):
    domain = load_spec(args.spec)
    factors = _planar_factors(domain)
    n = len(factors)
    rng = np.random.default_rng(args.seed)
    point = FlowPoint(angles=rng.uniform(0.0, TWO_PI, n),
                      levels=np.full(n, np.sqrt(1.0 / n)))
    a = factors[0].area
    report = capacities.boundary_minimal_experiment(
        factors, point, width=args.width, target_area=args.target_ratio * a,
        samples=args.samples, seed=args.seed)
    with _writer(args) as fh:
        fh.write(f"# symprod {__version__}\n")
        fh.write(f"area = {report.area:.12g}\n")
        fh.write(f"target_area = {report.target_area:.12g}\n")
        fh.write(f"capacity_gap = {report.capacity_gap:.12g}\n")
        fh.write(f"eta = {report.eta:.12g}\n")
        fh.write(f"checked = {report.checked}\n")
        fh.write(f"violations = {report.violations}\n")
        for point_, gauge in report.offenders:
            fh.write(f"offender gauge={gauge:.12g} point={point_}\n")
    return 0 if report.passed else 1


def cmd_boxdim(args):
    scales = 2.0 ** -np.arange(args.min_exp, args.max_exp + 1)
    if args.target == "function":
        fn = fractal.make_fractal(args.family, a=args.a, b=args.b,
                                  terms=args.terms)
        sampler = fractal.graph_sampler(fn)
        counts = fractal.count_scales(sampler, scales, seed=args.seed)
    elif args.target == "product":
        fn = fractal.make_fractal(args.family, a=args.a, b=args.b,
                                  terms=args.terms)
        sampler = fractal.graph_sampler(fn)
        base = fractal.count_scales(sampler, scales, seed=args.seed)
        counts = fractal.product_interval_count(base, scales)
    elif args.target == "boundary":
        profile = geometry2d.weierstrass_profile(a=args.a, b=args.b,
                                                 terms=args.terms)
        counts = fractal.boundary_patch_counts(profile, [1.0], scales,
                                               seed=args.seed)
    else:
        raise SystemExit(f"unknown target {args.target}")
    est = fractal.estimate_dimension(scales, counts)
    rows = [(float(e), float(c), float(np.log(1 / e)), float(np.log(c)))
            for e, c in zip(scales, counts)]
    with _writer(args) as fh:
        _emit_csv(fh, ["eps", "count", "log_inv_eps", "log_count"], rows)
        fh.write(f"# slope = {est.slope:.12g}\n")
        fh.write(f"# r_squared = {est.r_squared:.12g}\n")
    return 0


def cmd_selftest(args):
    return run_selftest(seed=args.seed, threads=args.threads,
                        quick=args.quick)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symprod",
        description="Symplectic products of star-shaped planar domains.")
    parser.add_argument("--version", action="version",
                        version=f"symprod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--output", help="write output here instead of stdout")
        return p

    p = add("area", cmd_area, help="factor areas of a domain spec")
    p.add_argument("--spec", required=True)

    p = add("map", cmd_map, help="disk-map grid CSV with Jacobians")
    p.add_argument("--spec", required=True)
    p.add_argument("--factor", type=int, default=0)
    p.add_argument("--grid", type=int, default=24)

    p = add("volume", cmd_volume, help="Monte Carlo volume of a product")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", type=int, default=1000000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)

    p = add("flow", cmd_flow, help="characteristic-flow trajectory CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--point", required=True,
                   help="per-factor 'x,y' pairs separated by ';'")
    p.add_argument("--t-range", default="0,1")
    p.add_argument("--steps", type=int, default=100)

    p = add("conjugacy", cmd_conjugacy, help="conjugacy residual statistics")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=1e-6)

    p = add("capacities", cmd_capacities, help="ellipsoid capacity table")
    p.add_argument("--areas", required=True, help="comma-separated areas")
    p.add_argument("--count", type=int, default=4)

    p = add("sandwich", cmd_sandwich, help="epsilon-sandwich verification")
    p.add_argument("--spec", required=True)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--steps", type=int, default=64)

    p = add("boundary-minimal", cmd_boundary_minimal,
            help="boundary-minimality shrinking experiment")
    p.add_argument("--spec", required=True)
    p.add_argument("--width", type=float, default=0.9)
    p.add_argument("--target-ratio", type=float, default=0.9)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, required=True)

    p = add("boxdim", cmd_boxdim, help="box-counting dimension estimate")
    p.add_argument("--target", choices=["function", "product", "boundary"],
                   default="function")
    p.add_argument("--family", default="weierstrass")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--b", type=float, default=3.0)
    p.add_argument("--terms", type=int, default=30)
    p.add_argument("--min-exp", type=int, default=4)
    p.add_argument("--max-exp", type=int, default=14)
    p.add_argument("--seed", type=int, required=True)

    p = add("selftest", cmd_selftest, help="run the bundled invariant suite")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--quick", action="store_true",
                   help="reduced sample counts for fast verification")

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecFileError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
