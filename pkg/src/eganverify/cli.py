"""Command line front end: ``egan-verify <subcommand> [flags]``.

Exit status is 0 on success, 1 when any check fails (a violated inequality,
a failed certificate identity), and 2 on usage or input errors.
"""
import argparse
import sys

import numpy as np

from . import io
from .certificate import (
    angle_lemma_margin,
    run_certificate,
    spherical_euler_residual,
    spherical_gd_slack,
    spherical_tangents,
)
from .errors import CertificateViolation, ConfigError, EganError
from .euclid import EuclideanSimplex, circumsphere, egan_report, insphere
from .harness import GENERATORS, TrialConfig, extremal_search, falsify_scan, gen_spherical
from .kernel import RTOL
from .limit import convergence_table, default_heights
from .spherical import PolarPair, SphericalSimplex, circum_cap, inscribed_cap, polar_simplex, verify_polarity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj, args):
    text = io.dumps(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args, kind):
    if not args.input:
        raise UsageError("--input is required")
    s = io.load_simplex(args.input)
    want = EuclideanSimplex if kind == "euclidean" else SphericalSimplex
    if not isinstance(s, want):
        raise UsageError(f"{args.input} holds a {type(s).__name__}, expected a {kind} simplex")
    return s


def _spherical_input(args):
    if args.input:
        return _load(args, "spherical")
    if args.random:
        if args.dim is None:
            raise UsageError("--random needs --dim")
        return gen_spherical(TrialConfig(dim=args.dim, seed=args.seed, geometry="spherical"), args.index)
    raise UsageError("give --input or --random")


def cmd_verify(args):
    if args.geometry == "euclid":
        s = _load(args, "euclidean")
        rep = egan_report(s)
        out = rep.to_dict()
        out["circumcenter"] = circumsphere(s).center
        out["incenter"] = insphere(s).center
        out["violation"] = bool(rep.slack < -args.rtol * rep.R**2)
        _emit(out, args)
        return EXIT_FAIL if out["violation"] else EXIT_OK

    s = _load(args, "spherical")
    v = polar_simplex(s)
    polar_ok, off = verify_polarity(s, v)
    cc, ic = circum_cap(s), inscribed_cap(s)
    R, r, d = spherical_tangents(s)
    slack = spherical_gd_slack(s)
    lemma = angle_lemma_margin(PolarPair(s, v))
    out = {
        "m": s.m,
        "circum_center": cc.center,
        "circum_radius": cc.angular_radius,
        "inscribed_center": ic.center,
        "inscribed_radius": ic.angular_radius,
        "polar_vertices": v.vertices,
        "polarity_ok": polar_ok,
        "polarity_max_offdiag": off,
        "R": R,
        "r": r,
        "d": d,
        "gd_slack": slack,
        "equality_case": bool(abs(slack) <= args.rtol * max(1.0, R * R)),
        "angle_lemma_margin": lemma,
    }
    failed = not polar_ok or slack < -args.rtol * max(1.0, R * R) or lemma <= 0
    out["violation"] = bool(failed)
    _emit(out, args)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_certificate(args):
    s = _spherical_input(args)
    try:
        rep = run_certificate(PolarPair.of(s), rtol=args.rtol)
    except CertificateViolation as exc:
        print(f"certificate check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = rep.to_dict()
    out["vertices"] = s.vertices
    out["violation"] = bool(rep.margin < -args.rtol * max(1.0, rep.K))
    _emit(out, args)
    return EXIT_FAIL if out["violation"] else EXIT_OK


def cmd_falsify(args):
    if args.dim is None:
        raise UsageError("--dim is required")
    cfg = TrialConfig(
        dim=args.dim,
        trials=args.trials,
        seed=args.seed,
        generator=args.generator,
        rtol=args.rtol,
        geometry=args.geometry,
    )
    rep = falsify_scan(cfg)
    out = rep.to_dict()
    if rep.violations:
        # the smallest-slack trial is the strongest counterexample
        out["counterexample"] = io.simplex_to_dict(rep.argmin)
    _emit(out, args)
    print(f"{rep.trials_run} trials in {rep.elapsed:.2f} s", file=sys.stderr)
    return EXIT_FAIL if rep.violations else EXIT_OK


def cmd_extremal(args):
    if args.dim is None:
        raise UsageError("--dim is required")
    cfg = TrialConfig(dim=args.dim, seed=args.seed, generator=args.generator, rtol=args.rtol)
    start = _load(args, "euclidean") if args.input else None
    res = extremal_search(cfg, iterations=args.iterations, start=start)
    _emit(res.to_dict(), args)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("iteration,best_relative_slack\n")
            for i, val in enumerate(res.trace):
                fh.write(f"{i + 1},{val:.17g}\n")
    return EXIT_FAIL if res.slack < -args.rtol else EXIT_OK


def cmd_converge(args):
    s = _load(args, "euclidean")
    if args.heights:
        try:
            heights = [float(h) for h in args.heights.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --heights: {exc}") from exc
        if args.relative:
            R = circumsphere(s).radius
            heights = [h * R for h in heights]
    else:
        heights = default_heights(s)
    try:
        table = convergence_table(s, heights)
    except CertificateViolation as exc:
        print(f"convergence check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = io.table_to_csv(table)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    violation = any(row.scaled_slack < -args.rtol * table.limits[0] ** 2 for row in table.rows)
    if args.out:
        summary = {
            "limits": {"R": table.limits[0], "r": table.limits[1], "d": table.limits[2]},
            "errors": table.errors,
            "error_ratios": table.error_ratios(),
            "converging": table.is_converging(),
            "violation": violation,
        }
        with open(args.out, "w") as fh:
            fh.write(io.dumps(summary))
    return EXIT_FAIL if violation else EXIT_OK


def cmd_euler_residual(args):
    if args.input:
        simplices = [_load(args, "spherical")]
    elif args.random:
        cfg = TrialConfig(dim=3, trials=args.trials, seed=args.seed, geometry="spherical")
        simplices = [gen_spherical(cfg, i) for i in range(args.trials)]
    else:
        raise UsageError("give --input or --random")
    res = np.array([spherical_euler_residual(s) for s in simplices])
    worst = int(np.argmax(np.abs(res)))
    out = {
        "trials": len(simplices),
        "max_abs_residual": float(np.abs(res[worst])),
        "worst_index": worst,
        "worst_vertices": simplices[worst].vertices,
        "violation": bool(np.abs(res[worst]) > args.rtol),
    }
    _emit(out, args)
    return EXIT_FAIL if out["violation"] else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="simplex JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dim", type=int)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--rtol", type=float, default=RTOL)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--csv", help="write CSV here")

    p = argparse.ArgumentParser(prog="egan-verify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="report on one simplex")
    v.add_argument("geometry", choices=["euclid", "spherical"])
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certificate", parents=[common], help="run the polar-pair certificate")
    c.add_argument("--random", action="store_true", help="generate the simplex from --seed/--dim")
    c.add_argument("--index", type=int, default=0, help="trial index for --random")
    c.set_defaults(func=cmd_certificate)

    f = sub.add_parser("falsify", parents=[common], help="scan random simplices for violations")
    f.add_argument("--generator", choices=GENERATORS, default="gaussian")
    f.add_argument("--geometry", choices=["euclidean", "spherical"], default="euclidean")
    f.set_defaults(func=cmd_falsify)

    e = sub.add_parser("extremal", parents=[common], help="minimize slack / R^2 from a seeded start")
    e.add_argument("--generator", choices=GENERATORS, default="gaussian")
    e.add_argument("--iterations", type=int, default=2000)
    e.set_defaults(func=cmd_extremal)

    g = sub.add_parser("converge", parents=[common], help="large-sphere convergence table")
    g.add_argument("--heights", help="comma-separated heights (default: 10,100,1000,10000 times R)")
    g.add_argument("--relative", action="store_true", help="read --heights as multiples of R")
    g.set_defaults(func=cmd_converge)

    r = sub.add_parser("euler-residual", parents=[common], help="spherical triangle Euler relation")
    r.add_argument("--random", action="store_true")
    r.set_defaults(func=cmd_euler_residual)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, io.SchemaError, OSError) as exc:
        print(f"egan-verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EganError as exc:
        print(f"egan-verify: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
