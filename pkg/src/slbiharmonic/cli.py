"""Command-line front end: ``classify``, ``generate``, ``verify``, ``hopf``.

Exit codes: 0 success / verification passed, 1 verification failed or I/O
error, 2 usage or input error.
"""

import argparse
import json
import sys

import numpy as np

from .biharmonic import (
    Branch,
    Case,
    admissible_range,
    biharmonic_data,
    equal_case_cos2theta,
    is_admissible,
)
from .errors import GeometryError, OffManifold
from .families import CurveSpec, make_curve
from .indefinite import load_matrix
from .model import check_tau, hopf_project, minkowski_norm3
from .samples import fmt, read_samples, sample_curve, write_csv, write_json
from .verify import FD_TOLERANCES, verify_samples

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_float(text):
    x = float(text)
    if not np.isfinite(x) or x <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_classify(args):
    tau = args.tau
    c2 = args.cos2theta
    lo, _ = admissible_range(tau)
    if not is_admissible(c2, tau):
        raise UsageError(f"inadmissible angle: cos2theta={c2!r} outside [{lo!r}, 1)")
    data = biharmonic_data(c2, args.branch, tau)
    out = {
        "a": data.a,
        "b": data.b,
        "discriminant": data.discriminant,
        "case": data.case.value,
        "admissible": True,
        "equal_case_cos2theta": equal_case_cos2theta(tau),
    }
    print(json.dumps(out))
    return EXIT_OK


def cmd_generate(args):
    A = None
    if args.matrix:
        try:
            A = load_matrix(args.matrix)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read matrix: {exc}")
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    spec = CurveSpec(
        family=args.family,
        tau=args.tau,
        cos2theta=args.cos2theta,
        branch=args.branch,
        A=A,
    )
    curve = make_curve(spec)
    order = 4 if args.with_derivatives else 0
    s, jet = sample_curve(curve, args.s_min, args.s_max, args.samples, order)
    meta = {
        "family": spec.family.value,
        "tau": spec.tau,
        "cos2theta": curve.data.cos2theta,
        "branch": spec.branch.name.lower(),
        "a": curve.a,
        "b": curve.b,
        "A": spec.A.tolist(),
    }
    try:
        fh, close = _open_out(args.out)
        try:
            if args.format == "csv":
                write_csv(fh, s, jet)
            else:
                write_json(fh, s, jet, meta)
        finally:
            if close:
                fh.close()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args):
    try:
        s, pts = read_samples(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    tolerances = {
        name: getattr(args, f"tol_{name}")
        for name in FD_TOLERANCES
        if getattr(args, f"tol_{name}") is not None
    }
    cos_theta = None if args.theta is None else float(np.cos(args.theta))
    meta = {"input": args.input}
    try:
        report = verify_samples(s, pts, args.tau, cos_theta, tolerances, metadata=meta)
    except ValueError as exc:
        raise UsageError(str(exc))
    text = report.to_json()
    fh, close = _open_out(args.out)
    try:
        fh.write(text + "\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_hopf(args):
    try:
        s, pts = read_samples(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    try:
        y = hopf_project(pts, args.tau)
    except OffManifold as exc:
        raise UsageError(f"off-manifold input: {exc}")
    residual = float(np.max(np.abs(minkowski_norm3(y) + 1.0 / args.tau)))
    fh, close = _open_out(args.out)
    try:
        fh.write("s,y1,y2,y3\n")
        for si, row in zip(s, y):
            fh.write(",".join(fmt(v) for v in (si, *row)) + "\n")
    finally:
        if close:
            fh.close()
    print(f"max |y1^2 + y2^2 - y3^2 + 1/tau| = {residual:.3e}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="slbiharmonic",
        description="Proper biharmonic curves of SL(2,R) with the metrics g_tau.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def branch(text):
        try:
            return Branch.parse(text)
        except KeyError:
            raise argparse.ArgumentTypeError("branch must be 'plus' or 'minus'")

    def family(text):
        try:
            return Case.parse(text)
        except ValueError:
            raise argparse.ArgumentTypeError("family must be equal, greater or less")

    p = sub.add_parser("classify", help="constants a, b and the b^2 - 4a case")
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--cos2theta", type=float, required=True)
    p.add_argument("--branch", type=branch, default=Branch.PLUS)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="sample a closed-form family curve")
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--family", type=family, required=True)
    p.add_argument("--cos2theta", type=float)
    p.add_argument("--branch", type=branch, default=Branch.PLUS)
    p.add_argument("--matrix", help="JSON file with a 4x4 conjugation matrix")
    p.add_argument("--s-min", type=float, default=-5.0)
    p.add_argument("--s-max", type=float, default=5.0)
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--with-derivatives", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run the residual suites on sampled curves")
    p.add_argument("--input", required=True)
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--theta", type=float, help="Hopf angle in radians (inferred if omitted)")
    for name in FD_TOLERANCES:
        p.add_argument(f"--tol-{name.replace('_', '-')}", dest=f"tol_{name}", type=_positive_float)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hopf", help="project samples to the hyperbolic plane")
    p.add_argument("--input", required=True)
    p.add_argument("--tau", type=_positive_float, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_hopf)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        check_tau(args.tau)
        return args.func(args)
    except (UsageError, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
