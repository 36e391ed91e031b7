"""Command-line front end: ``apsheat {zeros,heat-content,fit,zeta,verify}``.

Exit codes: 0 success, 2 usage or domain error, 3 numerical failure,
4 verification failure. Output goes to ``--out`` or to stdout. No
environment variables are consulted.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from . import __version__
from .asymptotics import WindowSpec, fit_expansion
from .ball import BallSetup, TestFunctionId, build_spectral_data
from .errors import DomainError, MissingValueError, NumericalFailure
from .heat import DEFAULT_T_MIN, HeatCurve, sample_curve
from .intervals import dirichlet_interval_spectrum, robin_interval_spectrum
from .oracles import report_passed
from .specfun import bessel_j, bessel_j_zeros
from .spectrum import TailBound
from .verify import SUITES, parse_m_range, run_suite
from .zeta import SCHEMA, VARIANTS, arbitrate_variants, zeta_contour_values, zeta_json

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4


class VerificationFailed(Exception):
    pass


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"--{name} must be positive, got {value!r}")
    return value


def cmd_zeros(args):
    zl = bessel_j_zeros(args.nu, args.count)
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "zero", "residual"])
    for k, z in enumerate(zl.zeros, start=1):
        w.writerow([k, repr(z), repr(abs(bessel_j(zl.order, z)))])
    _emit(buf.getvalue(), args.out)


def _ball_tail(setup, f):
    m = setup.m
    offset = float(setup.nu) / 2.0 - 0.75
    if f is TestFunctionId.F1:
        return TailBound(amplitude=2.0, power=2.0, offset=offset)
    return TailBound(amplitude=2.0 * m * m, power=4.0, offset=offset)


def build_data(args):
    """Spectral data for the requested geometry with enough modes for t_min."""
    if args.geometry == "ball":
        setup = BallSetup(args.m)
        f = TestFunctionId.parse(args.function)
        modes = args.modes or max(_ball_tail(setup, f).required_count(args.t_min, args.tol), 50)
        return build_spectral_data(setup, f, modes)
    if args.geometry == "dirichlet-interval":
        modes = args.modes or max(TailBound(8.0, 2.0).required_count(args.t_min, args.tol), 50)
        return dirichlet_interval_spectrum(modes)
    S = args.robin_s
    modes = args.modes or 50
    data = robin_interval_spectrum(S, modes)
    if not args.modes and data.tail.bound(args.t_min, data.count) > args.tol:
        data = robin_interval_spectrum(S, data.tail.required_count(args.t_min, args.tol) + 1)
    return data


def cmd_heat_content(args):
    _positive("t-min", args.t_min)
    _positive("t-max", args.t_max)
    _positive("tol", args.tol)
    if args.t_min >= args.t_max:
        raise DomainError("--t-min must be below --t-max")
    if args.points < 2:
        raise DomainError("--points must be at least 2")
    if args.modes < 0:
        raise DomainError("--modes must be >= 0 (0 = automatic)")
    data = build_data(args)
    curve = sample_curve(data, args.t_min, args.t_max, args.points, args.tol, workers=args.threads)
    _emit(curve.to_csv(), args.out)


def cmd_fit(args):
    curve = HeatCurve.from_csv(args.input) if args.input != "-" else HeatCurve.from_csv(sys.stdin.read())
    spec = WindowSpec(ratio=args.window_ratio, count=args.windows)
    fit = fit_expansion(curve, args.max_order, windows=spec)
    _emit(fit.to_json(), args.out)


def cmd_zeta(args):
    setup = BallSetup(args.m)
    f = TestFunctionId.parse(args.function)
    table = zeta_contour_values(setup, f, args.k_max)
    names = VARIANTS if args.variant == "all" else (args.variant,)
    arbitration = None
    if args.arbitrate:
        from .verify import ball_fit

        arbitration = arbitrate_variants({(setup.m, f.value): ball_fit(setup.m, f.value, args.threads)})
    orders = tuple(range(0, 2 * args.k_max + 2))
    _emit(zeta_json([table[n] for n in names], arbitration, beta_orders=orders), args.out)


def cmd_verify(args):
    m_values = parse_m_range(args.m_range)
    rep = run_suite(args.suite, m_values, workers=args.threads)
    rep = {"schema": SCHEMA, **rep, "passed": report_passed(rep)}
    _emit(_json(rep), args.out)
    if not rep["passed"]:
        raise VerificationFailed(f"suite {args.suite}: verification failed")


def _add_common(p):
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads for curve sampling; results do not depend on it (default: all cores)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="apsheat",
        description="Heat content asymptotics for spectral boundary conditions on the unit ball.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("zeros", help="positive zeros of J_nu as CSV", formatter_class=fmt)
    p.add_argument("--nu", required=True, help="Bessel order, e.g. 0, 1/2, 1.5")
    p.add_argument("--count", type=int, default=10, help="number of zeros")
    _add_common(p)
    p.set_defaults(run=cmd_zeros)

    p = sub.add_parser("heat-content", help="sample a heat content curve as CSV", formatter_class=fmt)
    p.add_argument("--geometry", choices=("ball", "dirichlet-interval", "robin-interval"), default="ball")
    p.add_argument("--m", type=int, default=3, help="ball dimension")
    p.add_argument("--function", choices=("f1", "f2"), default="f1", help="test spinor")
    p.add_argument("--robin-s", type=float, default=1.0, help="Robin parameter S for robin-interval")
    p.add_argument("--t-min", type=float, default=1e-4, help=f"smallest t (supported down to {DEFAULT_T_MIN})")
    p.add_argument("--t-max", type=float, default=1e-1, help="largest t")
    p.add_argument("--points", type=int, default=121, help="geometric grid size")
    p.add_argument("--tol", type=float, default=1e-12, help="certified truncation tolerance per sample")
    p.add_argument("--modes", type=int, default=0, help="stored modes (0: smallest count meeting --tol)")
    _add_common(p)
    p.set_defaults(run=cmd_heat_content)

    p = sub.add_parser("fit", help="fit beta_n from a curve CSV, JSON output", formatter_class=fmt)
    p.add_argument("--input", required=True, help="curve CSV (t,beta,tail_bound) or - for stdin")
    p.add_argument("--max-order", type=int, default=6, help="highest order N (<= 6)")
    p.add_argument("--window-ratio", type=float, default=10.0, help="t_hi / t_lo of each window")
    p.add_argument("--windows", type=int, default=5, help="number of sliding windows")
    _add_common(p)
    p.set_defaults(run=cmd_fit)

    p = sub.add_parser("zeta", help="zeta special values and residues, JSON output", formatter_class=fmt)
    p.add_argument("--m", type=int, default=3, help="ball dimension")
    p.add_argument("--function", choices=("f1", "f2"), default="f1", help="test spinor")
    p.add_argument("--variant", choices=VARIANTS + ("all",), default="all", help="bookkeeping variant")
    p.add_argument("--k-max", type=int, default=2, help="values at s = 0..-k_max")
    p.add_argument("--arbitrate", action="store_true", help="compare variants against a numerical fit")
    _add_common(p)
    p.set_defaults(run=cmd_zeta)

    p = sub.add_parser("verify", help="run a verification suite, JSON report", formatter_class=fmt)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--m-range", default="2..5", help="inclusive range of ball dimensions, e.g. 2..5")
    _add_common(p)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        args.run(args)
    except VerificationFailed as exc:
        print(f"apsheat: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, MissingValueError) as exc:
        print(f"apsheat: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalFailure, OverflowError) as exc:
        print(f"apsheat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"apsheat: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
