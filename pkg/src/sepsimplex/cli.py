"""Command-line front end.

Every command writes one JSON report (to ``--output`` or stdout). Exit codes:
0 success / inside / pass, 1 outside / fail, 2 input error, 3 internal
invariant violation.
"""

import argparse
import datetime
import sys

import numpy as np

from . import __version__
from .constructions import (
    complement_decomposition,
    max_twirl_error,
    threshold_decomposition,
    verify_decomposition,
)
from .exceptions import InputError, InvariantViolation, IterationLimitError
from .geometry import (
    approx_set,
    bell_simplex,
    computational_simplex,
    hull_membership,
    volume_report,
)
from .jsonio import (
    FormatError,
    approx_set_from_json,
    approx_set_to_json,
    decomposition_from_json,
    decomposition_to_json,
    dumps,
    load_path,
    schmidt_to_json,
    simplex_from_json,
    state_from_json,
)
from .pencil import ppt_boundary_scan, ppt_threshold, schmidt_decompose

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

COMMANDS = (
    "schmidt",
    "threshold",
    "decompose-threshold",
    "decompose-complement",
    "twirl-check",
    "build-set",
    "member",
    "volume",
    "verify",
)


def build_parser():
    parser = argparse.ArgumentParser(prog="sepsimplex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="input JSON file")
        p.add_argument("--simplex", help="simplex JSON file (build-set)")
        p.add_argument("--output", help="report path; stdout when omitted")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=0)
        p.add_argument("--alpha", default="auto", help="'auto' or a number in (0, 1]")
        p.add_argument("--mode", choices=("float", "exact"), default="float")
        p.add_argument("--n", type=int, help="local dimension (build-set, volume)")
        p.add_argument("--basis", choices=("bell", "computational"), default="bell")
        p.add_argument("--beta", default="centroid", help="comma-separated coordinates or 'centroid'")
        p.add_argument("--no-timestamp", action="store_true")
    return parser


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise InputError(f"--{name} is required for '{args.command}'")
    return v


def _alpha(args):
    if args.alpha == "auto":
        return "auto"
    try:
        return float(args.alpha)
    except ValueError:
        raise InputError(f"--alpha must be 'auto' or a number, got {args.alpha!r}") from None


def _state(args):
    return state_from_json(load_path(_need(args, "input")))


def cmd_schmidt(args):
    sd = schmidt_decompose(_state(args), args.tol)
    return EXIT_OK, {"schmidt": schmidt_to_json(sd)}


def cmd_threshold(args):
    psi = _state(args)
    m, alpha = ppt_threshold(schmidt_decompose(psi, args.tol))
    scan, fully = ppt_boundary_scan(psi, args.tol, full_output=True)
    return EXIT_OK, {
        "M": m,
        "alpha_M": alpha,
        "alpha_scan": scan,
        "fully_ppt": fully,
        "scan_difference": abs(scan - alpha),
    }


def _decompose(args, build):
    sd = schmidt_decompose(_state(args), args.tol)
    dec = build(sd).rotated(sd.basis_a, sd.basis_b)
    report = verify_decomposition(dec)
    code = EXIT_OK if report.passed else EXIT_FAIL
    return code, {"verify": report.as_dict(), "terms": len(dec), "decomposition": decomposition_to_json(dec)}


def cmd_decompose_threshold(args):
    return _decompose(args, threshold_decomposition)


def cmd_decompose_complement(args):
    return _decompose(args, complement_decomposition)


def cmd_twirl_check(args):
    sd = schmidt_decompose(_state(args), args.tol)
    err = max_twirl_error(sd)
    return (EXIT_OK if err <= 1e-12 else EXIT_FAIL), {"max_abs_error": err}


def cmd_build_set(args):
    if args.simplex:
        s = simplex_from_json(load_path(args.simplex), tol=args.tol)
    else:
        n = _need(args, "n")
        s = bell_simplex(n) if args.basis == "bell" else computational_simplex(n)
    aset = approx_set(s, _alpha(args), args.tol)
    return EXIT_OK, {"approx_set": approx_set_to_json(aset)}


def _load_set(path, tol):
    doc = load_path(path)
    if isinstance(doc, dict) and "approx_set" in doc:
        return approx_set_from_json(doc["approx_set"], "$.approx_set", tol)
    return approx_set_from_json(doc, tol=tol)


def cmd_member(args):
    aset = _load_set(_need(args, "input"), args.tol)
    d = aset.simplex.size
    if args.beta == "centroid":
        beta = np.full(d, 1.0 / d)
    else:
        try:
            beta = np.array([float(x) for x in args.beta.split(",")])
        except ValueError:
            raise InputError(f"--beta must be comma-separated numbers, got {args.beta!r}") from None
    if beta.shape != (d,) or np.any(beta < -args.tol) or abs(beta.sum() - 1) > args.tol:
        raise InputError(f"--beta must be {d} nonnegative coordinates summing to 1")
    res = hull_membership(beta, aset, args.mode, args.tol)
    out = {"beta": beta.tolist(), "inside": bool(res.inside), "objective": res.objective, "pivots": res.pivots}
    if res.inside:
        out["weights"] = res.weights.tolist()
    else:
        out["normal"] = res.normal.tolist()
        out["offset"] = res.offset
    return (EXIT_OK if res.inside else EXIT_FAIL), out


def cmd_volume(args):
    n = _need(args, "n")
    alpha = _alpha(args)
    aset = approx_set(bell_simplex(n), alpha, args.tol)
    if args.samples < 0:
        raise InputError("--samples must be >= 0")
    return EXIT_OK, {"volume": volume_report(aset, args.samples, args.seed).as_dict()}


def cmd_verify(args):
    doc = load_path(_need(args, "input"))
    if isinstance(doc, dict) and "decomposition" in doc:
        dec = decomposition_from_json(doc["decomposition"], "$.decomposition")
    else:
        dec = decomposition_from_json(doc)
    report = verify_decomposition(dec, min(args.tol, 1e-10))
    return (EXIT_OK if report.passed else EXIT_FAIL), {"verify": report.as_dict()}


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def _config(args):
    return {k: v for k, v in sorted(vars(args).items()) if k != "no_timestamp"}


def run(args):
    """Execute one parsed command; returns ``(exit_code, report_dict)``."""
    report = {"tool": "sepsimplex", "version": __version__, "command": args.command, "config": _config(args)}
    if not args.no_timestamp:
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    try:
        if args.tol <= 0:
            raise InputError("--tol must be positive")
        code, result = HANDLERS[args.command](args)
    except (FormatError, InputError) as exc:
        code, result = EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)}
    except (InvariantViolation, IterationLimitError) as exc:
        code, result = EXIT_INTERNAL, {"error": type(exc).__name__, "message": str(exc)}
    report["exit_code"] = code
    report.update(result)
    return code, report


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, report = run(args)
    text = dumps(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"sepsimplex: {report['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
