"""Command-line interface: evaluate bounds, sweep grids, run simulations, self-test.

Exit codes: 0 success, 1 a simulated bound was violated, 2 usage or
precondition error (reported as a JSON object on stdout).
"""
import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .bounds import (BASELINES, BaselineParams, THEOREM_TAGS, TailParams, baseline, cor_empirical, evaluate,
                     mcdiarmid_norm_sum)
from .bounds.specializations import empirical_z
from .errors import ConfigError, MTBError
from .linalg import HermitianMatrix, lambda_max
from .selftest import SUITES, run_suites

EXTRA_THEOREMS = ("cor-emp", "mcdiarmid-norm-ben", "mcdiarmid-norm-ber")
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(obj):
    """Replace non-finite floats by None so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.floating):
        return _jsonable(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _dump(obj):
    return json.dumps(_jsonable(obj), allow_nan=False)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None


def _read_matrix(path):
    try:
        return HermitianMatrix.from_json_obj(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{path} is not a matrix object {{'d', 're', 'im'}}: {exc}") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_tail_flags(p):
    p.add_argument("--theorem", required=True, choices=THEOREM_TAGS + EXTRA_THEOREMS)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sigma", type=float, help="sigma, or sigma_hat for cor-emp")
    p.add_argument("--bigU", type=float)
    p.add_argument("--bigK", type=float)
    dims = p.add_mutually_exclusive_group()
    dims.add_argument("--d", type=int, help="ambient dimension")
    dims.add_argument("--cov", help="covariance proxy Sigma as a matrix JSON file")
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--n", type=int)
    p.add_argument("--grid", type=int, default=64, help="grid size for thm1-monotone")
    p.add_argument("--cov-exponent", choices=("literal", "half"), default="literal",
                   help="exponent in the 2 a z^a cap of the covariance upper bound")
    p.add_argument("--norms", type=_float_list, help="mcdiarmid-norm: per-summand Orlicz norms")
    p.add_argument("--moments", type=_float_list, help="mcdiarmid-norm: per-summand E||Y_i||^2")
    p.add_argument("--paper-literal", action="store_true",
                   help="use the constants exactly as displayed instead of the conservative readings")


def _evaluate_tail(args, x):
    if args.theorem == "cor-emp":
        if args.sigma is None or args.bigK is None or args.n is None:
            raise ConfigError("cor-emp needs --sigma (sigma_hat), --bigK and --n")
        return cor_empirical(args.sigma, args.bigK, args.alpha, x, args.n, args.d or 1)
    if args.theorem.startswith("mcdiarmid-norm"):
        if not args.norms or not args.moments:
            raise ConfigError("mcdiarmid-norm needs --norms and --moments")
        pair = mcdiarmid_norm_sum(args.norms, args.moments, args.alpha, x)
        return pair.bennett if args.theorem.endswith("ben") else pair.bernstein
    cov = _read_matrix(args.cov) if args.cov else None
    bigU = args.bigU
    if bigU is None and args.theorem in ("thm2", "cor-iid", "cor-iid-ber"):
        bigU = args.bigK  # these bounds do not use U
    p = TailParams(alpha=args.alpha, sigma=args.sigma, bigU=bigU, bigK=args.bigK, x=x, dim=args.d, cov=cov,
                   eps=args.eps, n=args.n)
    return evaluate(args.theorem, p, literal=args.paper_literal, grid=args.grid, cov_exponent=args.cov_exponent)


def cmd_bound(args, out):
    if args.x is None:
        raise ConfigError("--x is required")
    out.write(_dump(_evaluate_tail(args, args.x).to_dict()) + "\n")
    return EXIT_OK


def parse_grid(text):
    """a:b:steps[:log] -> list of x values (log spacing when the suffix is given)."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
        raise ConfigError(f"grid must be a:b:steps[:log], got {text!r}")
    try:
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"grid must be a:b:steps[:log], got {text!r}") from None
    if steps < 0:
        raise ConfigError("grid steps must be >= 0")
    if steps == 0:
        return []
    if len(parts) == 4 and parts[3] == "log":
        if not (a > 0 and b > 0):
            raise ConfigError("a log grid needs positive end points")
        return [float(v) for v in np.geomspace(a, b, steps)]
    return [float(v) for v in np.linspace(a, b, steps)]


def cmd_scan(args, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "deviation", "failure_budget", "regime", "formula"])
    for x in parse_grid(args.x_grid):
        r = _evaluate_tail(args, x)
        writer.writerow([repr(x), repr(float(r.deviation)), repr(float(r.failure_budget)),
                         getattr(r.regime, "value", r.regime), r.formula])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out):
    from .montecarlo import SimulationConfig, run_experiment
    cfg = SimulationConfig.from_json_obj(_read_json(args.config), seed=args.seed, threads=args.threads)
    report = run_experiment(cfg)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    out.write(text + "\n")
    print(f"runtime {report.runtime_seconds:.2f}s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _read_samples(path):
    obj = _read_json(path)
    if isinstance(obj, dict):
        obj = obj.get("matrices")
    if not isinstance(obj, list) or not obj:
        raise ConfigError("samples file must be a nonempty list of matrices (or {'matrices': [...]})")
    try:
        mats = [HermitianMatrix.from_json_obj(m) for m in obj]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad matrix in samples file: {exc}") from None
    if len({m.dim for m in mats}) != 1:
        raise ConfigError("all sample matrices must share one dimension")
    return mats


def empirical_interval(mats, alpha, bigK, x):
    """Empirical Bernstein interval around the sample mean of Hermitian matrices."""
    n, d = len(mats), mats[0].dim
    stack = np.array([m.data for m in mats])
    mean = stack.mean(axis=0)
    dev = stack - mean
    sigma_hat_sq = max(lambda_max(HermitianMatrix(np.mean(dev @ dev, axis=0))), 0.0)
    sigma_hat = math.sqrt(sigma_hat_sq)
    res = cor_empirical(sigma_hat, bigK, alpha, x, n, d)
    return {
        "center_norm_bound": res.deviation,
        "sigma_hat": sigma_hat,
        "z_hat": empirical_z(sigma_hat, float(bigK), float(alpha)),
        "budget": res.failure_budget,
        "n": n,
        "d": d,
        "mean": HermitianMatrix(mean).to_json_obj(),
        "warnings": list(res.warnings),
    }


def cmd_empirical(args, out):
    out.write(_dump(empirical_interval(_read_samples(args.input), args.alpha, args.bigK, args.x)) + "\n")
    return EXIT_OK


def cmd_baseline(args, out):
    bp = BaselineParams(t=args.t, sigma=args.sigma, bigK=args.bigK, bigU=args.bigU, x=args.x, dim=args.d,
                        n=args.n, alpha=args.alpha,
                        cov=_read_matrix(args.cov) if args.cov else None,
                        mean_cov=_read_matrix(args.mean_cov) if args.mean_cov else None,
                        bigM=args.bigM, free_constant=args.free_constant,
                        free_constants=tuple(args.free_constants) if args.free_constants else None)
    res = baseline(args.kind, bp)
    if hasattr(res, "to_dict"):
        payload = dict(res.to_dict(), kind=args.kind)
    else:
        payload = {"kind": args.kind, "tail_probability": res}
    out.write(_dump(payload) + "\n")
    return EXIT_OK


def cmd_selftest(args, out):
    failures = run_suites(args.suite or None, out=lambda line: out.write(line + "\n"))
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


def build_parser():
    parser = _Parser(prog="mtb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("bound", help="evaluate one bound and print its JSON result")
    _add_tail_flags(p)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("scan", help="evaluate a bound on an x grid and write CSV")
    _add_tail_flags(p)
    p.add_argument("--x-grid", required=True, help="a:b:steps, or a:b:steps:log")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run a simulation config and check the failure budget")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=lambda s: int(s, 0), help="overrides $MTB_SEED and the config's seed")
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("empirical", help="empirical Bernstein interval from a file of matrices")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--bigK", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_empirical)

    p = sub.add_parser("baseline", help="evaluate an earlier bound for comparison")
    p.add_argument("--kind", required=True, choices=sorted(BASELINES))
    for flag in ("--t", "--sigma", "--bigK", "--bigU", "--x", "--alpha", "--bigM", "--free-constant"):
        p.add_argument(flag, type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--cov")
    p.add_argument("--mean-cov")
    p.add_argument("--free-constants", type=_float_list, help="c,C,c1")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("selftest", help="run the built-in property suites")
    p.add_argument("--suite", action="append", choices=SUITES)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        out.write(_dump({"error": str(exc), "type": "UsageError"}) + "\n")
    except (MTBError, ValueError) as exc:
        out.write(_dump({"error": str(exc), "type": type(exc).__name__}) + "\n")
    except OSError as exc:
        out.write(_dump({"error": str(exc), "type": "OSError"}) + "\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
