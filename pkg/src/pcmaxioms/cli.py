"""Command line interface: ``pcm <command> ...`` or ``python -m pcmaxioms``.

Exit codes: 0 success, 1 axiom check failed, 2 invalid input or flags,
3 eigenvector iteration did not converge, 4 matrix too small to consistify.
Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

from . import io
from .axioms import (
    characterization_check,
    check_correctness,
    check_it_invariance,
    independence_demo,
    method_tolerance,
)
from .core import (
    DEFAULT_TOL,
    PairwiseComparisonMatrix,
    PcmError,
    ToleranceConfig,
    Triad,
    consistent_from_weights,
    random_matrix,
)
from .triads import (
    TooSmall,
    TriadTransform,
    apply_triad_transform,
    consistify,
    local_consistency_alpha,
)
from .weighting import NoConvergence, em_weights, flat_weights, get_method, llsm_weights

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOCONV, EXIT_TOOSMALL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    fmt: str = "text"
    precision: int = 6
    tol: ToleranceConfig = DEFAULT_TOL
    weights_tol_given: bool = False
    seed: int = 0

    def __post_init__(self):
        if not 2 <= self.precision <= 17:
            raise UsageError(f"--precision must be in [2, 17], got {self.precision}")


def _config(args) -> CliConfig:
    try:
        overrides = {
            "reciprocity_tol": args.tol_reciprocity,
            "consistency_tol": args.tol_consistency,
            "weight_tol": args.tol_weights,
        }
        tol = replace(DEFAULT_TOL, **{k: v for k, v in overrides.items() if v is not None})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return CliConfig(args.format, args.precision, tol, args.tol_weights is not None, args.seed)


def _read_matrix(args, cfg: CliConfig) -> PairwiseComparisonMatrix:
    if (args.input is None) == (args.inline is None):
        raise UsageError("give exactly one input: a file path, '-' for stdin, or --inline")
    if args.inline is not None:
        text = args.inline.replace(";", "\n")
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return io.parse_matrix(text, cfg.tol)


def _vector_line(values, cfg: CliConfig, sep=" ") -> str:
    return sep.join(io.format_number(v, cfg.precision) for v in values)


def cmd_weights(args, cfg: CliConfig) -> int:
    A = _read_matrix(args, cfg)
    extra = {}
    if args.method == "em":
        res = em_weights(A)
        w = res.weights
        extra = {"lambda_max": res.lambda_max, "iterations": res.iterations}
    elif args.method == "flat":
        w = flat_weights(A)
    else:
        w = llsm_weights(A)
    if cfg.fmt == "json":
        print(json.dumps({"method": args.method, "weights": [float(format(x, ".17g")) for x in w], **extra}))
    elif cfg.fmt == "csv":
        print(_vector_line(w, cfg, ","))
    else:
        print(_vector_line(w, cfg))
        if extra:
            print(f"lambda_max {io.format_number(extra['lambda_max'], cfg.precision)}")
            print(f"iterations {extra['iterations']}")
    return EXIT_OK


def cmd_consistify(args, cfg: CliConfig) -> int:
    A = _read_matrix(args, cfg)
    trace = consistify(A)
    if cfg.fmt == "json":
        print(json.dumps(io.trace_to_obj(trace, args.identity_steps)))
    elif cfg.fmt == "csv":
        sys.stdout.write(io.matrix_to_csv(trace.final, cfg.precision))
    else:
        sys.stdout.write(io.trace_to_text(trace, cfg.precision, args.identity_steps))
    return EXIT_OK


def cmd_transform(args, cfg: CliConfig) -> int:
    A = _read_matrix(args, cfg)
    triad = Triad.from_one_based(*args.triad).validate(A.n)
    alpha = local_consistency_alpha(A, triad) if args.local else args.alpha
    B = apply_triad_transform(A, TriadTransform(triad, alpha))
    if cfg.fmt == "json":
        obj = io.matrix_to_obj(B)
        if args.local:
            obj["alpha"] = float(format(alpha, ".17g"))
        print(json.dumps(obj))
        return EXIT_OK
    if args.local:
        print(f"# alpha = {io.format_number(alpha, cfg.precision)}")
    sys.stdout.write(io.render_matrix(B, cfg.fmt, cfg.precision))
    return EXIT_OK


def _print_witness(report, cfg: CliConfig) -> None:
    w = report.witness
    p = cfg.precision
    print(f"  witness (trial {w.trial}):")
    for line in io.matrix_to_text(w.matrix, p).splitlines():
        print("    " + line)
    if w.transform is not None:
        i, j, k = w.transform.triad.one_based()
        print(f"  transform: triad ({i},{j},{k}) alpha = {io.format_number(w.transform.alpha, p)}")
    if w.note:
        print(f"  {w.note}")
    if w.error:
        print(f"  error: {w.error}")
    if w.reference is not None:
        print(f"  reference: {_vector_line(w.reference, cfg)}")
    if w.observed is not None:
        print(f"  observed:  {_vector_line(w.observed, cfg)}")


def cmd_check(args, cfg: CliConfig) -> int:
    method = get_method(args.method)
    tol = cfg.tol if cfg.weights_tol_given else method_tolerance(method, cfg.tol)
    runs = {
        "co": lambda: check_correctness(method, args.trials, cfg.seed, tol),
        "it": lambda: check_it_invariance(method, args.trials, cfg.seed, tol),
        "char": lambda: characterization_check(method, args.trials, cfg.seed, tol),
    }
    selected = ["co", "it"] if args.axiom == "all" else [args.axiom]
    reports = [runs[a]() for a in selected]
    if cfg.fmt == "json":
        payload = [r.to_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload))
    else:
        for r in reports:
            print(r.describe())
            if not r.passed:
                _print_witness(r, cfg)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_demo(args, cfg: CliConfig) -> int:
    table = independence_demo(cfg.tol, args.trials, cfg.seed)
    if cfg.fmt == "json":
        print(json.dumps(table.to_dict()))
        return EXIT_OK
    print(table.render())
    for row in table.rows.values():
        for report in row.values():
            if not report.passed:
                print()
                print(report.describe())
                _print_witness(report, cfg)
    return EXIT_OK


def cmd_gen(args, cfg: CliConfig) -> int:
    if args.n < 2:
        raise UsageError(f"n must be >= 2, got {args.n}")
    if args.consistent is not None:
        if len(args.consistent) != args.n:
            raise UsageError(f"--consistent needs {args.n} weights, got {len(args.consistent)}")
        if any(not x > 0 for x in args.consistent):
            raise UsageError("--consistent weights must be positive")
        A = consistent_from_weights(args.consistent)
    else:
        perturbation, seed = args.random
        if perturbation < 0:
            raise UsageError("perturbation must be >= 0")
        A = random_matrix(args.n, perturbation, int(seed))
    sys.stdout.write(io.render_matrix(A, cfg.fmt, cfg.precision))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--precision", type=int, default=6, help="printed decimals (17 = lossless)")
    common.add_argument("--tol-consistency", type=float, default=None)
    common.add_argument("--tol-weights", type=float, default=None)
    common.add_argument("--tol-reciprocity", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="CSV or JSON matrix file, '-' for stdin")
    source.add_argument("--inline", help="matrix rows separated by ';', e.g. '1,2;1/2,1'")

    parser = argparse.ArgumentParser(prog="pcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", parents=[common, source], help="derive a weight vector")
    p.add_argument("--method", choices=("llsm", "em", "flat"), default="llsm")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("consistify", parents=[common, source], help="run the consistification procedure")
    p.add_argument("--identity-steps", action=argparse.BooleanOptionalAction, default=True,
                   help="include steps with alpha = 1 in the output")
    p.set_defaults(func=cmd_consistify)

    p = sub.add_parser("transform", parents=[common, source], help="apply an alpha-transformation on a triad")
    p.add_argument("--triad", type=int, nargs=3, required=True, metavar=("I", "J", "K"), help="1-based")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float)
    g.add_argument("--local", action="store_true", help="use the alpha that makes the triad consistent")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("check", parents=[common], help="property-check a method against the axioms")
    p.add_argument("method", choices=("llsm", "em", "flat"))
    p.add_argument("axiom", choices=("co", "it", "all", "char"))
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", parents=[common], help="axiom independence table")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("gen", parents=[common], help="generate a matrix")
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--consistent", type=float, nargs="+", metavar="W")
    g.add_argument("--random", type=float, nargs=2, metavar=("PERTURBATION", "SEED"))
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if getattr(args, "trials", 1) < 1:
            raise UsageError("--trials must be >= 1")
        if getattr(args, "alpha", None) is not None and not args.alpha > 0:
            raise UsageError(f"--alpha must be positive, got {args.alpha}")
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"pcm: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoConvergence as exc:
        print(f"pcm: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except TooSmall as exc:
        print(f"pcm: {exc}", file=sys.stderr)
        return EXIT_TOOSMALL
    except PcmError as exc:
        print(f"pcm: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
