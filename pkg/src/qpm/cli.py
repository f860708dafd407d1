"""Command-line entry point.

Exit codes: 0 success, 2 input or usage error, 3 domain validation error,
4 numerical-integrity error. Results go to stdout; diagnostics to stderr.

CSV column order
----------------
decompose     value, rank, residual
measure       value, probability
chsh-quantum  zi_ixpz, xi_ixpz, xi_izmx, zi_izmx, s, classical_bound, violated
witness       the chsh-quantum columns, then margin
chsh-lhv      trials, seed, max_abs_s, deterministic_max, within_bound
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import chsh
from .cxmat import frob
from .errors import NumericalIntegrityError, SchemaError, ValidationError
from .pmeas import collapse, make_pm, outcome_prob, reconstruct
from .serialize import density_from_json, density_to_json, fmt, matrix_from_json, measurement_to_json, rounded

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3, 4
PROB_SUM_TOL = 1e-10


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc


def _load_observable(path: str) -> np.ndarray:
    a = matrix_from_json(_load_json(path))
    if a.shape[0] != a.shape[1]:
        raise SchemaError(f"{path}: observable must be square, got {a.shape[0]}x{a.shape[1]}")
    residual = frob(a - a.conj().T)
    if residual > 1e-9 * max(1.0, frob(a)):
        raise ValidationError(f"{path}: observable is not hermitian (|A - A^dagger| = {residual:.3e})", "hermitian")
    return a


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(rounded(obj)) + "\n"


def cmd_decompose(args) -> str:
    a = _load_observable(args.input)
    m = make_pm(a)
    residual = frob(reconstruct(m) - a)
    if args.format == "csv":
        return _write_csv(["value", "rank", "residual"],
                          [(o.value, round(np.trace(o.proj).real), residual) for o in m.outcomes])
    if args.format == "human":
        lines = [f"{len(m)} outcome(s), reconstruction residual {residual:.3e}"]
        lines += [f"  value {fmt(o.value):>14}  rank {round(np.trace(o.proj).real)}" for o in m.outcomes]
        return "\n".join(lines) + "\n"
    return _json({"measurement": measurement_to_json(m), "residual": residual})


def cmd_measure(args) -> str:
    rho = density_from_json(_load_json(args.state))
    a = _load_observable(args.observable)
    if a.shape[0] != rho.dim:
        raise ValidationError(f"observable dim {a.shape[0]} does not match state dim {rho.dim}", "dimension")
    m = make_pm(a)
    probs = [outcome_prob(rho, m, i) for i in range(len(m))]
    total = sum(probs)
    if abs(total - 1) > PROB_SUM_TOL:
        raise NumericalIntegrityError(f"outcome probabilities sum to {total!r}")
    if args.format == "csv":
        return _write_csv(["value", "probability"], [(o.value, p) for o, p in zip(m.outcomes, probs)])
    if args.format == "human":
        return "".join(f"value {fmt(o.value):>14}  probability {fmt(p)}\n" for o, p in zip(m.outcomes, probs))
    return _json([
        {"value": o.value, "probability": p, "collapsed": density_to_json(collapse(rho, o.proj))}
        for o, p in zip(m.outcomes, probs)
    ])


_CORR_COLS = ["zi_ixpz", "xi_ixpz", "xi_izmx", "zi_izmx", "s", "classical_bound", "violated"]


def _report_row(d: dict) -> list:
    return [*d["correlations"].values(), d["s"], d["classical_bound"], d["violated"]]


def cmd_chsh_quantum(args) -> str:
    d = chsh.chsh_quantum(chsh.singlet()).to_dict()
    if args.format == "csv":
        return _write_csv(_CORR_COLS, [_report_row(d)])
    if args.format == "human":
        lines = [f"E[{k}] = {fmt(v)}" for k, v in d["correlations"].items()]
        lines.append(f"S = {fmt(d['s'])} (classical bound {d['classical_bound']:g}, violated: {d['violated']})")
        return "\n".join(lines) + "\n"
    return _json(d)


def cmd_witness(args) -> str:
    d = chsh.no_lhv_witness().to_dict()
    if args.format == "csv":
        return _write_csv(_CORR_COLS + ["margin"], [_report_row(d) + [d["margin"]]])
    if args.format == "human":
        return f"{d['message']}\nmargin {fmt(d['margin'])}\n"
    return _json(d)


def cmd_chsh_lhv(args) -> str:
    best = chsh.monte_carlo_lhv(args.trials, args.seed, workers=args.workers)
    det = chsh.max_deterministic_chsh()
    d = {
        "trials": args.trials,
        "seed": args.seed,
        "max_abs_s": best,
        "deterministic_max": det,
        "within_bound": best <= chsh.CLASSICAL_BOUND + 1e-9,
    }
    if args.format == "csv":
        return _write_csv(list(d), [list(d.values())])
    if args.format == "human":
        return (f"max |S| over {args.trials} random LHV models (seed {args.seed}): {fmt(best)}\n"
                f"exact deterministic maximum: {det}\n")
    return _json(d)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "human"], default="json")

    parser = argparse.ArgumentParser(prog="qpm", description="Projective measurements and the CHSH inequality.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="projective measurement of an observable")
    p.add_argument("--input", required=True, help="observable matrix (JSON)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("measure", parents=[common], help="outcome distribution and collapsed states")
    p.add_argument("--state", required=True, help="density matrix (JSON)")
    p.add_argument("--observable", required=True, help="observable matrix (JSON)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("chsh-quantum", parents=[common], help="CHSH correlations on the singlet")
    p.set_defaults(func=cmd_chsh_quantum)

    p = sub.add_parser("chsh-lhv", parents=[common], help="sample random local hidden-variable models")
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=None, help="defaults to $QPM_SEED, then 0")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_chsh_lhv)

    p = sub.add_parser("witness", parents=[common], help="quantum value versus classical bound")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        env = os.environ.get("QPM_SEED", "0")
        try:
            args.seed = _seed(env)
        except argparse.ArgumentTypeError as exc:
            parser.error(f"QPM_SEED: {exc}")
    try:
        out = args.func(args)
    except SchemaError as exc:
        print(f"qpm: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"qpm: validation error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalIntegrityError as exc:
        print(f"qpm: numerical integrity error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
