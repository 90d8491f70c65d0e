"""Command-line front end.

Subcommands:
  op      evaluate an operator profile over a window (CSV: index,value)
  weight  scan a weight-class bracket (JSON constant estimate with trend)
  cover   bounded-overlap covering demo (JSON selection + overlap profile)
  verify  run one named check; exit 0 on pass, 1 on violation/regression
  suite   run the whole battery and write per-check reports

Reports are deterministic: identical configuration and seeds produce
byte-identical files, independent of ZHARM_THREADS.  Numeric CSV output
uses 17 significant digits ('.' decimal point); JSON floats round-trip
exactly.  --emit-plot-data DIR additionally writes each report's data
series as CSV with a rendered PNG figure alongside.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import re
import sys

import numpy as np

from .covering import CenteredFamily, IntegerInterval, overlap_profile, select_cover
from .lattice import (
    Constant,
    FiniteSequence,
    Power,
    ShiftedPower,
    Tabulated,
    Weight,
)
from .operators import OperatorKind, operator_profile
from .plots import emit_series
from .suite import (
    CHECK_IDS,
    DEFAULT_SEED,
    Outcome,
    baseline_entries,
    load_baselines,
    run_check,
    run_suite,
)
from .weights import BracketSpec, ScanRange, scan_constant

__all__ = ["main"]


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def parse_window(text: str) -> IntegerInterval:
    try:
        lo, hi = text.split("..")
        return IntegerInterval(int(lo), int(hi))
    except (ValueError, TypeError) as e:
        raise ConfigError(f"bad window {text!r}; expected LO..HI") from e


def parse_sequence(spec: str) -> FiniteSequence:
    """delta:K[:VALUE] | indicator:LO:HI | ramp:LO:HI[:desc] |
    literal:OFFSET:v1,v2,... | random:SEED:LEN[:SPAN]"""
    try:
        head, *rest = spec.split(":")
        if head == "delta":
            k = int(rest[0])
            value = float(rest[1]) if len(rest) > 1 else 1.0
            return FiniteSequence.delta(k, value)
        if head == "indicator":
            return FiniteSequence.indicator(int(rest[0]), int(rest[1]))
        if head == "ramp":
            lo, hi = int(rest[0]), int(rest[1])
            n = hi - lo + 1
            vals = np.linspace(1.0 / n, 1.0, n)
            if len(rest) > 2 and rest[2] == "desc":
                vals = vals[::-1].copy()
            return FiniteSequence(lo, vals)
        if head == "literal":
            offset = int(rest[0])
            vals = [float(v) for v in rest[1].split(",")]
            return FiniteSequence(offset, vals)
        if head == "random":
            seed, length = int(rest[0]), int(rest[1])
            span = int(rest[2]) if len(rest) > 2 else 16
            rng = np.random.default_rng(seed)
            lo = int(rng.integers(-span, span - length + 2))
            return FiniteSequence(lo, rng.uniform(0.0, 8.0, size=length))
        raise ValueError(f"unknown sequence kind {head!r}")
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(f"bad sequence spec {spec!r}: {e}") from e


def parse_weight(spec: str) -> Weight:
    """constant:C | power:B | shifted-power:B:K0 | tabulated:LO:v1,v2,..."""
    try:
        head, *rest = spec.split(":")
        if head == "constant":
            return Constant(float(rest[0]))
        if head == "power":
            return Power(float(rest[0]))
        if head == "shifted-power":
            return ShiftedPower(float(rest[0]), int(rest[1]))
        if head == "tabulated":
            lo = int(rest[0])
            vals = [float(v) for v in rest[1].split(",")]
            return Tabulated(IntegerInterval(lo, lo + len(vals) - 1), vals)
        raise ValueError(f"unknown weight family {head!r}")
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(f"bad weight spec {spec!r}: {e}") from e


def _load_config_section(path: str, section: str) -> dict:
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    if section not in cp:
        return {}
    return dict(cp[section])


def _write_json(path: str, payload: dict) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _print_or_write(text: str, out: str | None) -> None:
    if out:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

_OP_KINDS = {
    "centered": OperatorKind.CENTERED_MAXIMAL,
    "noncentral": OperatorKind.NONCENTRAL_MAXIMAL,
    "riesz": OperatorKind.RIESZ,
}


def cmd_op(args) -> int:
    x = parse_sequence(args.x)
    window = parse_window(args.window)
    kind = _OP_KINDS[args.kind]
    prof = operator_profile(x, args.alpha, window, kind)
    lines = ["# schema: 1", "index,value"]
    for k, v in zip(window.indices(), prof.values):
        lines.append(f"{int(k)},{v:.17g}")
    _print_or_write("\n".join(lines) + "\n", args.out)
    if args.emit_plot_data:
        rows = list(zip(window.indices().tolist(), prof.values.tolist()))
        emit_series(
            args.emit_plot_data,
            f"op_{args.kind}_alpha{args.alpha:g}",
            ("index", "value"),
            rows,
            f"{args.kind} profile, alpha={args.alpha:g}",
        )
    return 0


def cmd_weight(args) -> int:
    w = parse_weight(args.family)
    centers = parse_window(args.centers)
    scan = ScanRange(centers, args.nmax)
    q = math.inf if args.q in ("inf", None) else float(args.q) if args.q else None
    if args.bracket == "ap" or (args.bracket is None and args.p is not None and q is None):
        bracket = BracketSpec("ap", p=args.p if args.p is not None else 1.0)
    elif args.bracket == "apq":
        if args.p is None or args.q is None:
            raise ConfigError("apq bracket needs --p and --q (q may be 'inf')")
        bracket = BracketSpec("apq", p=args.p, q=q)
    elif args.bracket == "rh":
        if args.r is None:
            raise ConfigError("rh bracket needs --r")
        bracket = BracketSpec("rh", r=args.r)
    elif args.bracket is None:
        bracket = BracketSpec("ap", p=args.p if args.p is not None else 1.0)
    else:
        raise ConfigError(f"unknown bracket {args.bracket!r}")
    est = scan_constant(bracket, w, scan)
    payload = {
        "schema": 1,
        "command": "weight",
        "family": w.describe(),
        "bracket": bracket.describe(),
        "value": est.value,
        "witness": {"m": est.witness[0], "N": est.witness[1]},
        "checkpoints": list(est.checkpoints),
        "trend": list(est.trend),
        "saturated": est.saturated(),
        "scan": {"centers": [centers.lo, centers.hi], "n_max": args.nmax},
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    _print_or_write(text, args.out)
    if args.emit_plot_data:
        rows = list(zip(est.checkpoints, est.trend))
        emit_series(
            args.emit_plot_data,
            f"weight_{w.describe().replace(':', '_')}_{bracket.kind}",
            ("n_max", "partial_max"),
            rows,
            f"{bracket.describe()} trend for {w.describe()}",
            logx=True,
        )
    return 0


def cmd_cover(args) -> int:
    if args.centers:
        centers = [int(c) for c in args.centers.split(",")]
        radii = [int(r) for r in args.radii.split(",")]
        if len(centers) != len(radii):
            raise ConfigError("--centers and --radii must have equal length")
    elif args.random:
        rng = np.random.default_rng(args.seed)
        centers = [int(c) for c in rng.choice(
            np.arange(-args.span, args.span + 1), size=args.random, replace=False)]
        radii = [int(r) for r in rng.integers(0, args.max_radius + 1, size=args.random)]
    else:
        raise ConfigError("cover needs --centers/--radii or --random N")
    fam = CenteredFamily(tuple(centers), tuple(radii))
    sel = select_cover(fam)
    hull = sel.union_hull()
    window = IntegerInterval(hull.lo - 1, hull.hi + 1)
    prof = overlap_profile(sel, window)
    payload = {
        "schema": 1,
        "command": "cover",
        "family_size": len(centers),
        "chosen": [[s.m, s.N] for s in sel.chosen],
        "window": [window.lo, window.hi],
        "overlap": prof.tolist(),
        "max_overlap": int(prof.max()),
    }
    _print_or_write(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def _emit_outcome_plots(outcomes: list[Outcome], out_dir: str) -> None:
    for o in outcomes:
        if o.series:
            stem = o.key.replace("/", "_").replace(":", "")
            if o.check in ("T3_2", "T3_5"):
                cols, title, logx = ("level", "ratio"), f"{o.key} level sweep", True
            elif o.check == "T4_1":
                cols, title, logx = ("t", "ratio"), "segment ratios", False
            else:
                cols, title, logx = ("x", "y"), o.key, False
            emit_series(out_dir, stem, cols, o.series, title, logx=logx)


def _outcome_payload(check: str, seed: int, outcomes: list[Outcome]) -> dict:
    return {
        "schema": 1,
        "command": "verify",
        "check": check,
        "seed": seed,
        "passed": all(o.passed for o in outcomes),
        "outcomes": [o.to_dict() for o in outcomes],
    }


def cmd_verify(args) -> int:
    if args.check not in CHECK_IDS:
        raise ConfigError(
            f"unknown check {args.check!r}; known: {', '.join(CHECK_IDS)}"
        )
    baselines = load_baselines(args.baseline)
    outcomes = run_check(
        args.check, seed=args.seed, cases=args.cases, quick=args.quick,
        baselines=baselines,
    )
    payload = _outcome_payload(args.check, args.seed, outcomes)
    _print_or_write(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    if args.emit_plot_data:
        _emit_outcome_plots(outcomes, args.emit_plot_data)
    return 0 if payload["passed"] else 1


def cmd_suite(args) -> int:
    baselines = load_baselines(args.baseline)
    checks = args.checks.split(",") if args.checks else None
    failures = 0
    all_outcomes: list[Outcome] = []
    summary = []
    for check in checks or CHECK_IDS:
        outcomes = run_check(
            check, seed=args.seed, quick=args.quick, baselines=baselines
        )
        all_outcomes.extend(outcomes)
        ok = all(o.passed for o in outcomes)
        failures += 0 if ok else 1
        summary.append({"check": check, "passed": ok,
                        "outcomes": [o.key for o in outcomes]})
        if args.out_dir:
            _write_json(
                os.path.join(args.out_dir, f"report_{check}.json"),
                _outcome_payload(check, args.seed, outcomes),
            )
        for o in outcomes:
            status = "pass" if o.passed else "FAIL"
            val = "-" if o.value is None else f"{o.value:.6g}"
            print(f"[{status}] {o.key:44s} {o.kind:14s} {val}")
    if args.out_dir:
        _write_json(
            os.path.join(args.out_dir, "suite.json"),
            {
                "schema": 1,
                "command": "suite",
                "seed": args.seed,
                "quick": args.quick,
                "passed": failures == 0,
                "checks": summary,
            },
        )
    if args.emit_plot_data:
        _emit_outcome_plots(all_outcomes, args.emit_plot_data)
    if args.write_baselines:
        _write_json(
            args.write_baselines,
            {"schema": 1, "seed": args.seed,
             "entries": baseline_entries(all_outcomes)},
        )
    print(f"suite: {'PASS' if failures == 0 else 'FAIL'} "
          f"({len(all_outcomes)} outcomes, {failures} failing checks)")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zharm",
        description="Discrete fractional operators, weight scans and "
        "inequality verification on the integer lattice.",
    )
    parser.add_argument("--config", help="INI config file; section = subcommand")
    sub = parser.add_subparsers(dest="command", required=True)

    p_op = sub.add_parser("op", help="evaluate an operator profile")
    p_op.add_argument("--kind", choices=sorted(_OP_KINDS), required=True)
    p_op.add_argument("--alpha", type=float, required=True)
    p_op.add_argument("--x", required=True, help="sequence spec, e.g. delta:0")
    p_op.add_argument("--window", required=True, help="LO..HI")
    p_op.add_argument("--out", help="output CSV path (default: stdout)")
    p_op.add_argument("--emit-plot-data", metavar="DIR")
    p_op.set_defaults(fn=cmd_op)

    p_w = sub.add_parser("weight", help="scan a weight-class bracket")
    p_w.add_argument("--family", required=True, help="weight spec, e.g. power:-0.5")
    p_w.add_argument("--bracket", choices=["ap", "apq", "rh"])
    p_w.add_argument("--p", type=float)
    p_w.add_argument("--q", help="target exponent; number or 'inf'")
    p_w.add_argument("--r", type=float)
    p_w.add_argument("--centers", required=True, help="LO..HI")
    p_w.add_argument("--nmax", type=int, required=True)
    p_w.add_argument("--out")
    p_w.add_argument("--emit-plot-data", metavar="DIR")
    p_w.set_defaults(fn=cmd_weight)

    p_c = sub.add_parser("cover", help="bounded-overlap covering demo")
    p_c.add_argument("--centers", help="comma-separated centers")
    p_c.add_argument("--radii", help="comma-separated radii")
    p_c.add_argument("--random", type=int, help="random family size")
    p_c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_c.add_argument("--span", type=int, default=1000)
    p_c.add_argument("--max-radius", type=int, default=100)
    p_c.add_argument("--out")
    p_c.set_defaults(fn=cmd_cover)

    p_v = sub.add_parser("verify", help="run one named check")
    p_v.add_argument("check", help=f"one of: {', '.join(CHECK_IDS)}")
    p_v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_v.add_argument("--cases", type=int)
    p_v.add_argument("--quick", action="store_true")
    p_v.add_argument("--baseline", help="baseline JSON (default: packaged)")
    p_v.add_argument("--out")
    p_v.add_argument("--emit-plot-data", metavar="DIR")
    p_v.set_defaults(fn=cmd_verify)

    p_s = sub.add_parser("suite", help="run the full battery")
    p_s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_s.add_argument("--quick", action="store_true")
    p_s.add_argument("--checks", help="comma-separated subset of check ids")
    p_s.add_argument("--baseline")
    p_s.add_argument("--out-dir")
    p_s.add_argument("--emit-plot-data", metavar="DIR")
    p_s.add_argument("--write-baselines", metavar="FILE")
    p_s.set_defaults(fn=cmd_suite)

    # let window/center specs like -4..4 pass as option values
    matcher = re.compile(r"^-\d+(\.\d+)?(\.\.-?\d+)?$")
    parser._negative_number_matcher = matcher
    for sp in sub.choices.values():
        sp._negative_number_matcher = matcher
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    # two-phase parse so --config can prefill subcommand defaults
    args, _ = parser.parse_known_args(argv)
    if args.config:
        section = _load_config_section(args.config, args.command)
        if section:
            subparser = {
                "op": "op", "weight": "weight", "cover": "cover",
                "verify": "verify", "suite": "suite",
            }[args.command]
            for action in parser._subparsers._group_actions:
                sp = action.choices.get(subparser)
                if sp is not None:
                    defaults = {}
                    for key, val in section.items():
                        defaults[key.replace("-", "_")] = val
                    sp.set_defaults(**_coerce_defaults(sp, defaults))
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        err = {"schema": 1, "error": "config", "message": str(e)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as e:
        err = {"schema": 1, "error": type(e).__name__, "message": str(e)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2


def _coerce_defaults(subparser: argparse.ArgumentParser, defaults: dict) -> dict:
    coerced = {}
    by_dest = {a.dest: a for a in subparser._actions}
    for key, val in defaults.items():
        action = by_dest.get(key)
        if action is None:
            raise ConfigError(f"unknown config key {key!r}")
        if action.type is int:
            coerced[key] = int(val)
        elif action.type is float:
            coerced[key] = float(val)
        elif isinstance(action, argparse._StoreTrueAction):
            coerced[key] = val.lower() in ("1", "true", "yes", "on")
        else:
            coerced[key] = val
    return coerced


if __name__ == "__main__":
    sys.exit(main())
