"""Command-line front end.

Subcommands:
  analyze    periods, competition data and walk-ensured status of one
             descriptor
  walksets   the three displacement sets at one walk length
  contract   DOT text of a descriptor's digraph contracted mod d
  sweep      cross-validation sweep over many descriptors

Descriptors are written "n=6;S=2,4;T=5" (whitespace ignored; an empty
side is written "T=" and is accepted where the subcommand can work
without it).  Exit codes: 0 success (for sweep: no violations),
1 violations found, 2 usage or parse error, 3 computation cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .boolmat import CapExceededError, PowerSequence, from_toeplitz
from .digraph import Digraph, contract, to_dot
from .engine import analyze, limits_match, predicted_limit
from .oracle import SweepConfig, render_report, run_sweep, VIOLATION
from .toeplitz import SpecFormatError, ToeplitzSpec
from .walksets import walksets_at

USAGE_ERROR = 2
CAP_ERROR = 3


def _write(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_spec(text: str, *, need_both: bool) -> ToeplitzSpec:
    spec = ToeplitzSpec.from_string(text)
    if need_both and (not spec.S or not spec.T):
        raise SpecFormatError("this subcommand needs both S and T nonempty")
    return spec


def _cmd_analyze(args) -> int:
    spec = _parse_spec(args.spec, need_both=True)
    report = analyze(spec, args.max_power)
    pred = predicted_limit(spec)
    if report.limit_matrix is not None and pred is not None:
        matches: Optional[bool] = limits_match(report.limit_matrix, pred)
    else:
        matches = None
    cert = report.certificate
    payload = {
        "n": spec.n,
        "S": list(spec.S),
        "T": list(spec.T),
        "d": report.profile.d,
        "d_plus": report.profile.d_plus,
        "matrix_index": report.matrix_index,
        "matrix_period": report.matrix_period,
        "competition_index": report.competition_index,
        "competition_period": report.competition_period,
        "walk_ensured": report.walk_ensured,
        "certificate_rule": cert.rule.value if cert.rule is not None else None,
        "limit_matches_prediction": matches,
    }
    if args.json:
        _write(json.dumps(payload) + "\n", args.out)
        return 0
    lines = [
        f"spec: {spec}",
        f"d: {report.profile.d}  d+: {report.profile.d_plus}",
        f"matrix index: {report.matrix_index}  matrix period: {report.matrix_period}",
        f"competition index: {report.competition_index}"
        f"  competition period: {report.competition_period}",
        f"walk-ensured: {str(report.walk_ensured).lower()}"
        f" (verdict={cert.verdict.value}"
        + (f", rule={cert.rule.value}" if cert.rule is not None else "")
        + (f", witness={cert.witness}" if cert.witness is not None else "")
        + ")",
        f"limit matches prediction: "
        + ("n/a" if matches is None else str(matches).lower()),
    ]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_walksets(args) -> int:
    spec = _parse_spec(args.spec, need_both=True)
    if args.i < 1:
        raise SpecFormatError("walk length must be positive")
    sets = walksets_at(spec, args.i)
    if args.json:
        payload = {
            "n": spec.n,
            "S": list(spec.S),
            "T": list(spec.T),
            "i": args.i,
            "P": sorted(sets.p),
            "Q": sorted(sets.q),
            "R": sorted(sets.r),
        }
        _write(json.dumps(payload) + "\n", args.out)
        return 0
    lines = [
        f"spec: {spec}  i: {args.i}",
        f"P: {sorted(sets.p)}",
        f"Q: {sorted(sets.q)}",
        f"R: {sorted(sets.r)}",
    ]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_contract(args) -> int:
    spec = _parse_spec(args.spec, need_both=False)
    g = Digraph(from_toeplitz(spec))
    if not 1 <= args.d <= spec.n:
        raise SpecFormatError(f"modulus {args.d} outside [1, {spec.n}]")
    _write(to_dot(contract(g, args.d)), args.out)
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise SpecFormatError(f"bad order range {text!r}") from None


def _cmd_sweep(args) -> int:
    lo, hi = _parse_range(args.n)
    checks = None
    if args.checks is not None:
        checks = frozenset(name for name in args.checks.split(",") if name)
    try:
        config = SweepConfig(
            n_lo=lo,
            n_hi=hi,
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            checks=checks,
            max_power=args.max_power,
        )
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from None
    findings = run_sweep(config)
    _write(render_report(findings, config), args.out)
    return 1 if any(f.severity == VIOLATION for f in findings) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeplitz-periods",
        description="Periods and competition structure of Boolean Toeplitz matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one descriptor")
    p.add_argument("spec", help='descriptor, e.g. "n=6;S=2,4;T=5"')
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--max-power", type=int, default=None, help="override the step cap")
    p.add_argument("--out", default=None, help="write output to this file")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("walksets", help="displacement sets at one length")
    p.add_argument("spec")
    p.add_argument("--i", type=int, required=True, help="walk length")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_walksets)

    p = sub.add_parser("contract", help="DOT of the digraph contracted mod d")
    p.add_argument("spec", help="descriptor; an empty side is allowed here")
    p.add_argument("--d", type=int, required=True, help="contraction modulus")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_contract)

    p = sub.add_parser("sweep", help="cross-validation sweep")
    p.add_argument("--n", required=True, help="order range a..b or a single order")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=0, help="samples per order (random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", default=None, help="comma-separated check names")
    p.add_argument("--max-power", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_sweep)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
