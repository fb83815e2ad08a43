"""Command-line entry point: ``tracezero <subcommand> ...``.

Output is JSON (or CSV files for sample-region); ``--pretty`` switches
stdout to a human-readable layout.  Exit codes: 0 success / not ruled
out, 1 a necessary condition fails or an acceptance check fails, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import region
from .charpoly import CharPolyCoeffs
from .necessity import check_necessary, coeffs_with_derived_k5
from .pairgraph import class_count_formula, enumerate_pair_classes, trace_product_set
from .perm import SizeLimitError, format_cycle_type, normalize_cycle_type, parse_cycle_type
from .powerzero import census

SCHEMA_VERSION = 1

EPILOG = f"""\
JSON output carries "schema_version": {SCHEMA_VERSION}.
Environment: {region.OUTPUT_DIR_ENV} sets the default directory for sample-region output.
Exit codes: 0 ok, 1 check failed, 2 invalid input."""

CONFIG_HELP = """\
config file format: one "key = value" per line, '#' starts a comment.
Keys: grid_step, random_samples, support_size, seed, output_path, plot,
include_pairs.  Values in the file override command-line flags."""


class InputError(Exception):
    pass


def _emit(data: dict, pretty_text: str | None, pretty: bool) -> None:
    if pretty and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=2 if pretty else None))


def _cycle_type(text: str):
    try:
        return parse_cycle_type(text)
    except ValueError as exc:
        raise InputError(f"malformed cycle type {text!r}: {exc}") from None


def cmd_enumerate_classes(args) -> int:
    ct1, ct2 = _cycle_type(args.ct1), _cycle_type(args.ct2)
    n = args.n or max(sum(ct1), sum(ct2))
    try:
        ct1, ct2 = normalize_cycle_type(ct1, n), normalize_cycle_type(ct2, n)
        classes = enumerate_pair_classes(ct1, ct2, n)
    except SizeLimitError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(f"cycle types do not fit degree {n}: {exc}") from None
    reps = [
        {
            "pi": cls.representative[0].cycle_string(),
            "beta": cls.representative[1].cycle_string(),
            "orbit_size": cls.orbit_size,
            "trace": cls.trace,
        }
        for cls in classes
    ]
    data = {
        "n": n,
        "ct1": format_cycle_type(ct1),
        "ct2": format_cycle_type(ct2),
        "count": len(classes),
        "formula": class_count_formula(ct1, ct2, n),
        "representatives": reps,
    }
    lines = [f"{data['ct1']} x {data['ct2']} in S_{n}: {len(classes)} classes (formula {data['formula']})"]
    lines += [f"  {r['pi']:<16} {r['beta']:<16} orbit {r['orbit_size']:>4}  trace {r['trace']}" for r in reps]
    _emit(data, "\n".join(lines), args.pretty)
    return 0


def cmd_trace_table(args) -> int:
    rows = [
        {"ct1": a, "ct2": b, "traces": sorted(trace_product_set(parse_cycle_type(a), parse_cycle_type(b)))}
        for a, b in (("5", "5"), ("5", "3+2"), ("3+2", "3+2"))
    ]
    text = "\n".join(f"{r['ct1']:>4} x {r['ct2']:<4} {r['traces']}" for r in rows)
    _emit({"rows": rows}, text, args.pretty)
    return 0


_NUMBER_LIST = re.compile(r"^\s*[-+]?[\d.]")


def parse_coeffs(text: str) -> CharPolyCoeffs:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 4):
        raise InputError(f"expected 3 or 4 comma-separated numbers (k2,k3,k4[,k5]), got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"not a list of numbers: {text!r}") from None
    if not all(v == v and abs(v) != float("inf") for v in vals):
        raise InputError("coefficients must be finite")
    if len(vals) == 3:
        return coeffs_with_derived_k5(*vals)
    return CharPolyCoeffs(0.0, *vals)


def cmd_check_polynomial(args) -> int:
    text = args.coeffs if args.coeffs is not None else args.coeff_list
    if text is None:
        raise InputError("give coefficients as k2,k3,k4[,k5]")
    report = check_necessary(parse_coeffs(text), tol=args.tol)
    data = report.to_json()
    text_out = None
    if args.pretty:
        lines = [f"verdict: {data['verdict']}", f"coefficients k1..k5: {data['coefficients']}"]
        lines.append(f"(a) {report.condition_a}  (b) {report.condition_b}  (d) {report.condition_d}")
        for name, br in report.branch_results.items():
            lines.append(f"branch {name}: {'ok' if br.ok else 'fails'} [{br.subcase}] {'; '.join(br.failed)}")
        if report.c_star is not None:
            lines.append(f"c* = {report.c_star:.6f}")
        lines += report.notes
        text_out = "\n".join(lines)
    _emit(data, text_out, args.pretty)
    return 0 if report.passes else 1


def cmd_powers(args) -> int:
    if not 2 <= args.k <= 5:
        raise InputError(f"k must be in 2..5, got {args.k}")
    data = census(args.k)
    text = None
    if args.pretty:
        lines = [f"k={args.k}: {data['maximal_support_count']} maximal supports, sizes {data['size_histogram']}"]
        lines += [f"  {r['support']} x{r['conjugates']}" for r in data["representatives"]]
        text = "\n".join(lines)
    _emit(data, text, args.pretty)
    return 0


def _build_config(args) -> region.SamplerConfig:
    values = {
        "grid_step": args.grid_step,
        "random_samples": args.random_samples,
        "support_size": args.support_size,
        "seed": args.seed,
        "output_path": args.output or "",
        "plot": args.plot,
        "include_pairs": not args.no_pairs,
    }
    if args.config:
        try:
            values.update(region.SamplerConfig.parse_text(Path(args.config).read_text()))
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from None
        except ValueError as exc:
            raise InputError(f"bad config {args.config}: {exc}") from None
    cfg = region.SamplerConfig(**values)
    try:
        return cfg.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_sample_region(args) -> int:
    cfg = _build_config(args)
    points = region.sample_region(cfg)
    out = Path(cfg.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(region.points_to_csv(points))
    files = [str(out)]
    if args.json:
        jpath = out.with_suffix(".json")
        jpath.write_text(region.points_to_json(points))
        files.append(str(jpath))
    if cfg.plot:
        from .plot import render_svg

        spath = out.with_suffix(".svg")
        spath.write_text(render_svg(points))
        files.append(str(spath))
    pairs = [p for p in points if p.source.startswith("pair:")]
    rand = [p for p in points if p.source.startswith("random:")]
    data = {
        "config": {k: v for k, v in vars(cfg).items()},
        "points": len(points),
        "files": files,
        "envelope": region.compare_envelopes(pairs, rand) if pairs and rand else None,
    }
    _emit(data, f"{len(points)} points written to {', '.join(files)}", args.pretty)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import CRITERIA, run_criterion

    numbers = [n for n, _, _ in CRITERIA]
    if args.only:
        try:
            numbers = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise InputError(f"--only takes comma-separated criterion numbers, got {args.only!r}") from None
        bad = [n for n in numbers if not 1 <= n <= len(CRITERIA)]
        if bad:
            raise InputError(f"unknown criteria {bad}")
    results = []
    for n in numbers:
        r = run_criterion(n)
        results.append(r)
        if args.pretty:
            print(r.line(), flush=True)
    if not args.pretty:
        _emit({"results": [vars(r) for r in results], "all_passed": all(r.passed for r in results)}, None, False)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="tracezero",
        description="Permutation-pair classes, zero-power supports and coefficient checks for "
        "trace-zero doubly stochastic 5x5 matrices.",
        epilog=EPILOG,
        formatter_class=fmt,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-classes", parents=[common], epilog=EPILOG, formatter_class=fmt,
                       help="classes of permutation pairs under simultaneous conjugation")
    p.add_argument("ct1", help='cycle type of the first permutation, e.g. "5" or "3+2"')
    p.add_argument("ct2", help="cycle type of the second permutation")
    p.add_argument("--n", type=int, default=None, help="degree (default: largest cycle-type sum); 1s pad the rest")
    p.set_defaults(func=cmd_enumerate_classes)

    p = sub.add_parser("trace-table", parents=[common], epilog=EPILOG, formatter_class=fmt,
                       help="achievable tr(P_beta P_pi) for the S_5 derangement types")
    p.set_defaults(func=cmd_trace_table)

    p = sub.add_parser("check-polynomial", parents=[common], epilog=EPILOG, formatter_class=fmt,
                       help="necessary coefficient conditions for x^5 + k2 x^3 + k3 x^2 + k4 x + k5")
    p.add_argument("coeff_list", nargs="?", metavar="K2,K3,K4[,K5]",
                   help="coefficients; k5 defaults to -(1 + k2 + k3 + k4)")
    p.add_argument("--coeffs", default=None, help="same as the positional form")
    p.add_argument("--tol", type=float, default=1e-9, help="slack on every inequality (default 1e-9)")
    p.set_defaults(func=cmd_check_polynomial)

    p = sub.add_parser("powers", parents=[common], epilog=EPILOG, formatter_class=fmt,
                       help="maximal supports whose combinations have tr(A^k) = 0")
    p.add_argument("k", type=int, help="power, 2..5")
    p.set_defaults(func=cmd_powers)

    p = sub.add_parser("sample-region", parents=[common], epilog=CONFIG_HELP + "\n\n" + EPILOG,
                       formatter_class=fmt, help="sample the eigenvalue region to CSV (and JSON/SVG)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-step", type=float, default=0.01, help="step in c for pair curves, in (0, 0.1]")
    p.add_argument("--random-samples", type=int, default=0)
    p.add_argument("--support-size", type=int, default=5)
    p.add_argument("--output", default=None, help=f"CSV path (default ${region.OUTPUT_DIR_ENV}/region.csv)")
    p.add_argument("--plot", action="store_true", help="also write an SVG next to the CSV")
    p.add_argument("--json", action="store_true", help="also write a JSON mirror next to the CSV")
    p.add_argument("--no-pairs", action="store_true", help="skip the reference pair curves")
    p.add_argument("--config", default=None, help="key = value file; overrides flags")
    p.set_defaults(func=cmd_sample_region)

    p = sub.add_parser("verify", parents=[common], epilog=EPILOG, formatter_class=fmt,
                       help="run the acceptance checks")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify)
    return parser


def _rewrite_negative_list(argv: list[str]) -> list[str]:
    # argparse reads "-0.4,-0.3,0.1" as an option; pin it to --coeffs
    if "check-polynomial" not in argv:
        return argv
    head = argv.index("check-polynomial") + 1
    out = argv[:head]
    for tok in argv[head:]:
        if tok.startswith("-") and "," in tok and _NUMBER_LIST.match(tok):
            if out[-1] == "--coeffs":
                out.pop()
            out.append(f"--coeffs={tok}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_rewrite_negative_list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"tracezero: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
