"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import deals, exact, export, game, oracle, simulation, verify

WORKERS_ENV = "MEMGAME_WORKERS"


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        return positive_int(raw)
    except argparse.ArgumentTypeError:
        raise UsageError(f"{WORKERS_ENV}={raw!r} is not a positive integer") from None


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc}") from None


def cmd_exact(args) -> int:
    summary = exact.exact_summary(args.n)
    table = exact.exact_table(args.n)
    if args.format == "json":
        payload = summary.to_dict()
        if args.table:
            payload["rows"] = export.table_records(table)
        text = json.dumps(payload, indent=2)
    elif args.format == "csv":
        text = export.table_csv(table) if args.table else export.summary_csv([summary])
    else:
        lines = [f"n = {summary.n}"]
        for name in ("expected_length", "expected_lucky", "expected_first_match"):
            v = getattr(summary, name)
            lines.append(f"{name}: {exact.decimal_str(v)}  ({exact.fraction_str(v)})")
        lines.append(f"asymptotic_length: {exact.decimal_str(summary.asymptotic_length)}")
        lines.append(f"epsilon: {exact.decimal_str(summary.epsilon)}")
        lines.append(f"db_even_sum: {summary.db_even_sum.value:.15g} +/- {summary.db_even_sum.error:.1e}")
        lines.append(f"dl_even_sum: {summary.dl_even_sum.value:.15g} +/- {summary.dl_even_sum.error:.1e}")
        if args.table:
            lines.append(export.table_csv(table))
        text = "\n".join(lines)
    _emit(text, args.output)
    return 0


def cmd_asymptotic(args) -> int:
    approx = exact.asymptotic_length(args.n)
    payload = {"n": args.n, "asymptotic_length": approx}
    if args.with_exact:
        value = exact.expected_length_exact(args.n)
        payload["expected_length"] = exact.fraction_str(value)
        payload["expected_length_decimal"] = exact.decimal_str(value)
        payload["epsilon"] = exact.epsilon(args.n)
        payload["epsilon_bound"] = exact.epsilon_bound(args.n)
    if args.format == "json":
        text = json.dumps(payload, indent=2)
    elif args.format == "csv":
        text = ",".join(payload) + "\n" + ",".join(str(v) for v in payload.values())
    else:
        text = f"asymptotic_length: {exact.decimal_str(approx)}"
        if args.with_exact:
            text += f"\nexpected_length: {payload['expected_length_decimal']}"
            text += f"\nepsilon: {exact.decimal_str(payload['epsilon'])}"
    _emit(text, args.output)
    return 0


def cmd_simulate(args) -> int:
    workers = args.workers or _default_workers()
    hist = simulation.simulate(args.n, args.trials, seed=args.seed, workers=workers)
    text = hist.to_json() if args.format == "json" else hist.to_csv()
    line = (
        f"n={hist.n} trials={hist.trials} seed={hist.seed} workers={hist.workers} "
        f"mean={hist.mean:.6f} se={hist.standard_error():.6f} lucky_mean={hist.lucky_mean:.6f} "
        f"first_match_mean={hist.first_match_mean:.6f}"
    )
    if args.output is None:
        _emit(text, None)
        print(line, file=sys.stderr)
    else:
        _emit(text, args.output)
        print(line)
    return 0


def cmd_verify(args) -> int:
    report = verify.verify_all(args.max_n)
    if args.oracle:
        for n in range(1, min(args.max_n, args.oracle_max_n) + 1):
            report.extend(verify.verify_oracle(n, max_n=args.oracle_max_n))
    for check in report.checks if args.verbose else report.failures:
        print(check)
    print(report.summary())
    return 0 if report.passed else 1


def cmd_play(args) -> int:
    if args.extremal:
        if args.n is None:
            raise UsageError("--extremal requires --n")
        deal = deals.shortest_deal(args.n) if args.extremal == "shortest" else deals.longest_deal(args.n)
    elif args.deal:
        try:
            deal = deals.parse_deal(args.deal)
        except deals.InvalidDealError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give a deal string or --extremal")
    trace = game.play(deal, verbose=args.verbose)
    if args.format == "json":
        payload = {"deal": list(deal.cards), **trace.to_dict(verbose=args.verbose)}
        text = json.dumps(payload, indent=2)
    else:
        lines = list(trace.log) if args.verbose else []
        lines += [
            f"deal: {deal}",
            f"moves: {trace.moves}",
            f"lucky moves: {trace.lucky_moves}",
            f"first match: {trace.first_match_position}",
            f"blocks: {','.join(map(str, trace.blocks.lengths))}",
            f"lucky blocks: {','.join(str(i) for i, f in enumerate(trace.blocks.lucky, 1) if f) or '-'}",
        ]
        text = "\n".join(lines)
    _emit(text, args.output)
    return 0


def cmd_export(args) -> int:
    table = exact.exact_table(args.n)
    text = export.table_json(table) if args.format == "json" else export.table_csv(table)
    _emit(text, args.output)
    return 0


def cmd_oracle(args) -> int:
    try:
        stats = oracle.exhaustive_stats(args.n, max_n=args.max_n, workers=args.workers or 1)
    except deals.BudgetExceededError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        text = "length,count\n" + "".join(f"{k},{stats.length_distribution[k]}\n" for k in sorted(stats.length_distribution))
    else:
        text = json.dumps(stats.to_dict(), indent=2)
    _emit(text, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memorygame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("plain", "json", "csv"), default="plain"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("exact", help="exact expectations for one n")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--table", action="store_true", help="include per-length rows")
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("asymptotic", help="asymptotic expected length")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--with-exact", action="store_true")
    common(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("simulate", help="Monte Carlo game-length histogram")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--trials", type=positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=positive_int, default=None, help=f"default from ${WORKERS_ENV} or 1")
    common(p, formats=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check identities, bounds and shapes")
    p.add_argument("--max-n", type=positive_int, required=True)
    p.add_argument("--oracle", action="store_true", help="also compare with exhaustive enumeration")
    p.add_argument("--oracle-max-n", type=positive_int, default=oracle.DEFAULT_MAX_N)
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play one deal optimally")
    p.add_argument("deal", nargs="?", help='e.g. "1 2 1 2" or "[1,2,1,2]"')
    p.add_argument("--extremal", choices=("shortest", "longest"))
    p.add_argument("--n", type=positive_int)
    p.add_argument("--verbose", "-v", action="store_true", help="include the move log")
    common(p, formats=("plain", "json"))
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("export", help="per-length exact rows as CSV or JSON")
    p.add_argument("--n", type=positive_int, required=True)
    common(p, formats=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("oracle", help="exhaustive statistics for small n")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--max-n", type=positive_int, default=oracle.DEFAULT_MAX_N)
    p.add_argument("--workers", type=positive_int, default=None)
    common(p, formats=("json", "csv"), default="json")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
