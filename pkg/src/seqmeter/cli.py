"""Command-line frontend.

Subcommands: generate (sequence files), measure (complexity/correlation of
a sequence file), verify (inequality checks, exhaustive sweeps, report
recheck), experiment (ensemble statistics and generator reports).

Every JSON artifact embeds the run configuration and the tool version.
Identical configurations produce byte-identical output, whatever the
worker count; fields that may legitimately vary between such runs
(timestamp, worker count) are isolated in the "meta" object.

Exit codes: 0 success (and all inequalities hold), 1 inequality violation
or failed recheck, 2 validation error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import __version__, _par
from .complexity import (
    linear_complexity,
    linear_complexity_profile,
    max_order_complexity,
    max_order_profile,
)
from .correlation import (
    DEFAULT_BUDGET,
    correlation,
    evaluate_sum,
    mary_correlation,
    sampled_correlation,
)
from .errors import BudgetExceededError, ValidationError
from .seqcore import (
    Sequence,
    gen_legendre,
    gen_random,
    gen_two_prime,
    read_sequence,
    write_sequence,
)
from .verify import (
    BoundReport,
    exhaustive_sweep,
    legendre_report,
    random_stats,
    run_check,
    two_prime_report,
)

_EXIT_OK = 0
_EXIT_VIOLATION = 1
_EXIT_VALIDATION = 2
_EXIT_BUDGET = 3


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return fallback


def _add_common(p: argparse.ArgumentParser, root: bool = False) -> None:
    # leaf parsers use SUPPRESS so they inherit root-level values instead
    # of clobbering them with defaults
    d = {} if root else {"default": argparse.SUPPRESS}
    p.add_argument(
        "--workers",
        type=int,
        help="worker processes (default: SEQMETER_WORKERS or CPU count); "
        "results are identical for any value",
        **({"default": None} if root else d),
    )
    p.add_argument(
        "--budget",
        type=int,
        help=f"elementary-step ceiling for exact searches "
        f"(default: SEQMETER_BUDGET or {DEFAULT_BUDGET})",
        **({"default": None} if root else d),
    )
    p.add_argument(
        "--format",
        choices=("json", "text"),
        help="report format on stdout (files written via --out are JSON)",
        **({"default": "json"} if root else d),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqmeter",
        description="Pseudorandomness measures for binary and m-ary sequences.",
    )
    _add_common(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a sequence file")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    g_leg = gen_sub.add_parser("legendre")
    g_leg.add_argument("--p", type=int, required=True)
    g_leg.add_argument("--len", dest="length", type=int, required=True)
    g_leg.add_argument("--out", required=True)
    g_two = gen_sub.add_parser("twoprime")
    g_two.add_argument("--p", type=int, required=True)
    g_two.add_argument("--q", type=int, required=True)
    g_two.add_argument("--len", dest="length", type=int, required=True)
    g_two.add_argument("--out", required=True)
    g_rnd = gen_sub.add_parser("random")
    g_rnd.add_argument("--m", type=int, default=2)
    g_rnd.add_argument("--len", dest="length", type=int, required=True)
    g_rnd.add_argument("--seed", type=int, required=True)
    g_rnd.add_argument("--out", required=True)
    for p in (g_leg, g_two, g_rnd):
        _add_common(p)

    mea = sub.add_parser("measure", help="measure a sequence file")
    mea.add_argument("measure", choices=("linear", "maxorder", "correlation"))
    mea.add_argument("--in", dest="in_path", required=True)
    mea.add_argument("--n", type=int, default=None, help="prefix length (default: all)")
    mea.add_argument("--m", type=int, default=None, help="alphabet size override")
    mea.add_argument("--k", type=int, default=2, help="correlation order")
    mea.add_argument("--max-lag", type=int, default=None)
    mea.add_argument("--profile", action="store_true", help="emit per-prefix profile")
    mea.add_argument(
        "--sampled", type=int, default=None, metavar="SAMPLES",
        help="sampled correlation with this many lag tuples",
    )
    mea.add_argument("--seed", type=int, default=0, help="seed for --sampled")
    mea.add_argument(
        "--mary", action="store_true",
        help="m-ary multiplier-form correlation (exact roots of unity)",
    )
    mea.add_argument("--out", default=None, help="also write the JSON report here")
    _add_common(mea)

    ver = sub.add_parser("verify", help="inequality checks")
    ver.add_argument("--in", dest="in_path", default=None)
    ver.add_argument(
        "--ineq", choices=("eq1", "thm1", "thm1_bounded_lags", "prime_m"),
        default=None,
    )
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--m", type=int, default=None, help="alphabet size override")
    ver.add_argument("--exhaustive", action="store_true")
    ver.add_argument("--n-max", type=int, default=10)
    ver.add_argument("--sweep-m", type=int, default=2, help="alphabet for --exhaustive")
    ver.add_argument("--recheck", default=None, metavar="REPORT_JSON")
    ver.add_argument("--out", default=None)
    _add_common(ver)

    exp = sub.add_parser("experiment", help="ensemble statistics and reports")
    exp_sub = exp.add_subparsers(dest="kind", required=True)
    e_rnd = exp_sub.add_parser("randomstats")
    e_rnd.add_argument("--m", type=int, default=2)
    e_rnd.add_argument("--n", type=int, required=True)
    e_rnd.add_argument("--trials", type=int, required=True)
    e_rnd.add_argument("--seed", type=int, required=True)
    e_rnd.add_argument("--csv", default=None, help="write per-trial rows as CSV")
    e_rnd.add_argument("--out", default=None)
    e_leg = exp_sub.add_parser("legendre")
    e_leg.add_argument("--p", type=int, required=True)
    e_leg.add_argument("--n", type=int, default=None)
    e_leg.add_argument("--k-max", type=int, default=2)
    e_leg.add_argument("--samples", type=int, default=2000)
    e_leg.add_argument("--seed", type=int, default=0)
    e_leg.add_argument("--out", default=None)
    e_two = exp_sub.add_parser("twoprime")
    e_two.add_argument("--p", type=int, required=True)
    e_two.add_argument("--q", type=int, required=True)
    e_two.add_argument("--max-lag", type=int, default=None)
    e_two.add_argument("--out", default=None)
    for p in (e_rnd, e_leg, e_two):
        _add_common(p)
    return parser


def _run_config(args: argparse.Namespace, workers: int, budget: int) -> dict:
    # output destinations do not affect results; worker count lives in meta
    skip = {"workers", "budget", "out", "csv", "format"}
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in skip and not k.startswith("_") and v is not None and k != "command"
    }
    return {
        "command": args.command,
        "parameters": params,
        "seed": params.get("seed"),
        "budget": budget,
        "output_format": args.format,
    }


def _emit(payload: dict, args, workers: int, budget: int, to_file: bool = True) -> dict:
    report = dict(payload)
    report["version"] = __version__
    report["config"] = _run_config(args, workers, budget)
    report["meta"] = {
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "worker_count": workers,
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    out = getattr(args, "out", None) if to_file else None
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    return report


def _print_text(lines: list) -> None:
    for line in lines:
        print(line)


def _cmd_generate(args, workers: int, budget: int) -> int:
    if args.kind == "legendre":
        seq = gen_legendre(args.p, args.length)
    elif args.kind == "twoprime":
        seq = gen_two_prime(args.p, args.q, args.length)
    else:
        seq = gen_random(args.m, args.length, args.seed)
    write_sequence(seq, args.out)
    if args.format == "text":
        _print_text([f"wrote {len(seq)} symbols (m={seq.alphabet_m}) to {args.out}"])
    else:
        # --out here is the sequence file itself, not a report target
        _emit(
            {"written": args.out, "N": len(seq), "alphabet_m": seq.alphabet_m},
            args,
            workers,
            budget,
            to_file=False,
        )
    return _EXIT_OK


def _cmd_measure(args, workers: int, budget: int) -> int:
    seq = read_sequence(args.in_path, args.m)
    n = args.n if args.n is not None else len(seq)
    payload: dict = {"measure": args.measure, "N": n}
    if args.measure == "linear":
        payload["value"] = linear_complexity(seq, n)
        if args.profile:
            payload["profile"] = list(linear_complexity_profile(seq, n).values)
    elif args.measure == "maxorder":
        payload["value"] = max_order_complexity(seq, n)
        if args.profile:
            payload["profile"] = list(max_order_profile(seq, n).values)
    else:
        if args.sampled is not None:
            res = sampled_correlation(
                seq, n, args.k, n_samples=args.sampled, seed=args.seed,
                max_lag=args.max_lag, budget=budget,
            )
        elif args.mary or seq.alphabet_m != 2:
            res = mary_correlation(seq, n, args.k, max_lag=args.max_lag, budget=budget)
        else:
            res = correlation(
                seq, n, args.k, args.max_lag, budget=budget, workers=workers
            )
        payload.update(res.to_dict())
    if args.format == "text":
        _print_text([f"{args.measure}(N={n}) = {payload['value']}"])
        if args.out:
            _emit(payload, args, workers, budget)
    else:
        _emit(payload, args, workers, budget)
    return _EXIT_OK


def _recheck_one(d: dict) -> tuple[bool, list]:
    """Re-validate one stored BoundReport: right side recomputable, holds
    consistent, witnesses re-evaluate (binary reports with an embedded
    sequence)."""
    try:
        rep = BoundReport.from_dict(d)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"not a stored inequality report: missing {exc}") from exc
    problems = []
    recomputed = rep.recompute_right()
    tol = 1e-9 if isinstance(recomputed, float) or isinstance(rep.right_value, float) else 0
    if abs(recomputed - rep.right_value) > tol:
        problems.append(f"right_value mismatch: {rep.right_value} vs {recomputed}")
    holds_now = rep.left_value >= rep.right_value - (
        1e-9 if isinstance(rep.right_value, float) else 0
    )
    if rep.holds != holds_now:
        problems.append("holds flag inconsistent with left/right")
    if not rep.holds:
        problems.append("inequality violated (implementation-bug signal)")
    if rep.sequence_digits and rep.parameters.get("m", 2) == 2:
        seq = Sequence(tuple(int(c) for c in rep.sequence_digits), 2)
        for k, w in rep.witnesses.items():
            if w.get("mode") == "sampled":
                continue
            got = abs(evaluate_sum(seq, w["lags"], w["U"]))
            if got != rep.per_k[k]:
                problems.append(f"witness for k={k} re-evaluates to {got}")
    return not problems, problems


def _cmd_verify(args, workers: int, budget: int) -> int:
    if args.recheck:
        with open(args.recheck, "r", encoding="utf-8") as fh:
            stored = json.load(fh)
        reports = stored.get("reports") or [stored]
        all_ok = True
        results = []
        for d in reports:
            ok, problems = _recheck_one(d)
            all_ok = all_ok and ok
            results.append(
                {"inequality_id": d.get("inequality_id"), "ok": ok, "problems": problems}
            )
        if args.format == "text":
            _print_text(
                [f"recheck {r['inequality_id']}: {'ok' if r['ok'] else r['problems']}"
                 for r in results]
            )
        else:
            _emit({"recheck": results, "all_ok": all_ok}, args, workers, budget)
        return _EXIT_OK if all_ok else _EXIT_VIOLATION
    if args.exhaustive:
        if args.ineq is None:
            raise ValidationError("--exhaustive requires --ineq")
        summary = exhaustive_sweep(
            args.sweep_m, args.n_max, args.ineq, budget=budget, workers=workers
        )
        if args.format == "text":
            _print_text(
                [f"sweep {args.ineq} m={args.sweep_m} N<={args.n_max}: "
                 f"violations={summary.violations} "
                 f"min_slack={summary.stats['slack']['min']}"]
            )
            if args.out:
                _emit(summary.to_dict(), args, workers, budget)
        else:
            _emit(summary.to_dict(), args, workers, budget)
        return _EXIT_OK if summary.violations == 0 else _EXIT_VIOLATION
    if not args.in_path or not args.ineq:
        raise ValidationError("verify requires --in and --ineq (or --exhaustive/--recheck)")
    seq = read_sequence(args.in_path, args.m)
    rep = run_check(seq, args.ineq, args.n, budget=budget, workers=workers)
    if args.format == "text":
        _print_text(
            [f"{rep.inequality_id}: left={rep.left_value} right={rep.right_value} "
             f"holds={rep.holds}"]
        )
        if args.out:
            _emit(rep.to_dict(), args, workers, budget)
    else:
        _emit(rep.to_dict(), args, workers, budget)
    return _EXIT_OK if rep.holds else _EXIT_VIOLATION


def _write_randomstats_csv(path: str, summary_dict: dict) -> None:
    scales = summary_dict["reference_scales"]
    n = summary_dict["params"]["N"]
    lines = ["trial,seed,N,M,C2,scale_logN,scale_sqrt"]
    for row in summary_dict["extras"]["rows"]:
        c2 = "" if row["C2"] is None else row["C2"]
        lines.append(
            f"{row['trial']},{row['seed']},{n},{row['M']},{c2},"
            f"{scales['log2_N']!r},{scales['sqrt_2N_lnN']!r}"
        )
    trimmed = {k: v for k, v in summary_dict.items() if k != "extras"}
    lines.append("# summary: " + json.dumps(trimmed, sort_keys=True))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_experiment(args, workers: int, budget: int) -> int:
    if args.kind == "randomstats":
        summary = random_stats(
            args.m, args.n, args.trials, args.seed, budget=budget, workers=workers
        )
        d = summary.to_dict()
        if args.csv:
            _write_randomstats_csv(args.csv, d)
        if args.format == "text":
            _print_text(
                [f"random m={args.m} N={args.n} trials={args.trials}: "
                 f"mean M={d['stats']['max_order']['mean']:.2f}, "
                 f"scales={d['reference_scales']}"]
            )
            if args.out:
                _emit(d, args, workers, budget)
        else:
            _emit(d, args, workers, budget)
        return _EXIT_OK
    if args.kind == "legendre":
        rep = legendre_report(
            args.p, args.n, args.k_max,
            n_samples=args.samples, seed=args.seed, budget=budget, workers=workers,
        )
        d = rep.to_dict()
        if args.format == "text":
            _print_text(
                [f"legendre p={args.p} N={rep.n}: M={rep.max_order} "
                 + " ".join(f"C{k}={r.value}" for k, r in sorted(rep.per_k.items()))]
            )
            if args.out:
                _emit(d, args, workers, budget)
        else:
            _emit(d, args, workers, budget)
        return _EXIT_OK
    rep = two_prime_report(args.p, args.q, args.max_lag, budget=budget, workers=workers)
    d = rep.to_dict()
    if args.format == "text":
        _print_text(
            [f"twoprime p={args.p} q={args.q}: identity_rate={rep.identity_rate} "
             f"C4_structured={rep.c4_structured} "
             f"bounded_C4={rep.bounded[4].value}"]
        )
        if args.out:
            _emit(d, args, workers, budget)
    else:
        _emit(d, args, workers, budget)
    return _EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    workers = args.workers if args.workers is not None else _par.default_workers()
    budget = (
        args.budget
        if args.budget is not None
        else _env_int("SEQMETER_BUDGET", DEFAULT_BUDGET)
    )
    if workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return _EXIT_VALIDATION
    try:
        if args.command == "generate":
            return _cmd_generate(args, workers, budget)
        if args.command == "measure":
            return _cmd_measure(args, workers, budget)
        if args.command == "verify":
            return _cmd_verify(args, workers, budget)
        return _cmd_experiment(args, workers, budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BUDGET
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
