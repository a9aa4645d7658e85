"""Command-line harness: plant labels, run recovery experiments, verify
representation identities, cross-check the kernel against the dense
simulator, and benchmark query scaling.

Reports are JSON lines (schema in `report_schema.json`); a fixed
(command, seed, config) triple reproduces byte-identical report output.
When a report is written to a file, matplotlib figures land next to it
unless --no-plot is given.  Flags can be defaulted through environment
variables with the CGSIEVE_ prefix (e.g. CGSIEVE_SEED=7).

Exit codes: 0 success, 2 invalid usage or config, 3 unexpected algorithm
or pipeline error, 4 verification-suite failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
import traceback
from multiprocessing import Pool
from pathlib import Path
from typing import Optional, Sequence

from .algorithms import AlgoParams, solve_hidden_involution
from .groups import InvolutionLabel, all_involution_labels, random_involution_label
from .oracle import plant
from .reports import RunReport, json_line, summary_dict
from .seeding import derive_rng

ENV_PREFIX = "CGSIEVE_"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ALGORITHM = 3
EXIT_VERIFY = 4


def _env(name: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))


def _env_int(name: str, fallback: int) -> int:
    raw = _env(name)
    return int(raw) if raw is not None else fallback


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _default_jobs() -> int:
    return max(1, os.cpu_count() or 1)


def _params_from_args(args: argparse.Namespace) -> AlgoParams:
    return AlgoParams(round_retries=args.retries, stage_c_samples=args.stage_c_k)


def run_trial(n: int, seed: int, trial: int, params: AlgoParams) -> dict:
    """One planted-recovery experiment with per-trial derived randomness."""
    label = random_involution_label(n, derive_rng(seed, "label", trial))
    oracle = plant(label, n)
    result = solve_hidden_involution(oracle, derive_rng(seed, "solve", trial), params)
    report = RunReport(
        n=n,
        trial=trial,
        seed=seed,
        planted=label,
        recovered=result.label,
        queries=result.queries,
        retries=result.retries,
        restarts=result.restarts,
        success=result.success and result.label == label,
    )
    return report.to_dict()


def _trial_task(task: tuple[int, int, int, AlgoParams]) -> dict:
    return run_trial(*task)


def run_experiment(
    n: int,
    trials: int,
    seed: int,
    params: AlgoParams = AlgoParams(),
    jobs: int = 1,
) -> list[dict]:
    """Run independent trials (optionally on a process pool), in trial order."""
    tasks = [(n, seed, trial, params) for trial in range(trials)]
    if jobs <= 1 or trials == 1:
        return [_trial_task(t) for t in tasks]
    with Pool(min(jobs, trials)) as pool:
        return list(pool.imap(_trial_task, tasks, chunksize=1))


def _open_report(out: Optional[str]):
    if out is None or out == "-":
        return sys.stdout, False
    path = Path(out)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w"), True


def _figure_path(out: str, suffix: str) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + suffix))


def cmd_plant(args: argparse.Namespace) -> int:
    label = random_involution_label(args.n, derive_rng(args.seed, "plant"))
    print(json_line(label.to_json_dict()))
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    started = time.perf_counter()
    rows = run_experiment(args.n, args.trials, args.seed, params, jobs=args.jobs)
    elapsed = time.perf_counter() - started

    successes = sum(1 for r in rows if r["success"])
    summary = summary_dict(
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        success_rate=successes / args.trials,
        mean_queries=sum(r["queries"] for r in rows) / args.trials,
        wall_time_s=round(elapsed, 3) if args.timing else None,
    )

    stream, close = _open_report(args.out)
    try:
        for row in rows:
            stream.write(json_line(row) + "\n")
        stream.write(json_line(summary) + "\n")
    finally:
        if close:
            stream.close()

    if close and not args.no_plot:
        from .plots import render_run_figure

        render_run_figure(rows, _figure_path(args.out, "_queries.png"))
    return EXIT_OK


def cmd_verify_reps(args: argparse.Namespace) -> int:
    from .reps import identity_suite

    report = identity_suite()
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_cross_check(args: argparse.Namespace) -> int:
    from .dense import cross_check_oracle

    if args.n > 2:
        raise SystemExit(EXIT_USAGE)
    labels: list[InvolutionLabel] = list(all_involution_labels(args.n))
    if args.labels is not None and args.labels > len(labels):
        rng = derive_rng(args.seed, "cross-check")
        extra = args.labels - len(labels)
        labels += [random_involution_label(args.n, rng) for _ in range(extra)]

    max_prob = 0.0
    max_dist = 0.0
    for label in labels:
        stats = cross_check_oracle(plant(label, args.n))
        max_prob = max(max_prob, stats["max_probability_discrepancy"])
        max_dist = max(max_dist, stats["max_amplitude_distance"])

    ok = max_prob <= 1e-10 and max_dist < 1e-10
    print(
        json.dumps(
            {
                "n": args.n,
                "labels_checked": len(labels),
                "max_probability_discrepancy": max_prob,
                "max_amplitude_distance": max_dist,
                "pass": ok,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return EXIT_OK if ok else EXIT_VERIFY


def fit_loglog_slope(ns: Sequence[int], means: Sequence[float]) -> float:
    """Least-squares slope of log(mean) against log(n)."""
    xs = [math.log(n) for n in ns]
    ys = [math.log(m) for m in means]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    num = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    den = sum((x - xbar) ** 2 for x in xs)
    return num / den


def cmd_bench(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    rows = []
    means = []
    for n in args.ns:
        trial_rows = run_experiment(n, args.trials, args.seed, params, jobs=args.jobs)
        successes = sum(1 for r in trial_rows if r["success"])
        mean_queries = sum(r["queries"] for r in trial_rows) / args.trials
        means.append(mean_queries)
        rows.append(
            {
                "type": "bench",
                "n": n,
                "trials": args.trials,
                "seed": args.seed,
                "success_rate": successes / args.trials,
                "mean_queries": mean_queries,
            }
        )
    slope = fit_loglog_slope(args.ns, means) if len(args.ns) >= 2 else 0.0
    summary = {
        "type": "bench-summary",
        "seed": args.seed,
        "ns": list(args.ns),
        "mean_queries": means,
        "slope": slope,
    }

    stream, close = _open_report(args.out)
    try:
        for row in rows:
            stream.write(json_line(row) + "\n")
        stream.write(json_line(summary) + "\n")
    finally:
        if close:
            stream.close()

    if close and not args.no_plot:
        from .plots import render_bench_figure

        render_bench_figure(args.ns, means, slope, _figure_path(args.out, "_scaling.png"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgsieve",
        description="Simulate and benchmark hidden-involution recovery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_n: bool = True) -> None:
        if with_n:
            p.add_argument("--n", type=_positive_int, default=_env_int("n", 8))
        p.add_argument("--seed", type=int, default=_env_int("seed", 0))

    p_plant = sub.add_parser("plant", help="print a random hidden-subgroup label")
    add_common(p_plant)
    p_plant.set_defaults(func=cmd_plant)

    p_run = sub.add_parser("run", help="run planted-recovery trials")
    add_common(p_run)
    p_run.add_argument("--trials", type=_positive_int, default=_env_int("trials", 10))
    p_run.add_argument("--retries", type=_positive_int, default=_env_int("retries", 10))
    p_run.add_argument(
        "--stage-c-k", type=_positive_int, default=_env_int("stage_c_k", 20)
    )
    p_run.add_argument("--jobs", type=_positive_int, default=_env_int("jobs", _default_jobs()))
    p_run.add_argument("--out", default=_env("out"))
    p_run.add_argument("--no-plot", action="store_true")
    p_run.add_argument("--timing", action="store_true")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify-reps", help="run the representation identity suite")
    p_verify.set_defaults(func=cmd_verify_reps)

    p_cross = sub.add_parser(
        "cross-check", help="compare the symbolic kernel with the dense simulator"
    )
    p_cross.add_argument("--n", type=int, choices=(1, 2), default=1)
    p_cross.add_argument("--seed", type=int, default=_env_int("seed", 0))
    p_cross.add_argument(
        "--labels",
        type=_positive_int,
        default=None,
        help="check at least this many labels (sampling with replacement beyond the enumeration)",
    )
    p_cross.set_defaults(func=cmd_cross_check)

    p_bench = sub.add_parser("bench", help="sweep n and fit the query-scaling exponent")
    p_bench.add_argument("--ns", type=_positive_int, nargs="+", default=[4, 8, 16, 32])
    p_bench.add_argument("--seed", type=int, default=_env_int("seed", 0))
    p_bench.add_argument("--trials", type=_positive_int, default=_env_int("trials", 10))
    p_bench.add_argument("--retries", type=_positive_int, default=_env_int("retries", 10))
    p_bench.add_argument(
        "--stage-c-k", type=_positive_int, default=_env_int("stage_c_k", 20)
    )
    p_bench.add_argument(
        "--jobs", type=_positive_int, default=_env_int("jobs", _default_jobs())
    )
    p_bench.add_argument("--out", default=_env("out"))
    p_bench.add_argument("--no-plot", action="store_true")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except Exception:
        traceback.print_exc()
        return EXIT_ALGORITHM


if __name__ == "__main__":
    raise SystemExit(main())
