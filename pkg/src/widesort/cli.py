"""Command-line interface.

Subcommands: ``construct`` (emit a single-round schedule file), ``randsort``
(run a two-round randomized sort), ``baseline`` (per-trial stats of the
recursive quicksort), and ``bench run`` / ``bench compare`` (the Monte-Carlo
harness).  Exit code 2 flags configuration errors.  ``WIDESORT_SEED`` sets
the default seed for bench commands; explicit flags win.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench as bench_mod
from .baseline import multiway_quicksort
from .bench import ALGORITHMS, ConfigurationError, ExperimentConfig, trial_seed
from .core import make_oracle
from .randomized import (
    InapplicableParams,
    auto_two_round,
    two_round_sort_general,
    two_round_sort_large_t,
    two_round_sort_square,
)
from .schedules import (
    InapplicableError,
    compose,
    minimal_schedule,
    partition_schedule,
    three_comparator_schedule,
)
from .designs import affine_plane, design_to_schedule, projective_plane, shifted_matrix_design
from .textio import write_schedule

CONSTRUCT_METHODS = (
    "auto",
    "partition",
    "three-comparator",
    "affine",
    "projective",
    "shifted-matrix",
    "compose",
)


def _default_seed() -> int:
    env = os.environ.get("WIDESORT_SEED")
    return int(env) if env else 0


def _cmd_construct(args) -> int:
    n, t = args.n, args.t
    method = args.force
    if method == "auto":
        schedule, choice = minimal_schedule(n, t)
        tag = choice.tag
        detail = " ".join(
            f"{k}={v}" for k, v in sorted(choice.certificate.items()) if k != "construction"
        )
        if "construction" in choice.certificate:
            tag = f"{tag}/{choice.certificate['construction']}"
    else:
        if method == "partition":
            schedule = partition_schedule(n, t)
        elif method == "three-comparator":
            schedule = three_comparator_schedule(n, t)
        elif method == "affine":
            if n != t * t:
                raise InapplicableError(f"affine plane needs n = t^2, got n={n}, t={t}")
            schedule = design_to_schedule(affine_plane(t))
        elif method == "projective":
            if n != t * t - t + 1:
                raise InapplicableError(
                    f"projective plane needs n = t^2 - t + 1, got n={n}, t={t}"
                )
            schedule = design_to_schedule(projective_plane(t - 1))
        elif method == "shifted-matrix":
            if n != t * t:
                raise InapplicableError(f"shifted-matrix needs n = t^2, got n={n}, t={t}")
            schedule = design_to_schedule(shifted_matrix_design(t))
        else:  # compose: find k with t^(2^k) >= n, let compose() validate equality
            value, k = t * t, 1
            while value < n:
                value, k = value * value, k + 1
            schedule = compose(n, t, k)
        tag, detail = method, f"n={n} t={t}"
    comment = f"construction={tag} {detail}".strip()
    write_schedule(schedule, args.out, comments=[comment])
    print(
        f"wrote {schedule.num_comparators} comparators "
        f"({schedule.num_rounds} round) to {args.out} [{comment}]"
    )
    return 0


_RANDSORT = {
    "square": two_round_sort_square,
    "general": two_round_sort_general,
    "large-t": two_round_sort_large_t,
    "auto": auto_two_round,
}


def _cmd_randsort(args) -> int:
    oracle = make_oracle(args.n, seed=np.random.SeedSequence([args.seed, 0]))
    alg_rng = np.random.default_rng(np.random.SeedSequence([args.seed, 1]))
    result = _RANDSORT[args.algorithm](oracle, args.t, alg_rng)
    ok = bool(np.array_equal(result.order, oracle.true_order()))
    print(f"algorithm={args.algorithm} n={args.n} t={args.t} seed={args.seed}")
    print(f"rounds={result.cost.rounds} comparators_per_round={list(result.cost.comparators_per_round)}")
    print(f"total_comparators={result.cost.total_comparators}")
    print(f"pivots={result.pivots.count} (requested {result.pivots.requested_count})")
    print(f"order_verified={'yes' if ok else 'NO'}")
    if not ok:
        raise RuntimeError("output order diverged from the oracle")
    return 0


def _cmd_baseline(args) -> int:
    print("trial rounds comparators")
    for index in range(args.trials):
        seed = trial_seed(args.seed, index)
        key_ss, alg_ss = np.random.SeedSequence(seed).spawn(2)
        oracle = make_oracle(args.n, seed=np.random.default_rng(key_ss))
        result = multiway_quicksort(oracle, args.t, np.random.default_rng(alg_ss))
        if not np.array_equal(result.order, oracle.true_order()):
            raise RuntimeError("baseline output diverged from the oracle")
        print(f"{index} {result.cost.rounds} {result.cost.total_comparators}")
    return 0


def _cmd_bench_run(args) -> int:
    config = ExperimentConfig(
        algorithm=args.alg,
        n=args.n,
        t=args.t,
        trials=args.trials,
        master_seed=args.seed,
        out=args.out,
    )
    _, summary = bench_mod.run_experiment(config)
    print(
        f"alg={args.alg} n={args.n} t={args.t} trials={args.trials} seed={args.seed}\n"
        f"rounds: mean={summary.mean_rounds:.3f} median={summary.median_rounds:.1f} "
        f"max={summary.max_rounds}\n"
        f"comparators: mean={summary.mean_comparators:.2f} "
        f"median={summary.median_comparators:.1f} max={summary.max_comparators}\n"
        f"round histogram: {summary.round_histogram}"
    )
    if args.out:
        print(f"records written to {args.out}")
    return 0


def _cmd_bench_compare(args) -> int:
    configs = []
    for alg in args.algs or ALGORITHMS:
        try:
            bench_mod.check_applicable(alg, args.n, args.t)
        except ConfigurationError:
            if args.algs:
                raise
            continue  # silently skip inapplicable algorithms when unselected
        configs.append(
            ExperimentConfig(alg, args.n, args.t, args.trials, args.seed)
        )
    rows = bench_mod.compare_table(configs)
    sys.stdout.write(bench_mod.format_comparison(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="widesort",
        description="Sorting with wide comparators: schedule construction, "
        "two-round randomized sorts, and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a single-round schedule file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--force", choices=CONSTRUCT_METHODS, default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("randsort", help="run a two-round randomized sort")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--algorithm", choices=sorted(_RANDSORT), default="auto")
    p.set_defaults(func=_cmd_randsort)

    p = sub.add_parser("baseline", help="per-trial stats of the recursive quicksort")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("bench", help="Monte-Carlo benchmark harness")
    bench_sub = p.add_subparsers(dest="bench_command", required=True)

    q = bench_sub.add_parser("run", help="run one algorithm, write CSV records")
    q.add_argument("--alg", choices=ALGORITHMS, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--trials", type=int, required=True)
    q.add_argument("--seed", type=int, default=_default_seed())
    q.add_argument("--out", default=None)
    q.set_defaults(func=_cmd_bench_run)

    q = bench_sub.add_parser("compare", help="side-by-side summary at one (n, t)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--trials", type=int, required=True)
    q.add_argument("--seed", type=int, default=_default_seed())
    q.add_argument("--algs", nargs="*", choices=ALGORITHMS, default=None)
    q.set_defaults(func=_cmd_bench_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, InapplicableError, InapplicableParams, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
