"""Monte-Carlo benchmark harness: seeded trials, CSV records, summaries.

Each trial gets its own integer seed derived from the master seed and the
trial index through ``numpy.random.SeedSequence([master_seed, index])`` (a
documented, platform-stable hash), so records are reproducible regardless
of execution order and any single trial can be re-run from its recorded
seed alone.  A trial seed feeds two child streams: one for the hidden key
permutation, one for the algorithm's own randomness.

Every trial verifies its output against the oracle's true order.  CSV
output is byte-identical for identical configs; wall times are kept on the
in-memory records only.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .baseline import multiway_quicksort
from .core import (
    Batch,
    CostReport,
    aggregate_exact_once,
    aggregate_general,
    coverage_lower_bound,
    execute_schedule,
    make_oracle,
)
from .randomized import (
    two_round_sort_general,
    two_round_sort_large_t,
    two_round_sort_square,
)
from .schedules import minimal_schedule

ALGORITHMS = ("minimal", "square", "general", "large-t", "baseline")

CSV_HEADER = ("trial", "seed", "rounds", "total_comparators", "comparators_per_round_json")


class ConfigurationError(ValueError):
    """The algorithm/parameter combination cannot run."""


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    n: int
    t: int
    trials: int
    master_seed: int
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1")
        if self.fmt not in ("csv", "table"):
            raise ConfigurationError(f"unknown output format {self.fmt!r}")
        check_applicable(self.algorithm, self.n, self.t)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    rounds: int
    total_comparators: int
    comparators_per_round: tuple[int, ...]
    wall_time: float | None = None


@dataclass(frozen=True)
class ExperimentSummary:
    mean_rounds: float
    median_rounds: float
    max_rounds: int
    stddev_rounds: float
    mean_comparators: float
    median_comparators: float
    max_comparators: int
    stddev_comparators: float
    round_histogram: dict[int, int]  # unit-width bins


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def check_applicable(algorithm: str, n: int, t: int) -> None:
    """Raise :class:`ConfigurationError` with the dispatcher's reason when
    the algorithm cannot run at (n, t)."""
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algorithm!r}; pick from {ALGORITHMS}")
    if n < 1 or t < 2:
        raise ConfigurationError("need n >= 1 and t >= 2")
    if algorithm == "square" and (t % 2 != 0 or n != t * t):
        raise ConfigurationError("square needs n = t^2 with t even")
    if algorithm == "general" and t > _ceil_sqrt(n):
        raise ConfigurationError("general needs t <= ceil(sqrt(n))")
    if algorithm == "large-t" and not (_ceil_sqrt(n) < t < n):
        raise ConfigurationError("large-t needs ceil(sqrt(n)) < t < n")
    if algorithm == "baseline" and t < 3:
        raise ConfigurationError("baseline needs t >= 3")


def trial_seed(master_seed: int, index: int) -> int:
    """Stable per-trial seed: first 64-bit word pooled from
    SeedSequence([master_seed, index])."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, np.uint64)[0])


def run_trial(algorithm: str, n: int, t: int, seed: int) -> tuple[CostReport, float]:
    """Run one seeded trial; returns its cost report and wall time.

    The recorded seed alone reproduces the trial: it derives the key
    permutation and the algorithm stream deterministically.
    """
    check_applicable(algorithm, n, t)
    key_ss, alg_ss = np.random.SeedSequence(seed).spawn(2)
    oracle = make_oracle(n, seed=np.random.default_rng(key_ss))
    alg_rng = np.random.default_rng(alg_ss)
    start = time.perf_counter()
    if algorithm == "minimal":
        schedule, choice = minimal_schedule(n, t)
        executed = execute_schedule(oracle, schedule)
        outcomes = executed[0] if executed else Batch.empty()
        if choice.tag in ("trivial", "minimal-design", "composed"):
            order = aggregate_exact_once(n, outcomes)  # these are exact-once by construction
        else:
            order = aggregate_general(n, outcomes)
        cost = schedule.cost_report()
    elif algorithm == "square":
        res = two_round_sort_square(oracle, t, alg_rng)
        order, cost = res.order, res.cost
    elif algorithm == "general":
        res = two_round_sort_general(oracle, t, alg_rng)
        order, cost = res.order, res.cost
    elif algorithm == "large-t":
        res = two_round_sort_large_t(oracle, t, alg_rng)
        order, cost = res.order, res.cost
    else:
        res = multiway_quicksort(oracle, t, alg_rng)
        order, cost = res.order, res.cost
    elapsed = time.perf_counter() - start
    if not np.array_equal(order, oracle.true_order()):
        raise RuntimeError(
            f"output order diverged from the oracle ({algorithm}, n={n}, t={t}, seed={seed})"
        )
    return cost, elapsed


def summarize(records: Sequence[TrialRecord]) -> ExperimentSummary:
    rounds = [r.rounds for r in records]
    comps = [r.total_comparators for r in records]
    hist: dict[int, int] = {}
    for r in rounds:
        hist[r] = hist.get(r, 0) + 1
    return ExperimentSummary(
        mean_rounds=statistics.fmean(rounds),
        median_rounds=float(statistics.median(rounds)),
        max_rounds=max(rounds),
        stddev_rounds=statistics.pstdev(rounds),
        mean_comparators=statistics.fmean(comps),
        median_comparators=float(statistics.median(comps)),
        max_comparators=max(comps),
        stddev_comparators=statistics.pstdev(comps),
        round_histogram=dict(sorted(hist.items())),
    )


def run_experiment(config: ExperimentConfig) -> tuple[list[TrialRecord], ExperimentSummary]:
    """Run all trials sequentially in trial-index order (trials are
    independent under their derived seeds, so order never changes records)."""
    records = []
    for index in range(config.trials):
        seed = trial_seed(config.master_seed, index)
        cost, elapsed = run_trial(config.algorithm, config.n, config.t, seed)
        records.append(
            TrialRecord(
                trial=index,
                seed=seed,
                rounds=cost.rounds,
                total_comparators=cost.total_comparators,
                comparators_per_round=cost.comparators_per_round,
                wall_time=elapsed,
            )
        )
    summary = summarize(records)
    if config.out is not None:
        write_csv(records, config.out)
    return records, summary


def records_to_csv(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            (
                r.trial,
                r.seed,
                r.rounds,
                r.total_comparators,
                json.dumps(list(r.comparators_per_round), separators=(",", ":")),
            )
        )
    return buf.getvalue()


def write_csv(records: Sequence[TrialRecord], path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(records_to_csv(records))


def read_csv(path) -> list[TrialRecord]:
    records = []
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        for row in reader:
            records.append(
                TrialRecord(
                    trial=int(row[0]),
                    seed=int(row[1]),
                    rounds=int(row[2]),
                    total_comparators=int(row[3]),
                    comparators_per_round=tuple(json.loads(row[4])),
                )
            )
    return records


@dataclass(frozen=True)
class ComparisonRow:
    algorithm: str
    mean_comparators: float
    mean_rounds: float
    lower_bound: Fraction
    ratio_to_bound: float


def compare_table(configs: Sequence[ExperimentConfig]) -> list[ComparisonRow]:
    """Side-by-side summary of several algorithms at one (n, t)."""
    if not configs:
        return []
    n, t = configs[0].n, configs[0].t
    for cfg in configs:
        if (cfg.n, cfg.t) != (n, t):
            raise ConfigurationError("all compared configs must share the same (n, t)")
    bound = coverage_lower_bound(n, t)
    rows = []
    for cfg in configs:
        _, summary = run_experiment(cfg)
        rows.append(
            ComparisonRow(
                algorithm=cfg.algorithm,
                mean_comparators=summary.mean_comparators,
                mean_rounds=summary.mean_rounds,
                lower_bound=bound,
                ratio_to_bound=summary.mean_comparators / float(bound),
            )
        )
    return rows


def format_comparison(rows: Sequence[ComparisonRow]) -> str:
    if not rows:
        return "(no algorithms to compare)\n"
    header = f"{'algorithm':<10} {'mean_comparators':>17} {'mean_rounds':>12} {'bound':>12} {'ratio':>8}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.algorithm:<10} {r.mean_comparators:>17.2f} {r.mean_rounds:>12.2f} "
            f"{float(r.lower_bound):>12.2f} {r.ratio_to_bound:>8.3f}"
        )
    return "\n".join(lines) + "\n"
