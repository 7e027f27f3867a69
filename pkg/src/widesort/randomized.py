"""Las-Vegas two-round sorting.

All three algorithms share one engine.  Round 1 samples pivots uniformly
with replacement (duplicates dropped, which only shrinks buckets), splits
the remaining elements into fixed-size groups, and jointly sorts every
group together with all pivots through a full pair-coverage sub-schedule.
That determines each element's position relative to every pivot, i.e. its
bucket.  Round 2 sorts each bucket independently with the cheapest
single-round construction.  The output is always the exact key order; only
the comparator count varies between runs.

The round-1 batch is fixed before any outcome is observed and the round-2
batch is a function of round-1 outcomes only, so every run takes exactly
two rounds.

Parameter choices per variant:

* square  (n = t^2, t even): t/2 pivots, groups of t/2, each group plus all
  pivots fits one comparator;
* general (t <= ceil(sqrt(n))): ceil(sqrt(n)) pivots and equally sized
  groups, each group-union sorted by the partition scheme as a simulated
  wide comparator;
* large-t (t > ceil(sqrt(n))): ceil(n/t) pivots, groups of t, each
  group-union sorted by the dispatcher's best construction (O(1)
  comparators each).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import CostReport, ID_DTYPE, Batch, KeyOracle, Schedule, execute_round
from .schedules import minimal_schedule, partition_schedule


class ProtocolViolationError(RuntimeError):
    """Round-1 outcomes failed to determine some element's position
    relative to every pivot; indicates a round-1 schedule bug."""


class InapplicableParams(ValueError):
    """Algorithm preconditions on (n, t) do not hold."""


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True)
class PivotSet:
    """Distinct sampled pivots; ``ids`` is key-ascending after round 1."""

    ids: np.ndarray
    requested_count: int

    @property
    def count(self) -> int:
        return self.ids.size


@dataclass(frozen=True)
class Bucket:
    """Elements strictly between pivot ``index - 1`` and pivot ``index``."""

    index: int
    members: np.ndarray

    @property
    def size(self) -> int:
        return self.members.size


@dataclass(frozen=True)
class TwoRoundResult:
    order: np.ndarray
    cost: CostReport
    pivots: PivotSet
    num_groups: int
    bucket_sizes: np.ndarray


def bucketize(pivots_in_key_order, elements, num_smaller_pivots, determined=None):
    """Partition ``elements`` into ``len(pivots) + 1`` key-interval buckets.

    ``num_smaller_pivots[k]`` is the number of pivots whose key is below
    element ``elements[k]``; ``determined[k]`` set False marks an element
    whose relation to some pivot is unknown, which raises
    :class:`ProtocolViolationError`.
    """
    pivots = np.asarray(pivots_in_key_order, dtype=ID_DTYPE)
    elements = np.asarray(elements, dtype=ID_DTYPE)
    counts = np.asarray(num_smaller_pivots, dtype=np.int64)
    if counts.shape != elements.shape:
        raise ValueError("need one pivot count per element")
    if determined is not None:
        determined = np.asarray(determined, dtype=bool)
        if not determined.all():
            bad = elements[~determined]
            raise ProtocolViolationError(
                f"element {int(bad[0])} has an undetermined pivot-relative position"
            )
    m = pivots.size
    if counts.size and (counts.min() < 0 or counts.max() > m):
        raise ProtocolViolationError("pivot-relative position outside [0, |pivots|]")
    order = np.argsort(counts, kind="stable")
    sorted_counts = counts[order]
    starts = np.searchsorted(sorted_counts, np.arange(m + 1))
    ends = np.append(starts[1:], counts.size)
    return [Bucket(i, elements[order[starts[i]:ends[i]]]) for i in range(m + 1)]


def _group_ranks(universe_size: int, local_outcomes: Batch) -> np.ndarray:
    """Total order of a small universe from full pair-coverage outcomes:
    each element's rank is the number of distinct elements seen before it."""
    less = kernels.dominance_matrix(
        local_outcomes.members, local_outcomes.offsets, universe_size
    )
    ranks = less.sum(axis=0)
    if not np.array_equal(np.sort(ranks), np.arange(universe_size)):
        raise ProtocolViolationError("sub-schedule outcomes do not determine the group order")
    return ranks


def _wide_comparator_schedule(size: int, t: int) -> Schedule:
    # simulated wide comparator: the partition scheme covers all pairs of
    # the sub-universe (a single comparator once it fits)
    return partition_schedule(size, t)


def _one_comparator_scheme(size: int, t: int) -> Schedule:
    if size > t:
        raise ProtocolViolationError("group plus pivots exceeded one comparator")
    return Schedule(size, t, [Batch.from_lists([np.arange(size, dtype=ID_DTYPE)])])


def _best_schedule(size: int, t: int) -> Schedule:
    return minimal_schedule(size, t)[0]


def _run_two_round(
    oracle: KeyOracle,
    t: int,
    pivot_target: int,
    group_size: int,
    round1_scheme,
    rng: np.random.Generator,
) -> TwoRoundResult:
    n = oracle.n
    sampled = rng.integers(0, n, size=pivot_target)
    pivots = np.unique(sampled).astype(ID_DTYPE)  # dedup; extra copies ignored
    m = pivots.size
    is_pivot = np.zeros(n, dtype=bool)
    is_pivot[pivots] = True
    rest = np.nonzero(~is_pivot)[0].astype(ID_DTYPE)

    # round 1: every group is sorted jointly with all pivots
    group_bounds = list(range(0, rest.size, group_size)) + [rest.size]
    groups = [rest[group_bounds[i]:group_bounds[i + 1]] for i in range(len(group_bounds) - 1)]
    if not groups:
        groups = [rest[:0]]  # no non-pivots: still sort the pivots themselves
    sub_schedules: dict[int, Schedule] = {}
    universes = []
    parts = []
    for group in groups:
        universe = np.concatenate([pivots, group])
        size = universe.size
        sub = sub_schedules.get(size)
        if sub is None:
            sub = round1_scheme(size, t)
            sub_schedules[size] = sub
        batch = sub.rounds[0]
        parts.append(Batch(universe[batch.members], batch.offsets))
        universes.append(universe)
    round1 = Batch.concatenate(parts)
    out1 = execute_round(oracle, round1, width=t)

    # localize outcomes per group and read off pivot-relative positions
    local_of = np.empty(n, dtype=ID_DTYPE)
    pivot_order = None
    num_smaller = np.empty(rest.size, dtype=np.int64)
    pos = 0
    elem_pos = 0
    for universe, part in zip(universes, parts):
        size = universe.size
        local_of[universe] = np.arange(size, dtype=ID_DTYPE)
        count = len(part)
        seg = Batch(
            local_of[out1.members[out1.offsets[pos]:out1.offsets[pos + count]]],
            part.offsets,
        )
        ranks = _group_ranks(size, seg)
        pivot_ranks = ranks[:m]
        perm = np.argsort(pivot_ranks)
        if pivot_order is None:
            pivot_order = perm
        elif not np.array_equal(pivot_order, perm):
            raise ProtocolViolationError("groups disagree on the pivot order")
        group_count = size - m
        num_smaller[elem_pos:elem_pos + group_count] = np.searchsorted(
            np.sort(pivot_ranks), ranks[m:]
        )
        elem_pos += group_count
        pos += count
    pivots_sorted = pivots[pivot_order] if pivot_order is not None else pivots
    pivot_set = PivotSet(pivots_sorted, pivot_target)

    buckets = bucketize(pivots_sorted, rest, num_smaller)

    # round 2: sort each bucket with the cheapest construction
    bucket_parts = []
    bucket_slices = []
    start = 0
    for bucket in buckets:
        sched = _best_schedule(bucket.size, t)
        batch = sched.rounds[0] if sched.rounds else Batch.empty()
        bucket_parts.append(Batch(bucket.members[batch.members], batch.offsets))
        bucket_slices.append((start, start + len(batch)))
        start += len(batch)
    round2 = Batch.concatenate(bucket_parts)
    out2 = execute_round(oracle, round2, width=t)

    order = np.empty(n, dtype=ID_DTYPE)
    cursor = 0
    for bucket, (lo, hi) in zip(buckets, bucket_slices):
        if bucket.size:
            local_of[bucket.members] = np.arange(bucket.size, dtype=ID_DTYPE)
            seg_members = local_of[out2.members[out2.offsets[lo]:out2.offsets[hi]]]
            seg = Batch(seg_members, out2.offsets[lo:hi + 1] - out2.offsets[lo])
            ranks = _group_ranks(bucket.size, seg)
            ordered = np.empty(bucket.size, dtype=ID_DTYPE)
            ordered[ranks] = np.arange(bucket.size, dtype=ID_DTYPE)
            order[cursor:cursor + bucket.size] = bucket.members[ordered]
            cursor += bucket.size
        if bucket.index < pivot_set.count:
            order[cursor] = pivots_sorted[bucket.index]
            cursor += 1

    cost = CostReport((len(round1), len(round2)))
    sizes = np.array([b.size for b in buckets], dtype=np.int64)
    return TwoRoundResult(order, cost, pivot_set, len(groups), sizes)


def _rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def two_round_sort_square(oracle: KeyOracle, t: int, seed=None) -> TwoRoundResult:
    """Two-round sort for n = t^2 with t even: t/2 pivots ride along in
    every round-1 comparator, so each group-union is a single comparator."""
    n = oracle.n
    if t < 2 or t % 2 != 0 or n != t * t:
        raise InapplicableParams(f"square variant needs n = t^2 with t even, got n={n}, t={t}")
    return _run_two_round(oracle, t, t // 2, t // 2, _one_comparator_scheme, _rng_from(seed))


def two_round_sort_general(oracle: KeyOracle, t: int, seed=None) -> TwoRoundResult:
    """Two-round sort for t <= ceil(sqrt(n)): ceil(sqrt(n)) pivots, groups
    of the same size, group-unions sorted by simulated wide comparators."""
    n = oracle.n
    m = _ceil_sqrt(n)
    if t < 2 or t > m:
        raise InapplicableParams(
            f"general variant needs 2 <= t <= ceil(sqrt(n)), got n={n}, t={t}"
        )
    return _run_two_round(oracle, t, m, m, _wide_comparator_schedule, _rng_from(seed))


def two_round_sort_large_t(oracle: KeyOracle, t: int, seed=None) -> TwoRoundResult:
    """Two-round sort for ceil(sqrt(n)) < t < n: ceil(n/t) pivots, groups
    of t, group-unions of at most t + ceil(n/t) elements each sorted by a
    constant number of comparators."""
    n = oracle.n
    if not (_ceil_sqrt(n) < t < n):
        raise InapplicableParams(
            f"large-t variant needs ceil(sqrt(n)) < t < n, got n={n}, t={t}"
        )
    pivot_target = -(-n // t)
    return _run_two_round(oracle, t, pivot_target, t, _best_schedule, _rng_from(seed))


def auto_two_round(oracle: KeyOracle, t: int, seed=None) -> TwoRoundResult:
    """Route to the variant whose preconditions match (n, t)."""
    n = oracle.n
    if n == t * t and t % 2 == 0:
        return two_round_sort_square(oracle, t, seed)
    if t <= _ceil_sqrt(n):
        return two_round_sort_general(oracle, t, seed)
    return two_round_sort_large_t(oracle, t, seed)


@dataclass(frozen=True)
class BucketSizeStats:
    """Round-1 bucket-size distribution across independent trials."""

    n: int
    t: int
    trials: int
    pivot_target: int
    sizes: np.ndarray  # all bucket sizes, every trial concatenated

    @property
    def max_size(self) -> int:
        return int(self.sizes.max(initial=0))

    @property
    def mean_size(self) -> float:
        return float(self.sizes.mean()) if self.sizes.size else 0.0

    def quantile(self, q: float) -> float:
        return float(np.quantile(self.sizes, q)) if self.sizes.size else 0.0

    @property
    def quantiles(self) -> dict[float, float]:
        return {q: self.quantile(q) for q in (0.5, 0.9, 0.99)}

    @property
    def oversize_threshold(self) -> float:
        ratio = self.n / self.pivot_target
        return ratio * math.log2(ratio) if ratio > 1 else 0.0

    def frequency_over(self, factor: float = 1.0) -> float:
        """Fraction of buckets larger than factor * (n/m) * log2(n/m)."""
        if self.sizes.size == 0:
            return 0.0
        return float(np.mean(self.sizes > factor * self.oversize_threshold))

    @property
    def freq_over_threshold(self) -> float:
        return self.frequency_over(1.0)


def bucket_size_stats(n: int, t: int, trials: int, seed) -> BucketSizeStats:
    """Monte-Carlo summary of round-1 bucket sizes.

    Pivot ids are sampled exactly as the two-round algorithms sample them;
    since keys are a uniformly chosen bijection, identity keys lose no
    generality, so sizes are gaps between sorted pivot ids and no
    comparators need to run.  Deterministic for a fixed seed.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    m_general = _ceil_sqrt(n)
    pivot_target = m_general if t <= m_general else -(-n // t)
    all_sizes = []
    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
        pivots = np.unique(rng.integers(0, n, size=pivot_target))
        edges = np.concatenate([[-1], pivots, [n]])
        all_sizes.append(np.diff(edges) - 1)
    return BucketSizeStats(n, t, trials, pivot_target, np.concatenate(all_sizes))
