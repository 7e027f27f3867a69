"""Problem model: elements with hidden keys, wide comparators, schedules.

An instance has ``n`` elements, identified by ids ``0..n-1``, each carrying a
hidden key; keys form a bijection onto ``[0, n)`` so every total order is
realized by exactly one key assignment.  A width-``t`` comparator receives up
to ``t`` element ids (repeats allowed) and reports them in ascending key
order.  A schedule is a list of rounds, each round a batch of comparator
assignments that could run concurrently; a later round may depend on earlier
outcomes.

This module supplies the oracle, batch/schedule containers, batch execution,
the pair-coverage validator and its exact lower bound, and the two outcome
aggregators that turn comparator outputs back into a total order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kernels

ID_DTYPE = np.int32


class WidthViolationError(ValueError):
    """An assignment holds more members than the comparator width allows."""


class NotExactOnceError(ValueError):
    """Exact-once aggregation was fed outcomes that do not compare every
    pair of elements exactly once."""


class UndeterminedOrderError(ValueError):
    """The outcomes, even closed under transitivity, leave at least one
    pair of elements unordered."""


def _as_id_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=ID_DTYPE)
    if arr.ndim != 1:
        raise ValueError("an assignment must be a flat sequence of element ids")
    return arr


class Batch:
    """One round's comparator assignments (or outcomes), stored flat.

    ``members`` concatenates all assignments; ``offsets[c]:offsets[c+1]``
    delimits comparator ``c``.  The same container carries outcomes, which
    are just assignments reordered by key.
    """

    __slots__ = ("members", "offsets")

    def __init__(self, members, offsets):
        self.members = np.ascontiguousarray(members, dtype=ID_DTYPE)
        self.offsets = np.ascontiguousarray(offsets, dtype=ID_DTYPE)
        if self.offsets.size == 0 or self.offsets[0] != 0:
            raise ValueError("offsets must start at 0")
        if self.offsets[-1] != self.members.size:
            raise ValueError("offsets must end at len(members)")
        if np.any(np.diff(self.offsets) < 1):
            raise ValueError("every assignment needs at least one member")

    @classmethod
    def from_lists(cls, assignments: Iterable[Sequence[int]]) -> "Batch":
        parts = [_as_id_array(a) for a in assignments]
        offsets = np.zeros(len(parts) + 1, dtype=ID_DTYPE)
        if parts:
            offsets[1:] = np.cumsum([p.size for p in parts])
            members = np.concatenate(parts)
        else:
            members = np.empty(0, dtype=ID_DTYPE)
        return cls(members, offsets)

    @classmethod
    def from_matrix(cls, matrix) -> "Batch":
        matrix = np.asarray(matrix, dtype=ID_DTYPE)
        count, width = matrix.shape
        offsets = np.arange(0, (count + 1) * width, width, dtype=ID_DTYPE)
        return cls(matrix.reshape(-1), offsets)

    @classmethod
    def empty(cls) -> "Batch":
        return cls(np.empty(0, dtype=ID_DTYPE), np.zeros(1, dtype=ID_DTYPE))

    @staticmethod
    def concatenate(batches: Sequence["Batch"]) -> "Batch":
        batches = [b for b in batches if len(b)]
        if not batches:
            return Batch.empty()
        members = np.concatenate([b.members for b in batches])
        sizes = np.concatenate([np.diff(b.offsets) for b in batches])
        offsets = np.zeros(sizes.size + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        return Batch(members, offsets.astype(ID_DTYPE))

    def __len__(self) -> int:
        return self.offsets.size - 1

    def __getitem__(self, c: int) -> np.ndarray:
        if not 0 <= c < len(self):
            raise IndexError(c)
        return self.members[self.offsets[c]:self.offsets[c + 1]]

    def __iter__(self):
        for c in range(len(self)):
            yield self[c]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Batch)
            and np.array_equal(self.members, other.members)
            and np.array_equal(self.offsets, other.offsets)
        )

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def max_width(self) -> int:
        return 0 if len(self) == 0 else int(self.widths.max())

    def to_lists(self) -> list[list[int]]:
        return [list(map(int, a)) for a in self]

    def check_width(self, width: int) -> None:
        if self.max_width > width:
            raise WidthViolationError(
                f"assignment of {self.max_width} members exceeds comparator width {width}"
            )

    def __repr__(self) -> str:
        return f"Batch(comparators={len(self)}, max_width={self.max_width})"


class Schedule:
    """A static plan: one batch of assignments per round, width ``t``."""

    __slots__ = ("n", "width", "rounds")

    def __init__(self, n: int, width: int, rounds: Sequence[Batch]):
        if width < 1:
            raise ValueError("comparator width must be positive")
        self.n = int(n)
        self.width = int(width)
        self.rounds = list(rounds)
        for batch in self.rounds:
            batch.check_width(self.width)
            if len(batch) and (batch.members.min() < 0 or batch.members.max() >= n):
                raise ValueError("assignment references an element id outside [0, n)")

    @property
    def num_rounds(self) -> int:
        return len(self.rounds)

    @property
    def comparators_per_round(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.rounds)

    @property
    def num_comparators(self) -> int:
        return sum(len(b) for b in self.rounds)

    def cost_report(self) -> "CostReport":
        return CostReport(self.comparators_per_round)

    def __repr__(self) -> str:
        return (
            f"Schedule(n={self.n}, width={self.width}, "
            f"comparators_per_round={self.comparators_per_round})"
        )


@dataclass(frozen=True)
class CostReport:
    """Comparator counts per round; the quantity every experiment measures."""

    comparators_per_round: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "comparators_per_round", tuple(int(c) for c in self.comparators_per_round)
        )

    @property
    def rounds(self) -> int:
        return len(self.comparators_per_round)

    @property
    def total_comparators(self) -> int:
        return sum(self.comparators_per_round)


class KeyOracle:
    """Holds the hidden key bijection and answers comparator calls.

    Keys are reachable only through :meth:`compare` /
    :func:`execute_round`; ``true_order`` exists so test and benchmark
    harnesses can verify outputs, and must not be used by sorting code.
    Every comparator invocation increments :attr:`calls`.
    """

    __slots__ = ("_keys", "calls")

    def __init__(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        n = keys.size
        if not np.array_equal(np.sort(keys), np.arange(n)):
            raise ValueError("keys must be a bijection onto [0, n)")
        self._keys = keys
        self._keys.setflags(write=False)
        self.calls = 0

    @property
    def n(self) -> int:
        return self._keys.size

    def compare(self, members, width: int | None = None) -> np.ndarray:
        """Report the members of one assignment in ascending key order.

        Stable for repeated ids.  Raises :class:`WidthViolationError` when a
        width cap is given and exceeded.
        """
        members = _as_id_array(members)
        if width is not None and members.size > width:
            raise WidthViolationError(
                f"assignment of {members.size} members exceeds comparator width {width}"
            )
        if members.size and (members.min() < 0 or members.max() >= self.n):
            raise ValueError("assignment references an element id outside [0, n)")
        self.calls += 1
        order = np.argsort(self._keys[members], kind="stable")
        return members[order]

    def true_order(self) -> np.ndarray:
        """Element ids in ascending key order (verification only)."""
        return np.argsort(self._keys).astype(ID_DTYPE)

    def true_keys(self) -> np.ndarray:
        """Copy of the hidden keys (verification only)."""
        return self._keys.copy()

    def __repr__(self) -> str:
        return f"KeyOracle(n={self.n}, calls={self.calls})"


def make_oracle(n: int, seed=None, keys=None) -> KeyOracle:
    """Create an oracle over ``n`` elements.

    ``keys`` pins an explicit key bijection; otherwise keys are a uniformly
    random permutation drawn from ``seed`` (deterministic for a fixed seed).
    """
    if n < 1:
        raise ValueError("need at least one element")
    if keys is not None:
        keys = np.asarray(keys, dtype=np.int64)
        if keys.size != n:
            raise ValueError(f"expected {n} keys, got {keys.size}")
        return KeyOracle(keys)
    rng = np.random.default_rng(seed)
    return KeyOracle(rng.permutation(n))


def execute_round(oracle: KeyOracle, batch, width: int | None = None) -> Batch:
    """Run one round: every assignment through its own comparator.

    Outcomes come back in batch order; the oracle's call counter grows by
    the batch size (duplicate assignments cost duplicates).
    """
    if not isinstance(batch, Batch):
        batch = Batch.from_lists(batch)
    if width is not None:
        batch.check_width(width)
    if len(batch) and (batch.members.min() < 0 or batch.members.max() >= oracle.n):
        raise ValueError("assignment references an element id outside [0, n)")
    oracle.calls += len(batch)
    sorted_members = kernels.sort_batch(oracle._keys, batch.members, batch.offsets)
    return Batch(sorted_members, batch.offsets)


def execute_schedule(oracle: KeyOracle, schedule: Schedule) -> list[Batch]:
    """Execute every round of a static schedule, in order."""
    return [execute_round(oracle, batch, schedule.width) for batch in schedule.rounds]


def coverage_lower_bound(n: int, t: int) -> Fraction:
    """Exact rational lower bound C(n,2)/C(t,2) on the number of width-``t``
    comparators any correct single-round schedule needs."""
    if t < 2:
        raise ValueError("comparator width must be at least 2")
    if t > n:
        raise ValueError("width may not exceed the element count")
    return Fraction(math.comb(n, 2), math.comb(t, 2))


def _decode_pairs(linear: np.ndarray, n: int) -> np.ndarray:
    """Inverse of the upper-triangle linearization used by the kernels."""
    if linear.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    rows = np.arange(n, dtype=np.int64)
    row_starts = rows * n - rows * (rows + 1) // 2
    i = np.searchsorted(row_starts, linear, side="right") - 1
    j = linear - row_starts[i] + i + 1
    return np.stack([i, j], axis=1)


@dataclass(frozen=True)
class CoverageReport:
    """Pair-coverage census of a single batch over ``n`` elements."""

    n: int
    covered_pairs: int
    min_multiplicity: int
    max_multiplicity: int
    exact_once: bool
    uncovered: np.ndarray  # (k, 2) pairs never compared together

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2


def validate_pair_coverage(n: int, batch) -> CoverageReport:
    """Count, for each of the C(n,2) unordered pairs, how many comparators
    of ``batch`` contain both elements."""
    if not isinstance(batch, Batch):
        batch = Batch.from_lists(batch)
    counts = kernels.pair_multiplicities(batch.members, batch.offsets, n)
    if counts.size == 0:
        return CoverageReport(n, 0, 0, 0, True, np.empty((0, 2), dtype=np.int64))
    mn = int(counts.min())
    mx = int(counts.max())
    covered = int(np.count_nonzero(counts))
    uncovered = _decode_pairs(np.nonzero(counts == 0)[0], n)
    return CoverageReport(n, covered, mn, mx, mn == 1 and mx == 1, uncovered)


def _as_outcome_batch(outcomes) -> Batch:
    return outcomes if isinstance(outcomes, Batch) else Batch.from_lists(outcomes)


def aggregate_exact_once(n: int, outcomes) -> np.ndarray:
    """Rank accumulation for exact-once schedules.

    Each outcome position ``k`` adds ``k`` to that element's rank (the
    number of smaller elements that comparator saw).  When every pair was
    compared exactly once the ranks are a bijection and index the output
    array directly.  Raises :class:`NotExactOnceError` otherwise.
    """
    batch = _as_outcome_batch(outcomes)
    ranks = kernels.exact_rank_add(batch.members, batch.offsets, n)
    if not np.array_equal(np.sort(ranks), np.arange(n)):
        raise NotExactOnceError(
            "outcomes do not cover every pair exactly once; ranks are not a bijection"
        )
    order = np.empty(n, dtype=ID_DTYPE)
    order[ranks] = np.arange(n, dtype=ID_DTYPE)
    return order


def _transitive_closure(less: np.ndarray) -> np.ndarray:
    n = less.shape[0]
    reach = less.astype(np.float32)
    for _ in range(max(1, math.ceil(math.log2(max(n, 2))))):
        new = (reach @ reach > 0) | (reach > 0)
        if np.array_equal(new, reach > 0):
            break
        reach = new.astype(np.float32)
    return reach > 0


def aggregate_general(n: int, outcomes) -> np.ndarray:
    """Recover the total order from arbitrary (possibly overlapping)
    outcomes.

    Collects every pairwise relation implied within each outcome, deduplicates
    repeats, closes under transitivity, and returns the unique consistent
    total order.  Raises :class:`UndeterminedOrderError` when some pair's
    order cannot be inferred.
    """
    if n == 0:
        return np.empty(0, dtype=ID_DTYPE)
    batch = _as_outcome_batch(outcomes)
    less = kernels.dominance_matrix(batch.members, batch.offsets, n)
    known = less | less.T
    np.fill_diagonal(known, True)
    if not known.all():
        less = _transitive_closure(less)
        known = less | less.T
        np.fill_diagonal(known, True)
        if not known.all():
            i, j = np.nonzero(~known)
            raise UndeterminedOrderError(
                f"relative order of elements {int(i[0])} and {int(j[0])} is undetermined"
            )
    ranks = less.sum(axis=0)
    if not np.array_equal(np.sort(ranks), np.arange(n)):
        raise ValueError("outcomes are mutually inconsistent")
    order = np.empty(n, dtype=ID_DTYPE)
    order[ranks] = np.arange(n, dtype=ID_DTYPE)
    return order
