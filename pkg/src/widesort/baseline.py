"""Recursive multiway quicksort baseline, instrumented for round counts.

Any subset that fits one comparator is sorted outright.  A larger subset
samples ``max(1, floor(t / log(t)))`` distinct pivots, then buckets its
remaining elements against them: the elements are chunked into groups of
``t - pivots`` and every group shares one comparator with all the pivots,
so each outcome pins the group's members between pivots.  Buckets recurse.

Round accounting (the ``level-per-round`` policy): comparators for a subset
formed at recursion level ``d`` execute at level ``d + 1``, terminal
single-comparator sorts included, since they depend on level-``d`` outcomes.
A run's round count is the deepest level that executed any comparator.  The
log base for the pivot count is a parameter so sensitivity runs can switch
from base 2 to base e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import CostReport, ID_DTYPE, Batch, KeyOracle, execute_round


@dataclass
class RecursionNode:
    """A subset awaiting work at ``depth`` (the level it was formed at)."""

    subset: np.ndarray
    depth: int
    pivots_sorted: np.ndarray | None = None
    outcome: np.ndarray | None = None
    children: list = field(default_factory=list)


@dataclass(frozen=True)
class BaselineResult:
    order: np.ndarray
    cost: CostReport


def pivot_count(t: int, log_base: float = 2.0) -> int:
    """Pivots sampled per oversize subset: max(1, floor(t / log_base(t)))."""
    return max(1, math.floor(t * math.log(log_base) / math.log(t)))


def _bucket_comparators(subset, pivots, t):
    rest = np.setdiff1d(subset, pivots)
    group = t - pivots.size
    parts = [
        np.concatenate([pivots, rest[i:i + group]])
        for i in range(0, rest.size, group)
    ]
    return parts, rest


def multiway_quicksort(
    oracle: KeyOracle, t: int, seed=None, log_base: float = 2.0
) -> BaselineResult:
    """Sort via recursive pivot bucketing; always-correct output, random
    comparator and round counts."""
    if t < 3:
        raise ValueError("width must be at least 3 so t / log(t) >= 1")
    n = oracle.n
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    m_p = pivot_count(t, log_base)

    root = RecursionNode(np.arange(n, dtype=ID_DTYPE), 0)
    frontier = [root] if n >= 2 else []
    comparators_per_round: list[int] = []

    while frontier:
        assignments: list[np.ndarray] = []
        jobs: list[tuple[RecursionNode, int, int]] = []  # node, first comparator, count
        for node in frontier:
            s = node.subset
            start = len(assignments)
            if s.size <= t:
                assignments.append(s)
            else:
                pivots = np.sort(rng.choice(s, size=m_p, replace=False)).astype(ID_DTYPE)
                parts, _ = _bucket_comparators(s, pivots, t)
                node.pivots_sorted = pivots  # id order for now; key order below
                assignments.extend(parts)
            jobs.append((node, start, len(assignments) - start))
        outcomes = execute_round(oracle, Batch.from_lists(assignments), width=t)
        comparators_per_round.append(len(outcomes))

        next_frontier: list[RecursionNode] = []
        for node, start, count in jobs:
            if node.subset.size <= t:
                node.outcome = outcomes[start].copy()
                continue
            pivots = node.pivots_sorted
            pivot_pos = np.empty(n, dtype=np.int64)
            pivot_pos[pivots] = np.arange(pivots.size)
            is_pivot = np.zeros(n, dtype=bool)
            is_pivot[pivots] = True
            key_order = None
            bucket_lists: list[list[np.ndarray]] = [[] for _ in range(pivots.size + 1)]
            for c in range(start, start + count):
                out = outcomes[c]
                mask = is_pivot[out]
                if key_order is None:
                    key_order = out[mask]  # pivots in ascending key order
                below = np.cumsum(mask)  # pivots seen so far, inclusive
                non_pivot = out[~mask]
                bucket_lists_idx = below[~mask]
                for b, elem in zip(bucket_lists_idx, non_pivot):
                    bucket_lists[b].append(elem)
            node.pivots_sorted = key_order
            for b, elems in enumerate(bucket_lists):
                members = np.array(elems, dtype=ID_DTYPE)
                child = RecursionNode(members, node.depth + 1)
                node.children.append(child)
                if members.size >= 2:
                    next_frontier.append(child)
                else:
                    child.outcome = members
        frontier = next_frontier

    def assemble(node: RecursionNode) -> np.ndarray:
        if node.outcome is not None:
            return node.outcome
        parts = []
        for i, child in enumerate(node.children):
            parts.append(assemble(child))
            if i < node.pivots_sorted.size:
                parts.append(node.pivots_sorted[i:i + 1])
        return np.concatenate(parts) if parts else np.empty(0, dtype=ID_DTYPE)

    if n == 0:
        order = np.empty(0, dtype=ID_DTYPE)
    elif n == 1:
        order = np.zeros(1, dtype=ID_DTYPE)
    else:
        order = assemble(root)
    return BaselineResult(order, CostReport(tuple(comparators_per_round)))
