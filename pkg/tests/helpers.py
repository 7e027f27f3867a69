"""Shared brute-force reference implementations for the test suite.

Everything here is deliberately simple and independent of the package's
vectorized code paths, so tests can cross-check the fast implementations
against unoptimized ground truth.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from widesort import Schedule, aggregate_general, execute_schedule, make_oracle


def ref_outcome(keys, members):
    """Stable sort of one assignment by key: the comparator's contract."""
    return sorted(members, key=lambda i: (keys[i],))


def ref_pair_multiplicities(assignments, n) -> Counter:
    """Pair census by dictionary counting; repeats inside an assignment
    still count each pair once."""
    counts: Counter = Counter()
    for assignment in assignments:
        for a, b in itertools.combinations(sorted(set(map(int, assignment))), 2):
            counts[(a, b)] += 1
    return counts


def ref_ranks_exact(outcomes, n):
    ranks = [0] * n
    for outcome in outcomes:
        for pos, elem in enumerate(outcome):
            ranks[int(elem)] += pos
    return ranks


def schedule_sorts_oracle(schedule: Schedule, seed) -> bool:
    """Execute a single-round schedule against a random oracle and check
    the aggregated order against the truth."""
    oracle = make_oracle(schedule.n, seed=seed)
    outcomes = execute_schedule(oracle, schedule)[0]
    order = aggregate_general(schedule.n, outcomes)
    return bool(np.array_equal(order, oracle.true_order()))


def exhaustive_schedule_check(schedule: Schedule) -> bool:
    """Verify a single-round schedule against every key permutation at once.

    For each comparator the sorted outcome is derived per permutation; the
    implied pairwise relations are accumulated (deduplicated by a boolean
    tensor) and each element's rank must equal its key, which for
    permutation keys pins the unique consistent total order.
    """
    n = schedule.n
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    num = perms.shape[0]
    rows = np.arange(num)
    less = np.zeros((num, n, n), dtype=bool)
    for members in schedule.rounds[0]:
        members = np.asarray(members, dtype=np.int64)
        order = np.argsort(perms[:, members], axis=1)
        sorted_ids = members[order]
        w = members.size
        for u in range(w):
            for v in range(u + 1, w):
                less[rows, sorted_ids[:, u], sorted_ids[:, v]] = True
    ranks = less.sum(axis=1)
    return bool(np.array_equal(ranks, perms))
