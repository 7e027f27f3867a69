"""Single-round schedule constructors and the dispatcher that picks one.

Constructions, from cheapest applicable to universal fallback:

* a single comparator when everything fits (n <= t);
* plane/shifted-matrix designs when n = t^2 or n = t^2 - t + 1 (exact-once
  coverage, meeting the C(n,2)/C(t,2) bound with equality);
* recursive composition for n = t^(2^k), replacing every line of an outer
  plane by an inner composed schedule over that line's points;
* a three-comparator schedule when t >= ceil(2n/3);
* the group-partition scheme: split elements into groups of floor(t/2) and
  spend one comparator on every pair of groups, covering all pairs at under
  three times the lower bound (under twice when t is even and (t/2) | n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import ID_DTYPE, Batch, Schedule
from .designs import affine_plane, design_to_schedule, projective_plane
from .gf import prime_power


class InapplicableError(ValueError):
    """The requested construction does not apply to these parameters."""


@dataclass(frozen=True)
class ConstructionChoice:
    """Which construction the dispatcher used, plus its justification."""

    tag: str  # trivial | three-comparator | minimal-design | composed | partition
    certificate: dict[str, Any] = field(default_factory=dict)


def _single_comparator(n: int, t: int) -> Schedule:
    if n <= 1:
        return Schedule(n, t, [])  # nothing to compare
    return Schedule(n, t, [Batch.from_lists([np.arange(n, dtype=ID_DTYPE)])])


def _star_pair_schedule(n: int) -> Schedule:
    # width-3 covering for t = 3: for each anchor i, absorb its higher
    # partners two at a time so each triple covers three pairs
    assignments = []
    for i in range(n - 1):
        for k in range(i + 1, n, 2):
            assignments.append([i, k] if k + 1 >= n else [i, k, k + 1])
    return Schedule(n, 3, [Batch.from_lists(assignments)])


def partition_schedule(n: int, t: int) -> Schedule:
    """Universal single-round fallback: one comparator per pair of
    floor(t/2)-sized groups, on the union of the two groups.

    Covers every pair at least once (group-internal pairs ride along in any
    comparator containing the group).  Degenerates to a single comparator
    when n <= t.  For t = 3 the halved group size would be 1 and pairing
    groups wastes a slot, which lands exactly on three times the lower
    bound; a width-3 star covering is used there instead to stay strictly
    below it.
    """
    if t < 2:
        raise ValueError("comparator width must be at least 2")
    if n < 0:
        raise ValueError("element count must be non-negative")
    if n <= t:
        return _single_comparator(n, t)
    if t == 3:
        return _star_pair_schedule(n)
    g = t // 2
    bounds = list(range(0, n, g)) + [n]
    groups = [np.arange(bounds[i], bounds[i + 1], dtype=ID_DTYPE) for i in range(len(bounds) - 1)]
    assignments = [
        np.concatenate([groups[i], groups[j]])
        for i in range(len(groups))
        for j in range(i + 1, len(groups))
    ]
    return Schedule(n, t, [Batch.from_lists(assignments)])


def three_comparator_schedule(n: int, t: int) -> Schedule:
    """Three comparators suffice once t >= ceil(2n/3) (and t < n):
    one for the first t elements, and two that pair the remaining tail
    with each half of the first t."""
    if not (t >= math.ceil(2 * n / 3) and t < n):
        raise InapplicableError(
            f"three-comparator schedule needs ceil(2n/3) <= t < n, got n={n}, t={t}"
        )
    half = math.ceil(t / 2)
    head = np.arange(t, dtype=ID_DTYPE)
    tail = np.arange(t, n, dtype=ID_DTYPE)
    first_half = np.arange(half, dtype=ID_DTYPE)
    second_half = np.arange(half, t, dtype=ID_DTYPE)
    assignments = [
        head,
        np.concatenate([tail, first_half]),
        np.concatenate([tail, second_half]),
    ]
    return Schedule(n, t, [Batch.from_lists(assignments)])


def _as_power_tower(n: int, t: int) -> int | None:
    """Return k >= 1 with n == t^(2^k), else None."""
    value = t * t
    k = 1
    while value < n:
        value = value * value
        k += 1
    return k if value == n else None


def compose(n: int, t: int, k: int) -> Schedule:
    """Exact-once schedule for n = t^(2^k) via recursive composition.

    For k = 1 this is the affine plane of order t.  For k > 1, build the
    affine plane over n' = t^(2^(k-1)) -- its points are the n elements,
    its lines have n' points -- and replace every line by the recursively
    composed schedule for n' elements, remapped through that line's point
    list in line order.  Line counts multiply out to exactly
    C(n,2)/C(t,2) comparators, all fully utilized.
    """
    pm = prime_power(t)
    if pm is None:
        raise InapplicableError(f"t={t} must be a prime power")
    if k < 1:
        raise InapplicableError("k must be at least 1")
    expected = t
    for _ in range(k):
        expected = expected * expected
    if n != expected:
        raise InapplicableError(f"n={n} is not t^(2^k) for t={t}, k={k}")
    if k == 1:
        return design_to_schedule(affine_plane(t))
    n_inner = int(round(math.isqrt(n)))
    outer = affine_plane(n_inner)
    inner = compose(n_inner, t, k - 1)
    inner_matrix = inner.rounds[0].members.reshape(-1, t)
    # every outer line spawns a full inner schedule over its own points
    composed = outer.lines[:, inner_matrix].reshape(-1, t)
    return Schedule(n, t, [Batch.from_matrix(composed)])


def minimal_schedule(n: int, t: int) -> tuple[Schedule, ConstructionChoice]:
    """Pick the cheapest applicable single-round construction.

    Preference order: trivial, exact-once designs, composition,
    three-comparator, partition fallback.  Always succeeds for t >= 2.
    """
    if t < 2:
        raise ValueError("comparator width must be at least 2")
    if n <= t:
        return _single_comparator(n, t), ConstructionChoice("trivial", {"n": n, "t": t})
    pm = prime_power(t)
    if n == t * t and pm is not None:
        return (
            design_to_schedule(affine_plane(t)),
            ConstructionChoice("minimal-design", {"construction": "affine-plane", "t": t}),
        )
    if n == t * t - t + 1 and t >= 3 and prime_power(t - 1) is not None:
        return (
            design_to_schedule(projective_plane(t - 1)),
            ConstructionChoice(
                "minimal-design", {"construction": "projective-plane", "q": t - 1}
            ),
        )
    if pm is not None:
        k = _as_power_tower(n, t)
        if k is not None:
            return compose(n, t, k), ConstructionChoice("composed", {"t": t, "k": k})
    if t >= math.ceil(2 * n / 3):
        return (
            three_comparator_schedule(n, t),
            ConstructionChoice("three-comparator", {"n": n, "t": t}),
        )
    return partition_schedule(n, t), ConstructionChoice("partition", {"n": n, "t": t})
