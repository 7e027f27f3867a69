"""Jitted implementations of the hot batch kernels.

Default backend when numba is importable.  ``cache=True`` persists the
compiled artifacts, so the JIT cost is paid once per machine.  Must stay
semantically identical to :mod:`widesort._kernels.numpy_impl`.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def sort_batch(keys, members, offsets):
    out = np.empty_like(members)
    for c in range(offsets.size - 1):
        lo = offsets[c]
        hi = offsets[c + 1]
        w = hi - lo
        # composite of (key, input position) keeps the sort stable for
        # repeated ids even though np.argsort here is not stable
        composite = np.empty(w, dtype=np.int64)
        for k in range(w):
            composite[k] = keys[members[lo + k]] * w + k
        order = np.argsort(composite)
        for k in range(w):
            out[lo + k] = members[lo + order[k]]
    return out


@njit(cache=True)
def pair_multiplicities(members, offsets, n):
    counts = np.zeros(n * (n - 1) // 2, dtype=np.int64)
    for c in range(offsets.size - 1):
        lo = offsets[c]
        hi = offsets[c + 1]
        w = hi - lo
        if w < 2:
            continue
        s = np.sort(members[lo:hi].astype(np.int64))
        for u in range(w):
            if u > 0 and s[u] == s[u - 1]:
                continue
            i = s[u]
            base = i * n - i * (i + 1) // 2 - i - 1
            for v in range(u + 1, w):
                if s[v] == s[v - 1]:
                    continue
                counts[base + s[v]] += 1
    return counts


@njit(cache=True)
def exact_rank_add(sorted_members, offsets, n):
    ranks = np.zeros(n, dtype=np.int64)
    for c in range(offsets.size - 1):
        lo = offsets[c]
        hi = offsets[c + 1]
        for k in range(hi - lo):
            ranks[sorted_members[lo + k]] += k
    return ranks


@njit(cache=True)
def dominance_matrix(sorted_members, offsets, n):
    less = np.zeros((n, n), dtype=np.bool_)
    for c in range(offsets.size - 1):
        lo = offsets[c]
        hi = offsets[c + 1]
        for u in range(lo, hi):
            a = sorted_members[u]
            for v in range(u + 1, hi):
                less[a, sorted_members[v]] = True
    for i in range(n):
        less[i, i] = False
    return less


def warm_up() -> None:
    """Trigger compilation of every kernel on tiny inputs."""
    members = np.array([0, 1, 2, 1, 0], dtype=np.int32)
    offsets = np.array([0, 3, 5], dtype=np.int32)
    keys = np.array([2, 0, 1], dtype=np.int64)
    srt = sort_batch(keys, members, offsets)
    pair_multiplicities(members, offsets, 3)
    exact_rank_add(srt, offsets, 3)
    dominance_matrix(srt, offsets, 3)
