"""Pure-numpy implementations of the hot batch kernels.

This is the fallback backend, selected by ``WIDESORT_KERNELS=numpy`` or when
numba is not importable.  Each function here must stay semantically identical
to its jitted twin in :mod:`widesort._kernels.numba_impl`; the test suite
cross-checks the two backends on random inputs.

Batches are encoded as a flat ``members`` array plus an ``offsets`` array of
length ``num_comparators + 1`` (CSR style), so a batch of mixed comparator
widths needs no padding.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

# Cache of upper-triangle position pairs, keyed by comparator width.
_TRIU_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _triu(width: int) -> tuple[np.ndarray, np.ndarray]:
    pair = _TRIU_CACHE.get(width)
    if pair is None:
        pair = np.triu_indices(width, k=1)
        _TRIU_CACHE[width] = pair
    return pair


def sort_batch(keys: np.ndarray, members: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Sort every comparator's members by key, ascending.

    Stable for repeated member ids: duplicates keep their input order.
    Returns a flat array aligned with ``members``/``offsets``.
    """
    out = np.empty_like(members)
    widths = np.diff(offsets)
    if widths.size == 0:
        return out
    for w in np.unique(widths):
        rows = np.nonzero(widths == w)[0]
        idx = offsets[rows][:, None] + np.arange(w, dtype=offsets.dtype)[None, :]
        mem = members[idx]
        order = np.argsort(keys[mem], axis=1, kind="stable")
        out[idx] = np.take_along_axis(mem, order, axis=1)
    return out


def _pair_index(i: np.ndarray, j: np.ndarray, n: int) -> np.ndarray:
    # linear index of the unordered pair (i, j), i < j, in row-major
    # upper-triangle order
    i = i.astype(np.int64)
    j = j.astype(np.int64)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_multiplicities(members: np.ndarray, offsets: np.ndarray, n: int) -> np.ndarray:
    """Count, for every unordered pair of element ids, how many comparators
    contain both.  A comparator holding a repeated id still counts each pair
    it contains only once.
    """
    counts = np.zeros(n * (n - 1) // 2, dtype=np.int64)
    widths = np.diff(offsets)
    if widths.size == 0:
        return counts
    slow_rows: list[int] = []
    use_addat = counts.size > (1 << 23)
    for w in np.unique(widths):
        if w < 2:
            continue
        rows = np.nonzero(widths == w)[0]
        idx = offsets[rows][:, None] + np.arange(w, dtype=offsets.dtype)[None, :]
        mem = np.sort(members[idx], axis=1)
        dup = (mem[:, 1:] == mem[:, :-1]).any(axis=1)
        if dup.any():
            slow_rows.extend(rows[dup].tolist())
            mem = mem[~dup]
        if mem.shape[0] == 0:
            continue
        uu, vv = _triu(int(w))
        # chunk to bound transient memory on very large batches
        chunk = max(1, (1 << 22) // (len(uu) or 1))
        for lo in range(0, mem.shape[0], chunk):
            part = mem[lo:lo + chunk]
            lin = _pair_index(part[:, uu], part[:, vv], n).ravel()
            if use_addat:
                np.add.at(counts, lin, 1)
            else:
                counts += np.bincount(lin, minlength=counts.size)
    for r in slow_rows:
        uniq = np.unique(members[offsets[r]:offsets[r + 1]])
        if uniq.size < 2:
            continue
        uu, vv = _triu(int(uniq.size))
        np.add.at(counts, _pair_index(uniq[uu], uniq[vv], n), 1)
    return counts


def exact_rank_add(sorted_members: np.ndarray, offsets: np.ndarray, n: int) -> np.ndarray:
    """Accumulate, per element, the sum over outcomes of its position within
    each outcome (the count of smaller elements seen by that comparator)."""
    ranks = np.zeros(n, dtype=np.int64)
    widths = np.diff(offsets)
    if widths.size == 0:
        return ranks
    positions = np.arange(sorted_members.size, dtype=np.int64) - np.repeat(
        offsets[:-1].astype(np.int64), widths
    )
    np.add.at(ranks, sorted_members, positions)
    return ranks


def dominance_matrix(sorted_members: np.ndarray, offsets: np.ndarray, n: int) -> np.ndarray:
    """Boolean matrix ``less`` with ``less[a, b]`` set when some outcome
    places ``a`` before ``b``.  The diagonal is always False."""
    less = np.zeros((n, n), dtype=np.bool_)
    for c in range(offsets.size - 1):
        s = sorted_members[offsets[c]:offsets[c + 1]]
        w = s.size
        if w < 2:
            continue
        uu, vv = _triu(int(w))
        less[s[uu], s[vv]] = True
    np.fill_diagonal(less, False)
    return less


def warm_up() -> None:
    """No-op for the numpy backend; exists for backend symmetry."""
    members = np.array([0, 1, 2, 1, 0], dtype=np.int32)
    offsets = np.array([0, 3, 5], dtype=np.int32)
    keys = np.array([2, 0, 1], dtype=np.int64)
    srt = sort_batch(keys, members, offsets)
    pair_multiplicities(members, offsets, 3)
    exact_rank_add(srt, offsets, 3)
    dominance_matrix(srt, offsets, 3)
