"""Backend equivalence: the jitted kernels, the numpy fallbacks, and the
brute-force references must all agree."""

import numpy as np
import pytest

from widesort._kernels import numpy_impl
from helpers import ref_outcome, ref_pair_multiplicities, ref_ranks_exact

try:
    from widesort._kernels import numba_impl

    BACKENDS = [numpy_impl, numba_impl]
except ImportError:  # pragma: no cover
    BACKENDS = [numpy_impl]


def random_batch(rng, n, num_comparators, max_width, allow_repeats=True):
    parts = []
    for _ in range(num_comparators):
        w = int(rng.integers(1, max_width + 1))
        members = rng.integers(0, n, size=w) if allow_repeats else rng.choice(n, w, replace=False)
        parts.append(members.astype(np.int32))
    offsets = np.zeros(num_comparators + 1, dtype=np.int32)
    offsets[1:] = np.cumsum([p.size for p in parts])
    return np.concatenate(parts) if parts else np.empty(0, np.int32), offsets, parts


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.NAME)
@pytest.mark.parametrize("trial", range(5))
def test_sort_batch_matches_reference(impl, trial):
    rng = np.random.default_rng(100 + trial)
    n = 30
    keys = rng.permutation(n).astype(np.int64)
    members, offsets, parts = random_batch(rng, n, 12, 9)
    out = impl.sort_batch(keys, members, offsets)
    for c, part in enumerate(parts):
        got = out[offsets[c]:offsets[c + 1]]
        assert list(got) == ref_outcome(keys, list(part))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.NAME)
@pytest.mark.parametrize("trial", range(5))
def test_pair_multiplicities_matches_reference(impl, trial):
    rng = np.random.default_rng(200 + trial)
    n = 25
    members, offsets, parts = random_batch(rng, n, 15, 8)
    counts = impl.pair_multiplicities(members, offsets, n)
    ref = ref_pair_multiplicities(parts, n)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            assert counts[k] == ref.get((i, j), 0), (i, j)
            k += 1


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.NAME)
def test_exact_rank_add_matches_reference(impl):
    rng = np.random.default_rng(7)
    n = 40
    keys = rng.permutation(n).astype(np.int64)
    members, offsets, parts = random_batch(rng, n, 20, 10, allow_repeats=False)
    sorted_members = impl.sort_batch(keys, members, offsets)
    ranks = impl.exact_rank_add(sorted_members, offsets, n)
    outcomes = [ref_outcome(keys, list(p)) for p in parts]
    assert list(ranks) == ref_ranks_exact(outcomes, n)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.NAME)
def test_dominance_matrix_matches_reference(impl):
    rng = np.random.default_rng(8)
    n = 20
    keys = rng.permutation(n).astype(np.int64)
    members, offsets, parts = random_batch(rng, n, 10, 7)
    sorted_members = impl.sort_batch(keys, members, offsets)
    less = impl.dominance_matrix(sorted_members, offsets, n)
    expected = np.zeros((n, n), dtype=bool)
    for part in parts:
        out = ref_outcome(keys, list(part))
        for u in range(len(out)):
            for v in range(u + 1, len(out)):
                if out[u] != out[v]:
                    expected[out[u], out[v]] = True
    assert np.array_equal(less, expected)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba backend unavailable")
def test_backends_agree_on_large_random_batches():
    rng = np.random.default_rng(99)
    n = 300
    keys = rng.permutation(n).astype(np.int64)
    members, offsets, _ = random_batch(rng, n, 120, 40)
    np_impl, nb_impl = BACKENDS
    srt_a = np_impl.sort_batch(keys, members, offsets)
    srt_b = nb_impl.sort_batch(keys, members, offsets)
    assert np.array_equal(srt_a, srt_b)
    assert np.array_equal(
        np_impl.pair_multiplicities(members, offsets, n),
        nb_impl.pair_multiplicities(members, offsets, n),
    )
    assert np.array_equal(
        np_impl.exact_rank_add(srt_a, offsets, n), nb_impl.exact_rank_add(srt_b, offsets, n)
    )
    assert np.array_equal(
        np_impl.dominance_matrix(srt_a, offsets, n), nb_impl.dominance_matrix(srt_b, offsets, n)
    )
