"""Oracle, execution, aggregation, and coverage contracts."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from widesort import (
    Batch,
    CostReport,
    NotExactOnceError,
    UndeterminedOrderError,
    WidthViolationError,
    affine_plane,
    aggregate_exact_once,
    aggregate_general,
    coverage_lower_bound,
    design_to_schedule,
    execute_round,
    execute_schedule,
    make_oracle,
    validate_pair_coverage,
)


class TestOracle:
    def test_singleton_identity(self):
        oracle = make_oracle(1, keys=[0])
        assert oracle.n == 1
        assert list(oracle.true_order()) == [0]

    def test_fixed_seed_is_deterministic(self):
        a = make_oracle(5, seed=7)
        b = make_oracle(5, seed=7)
        assert np.array_equal(a.true_keys(), b.true_keys())

    def test_explicit_keys_drive_compare(self):
        oracle = make_oracle(4, keys=[2, 0, 3, 1])
        assert list(oracle.compare([0, 1])) == [1, 0]

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            make_oracle(3, keys=[0, 0, 2])
        with pytest.raises(ValueError):
            make_oracle(3, keys=[1, 2, 3])

    def test_counter_starts_at_zero_and_counts_calls(self):
        oracle = make_oracle(4, seed=1)
        assert oracle.calls == 0
        oracle.compare([0, 1])
        oracle.compare([2, 3])
        assert oracle.calls == 2


class TestCompare:
    def test_two_elements(self):
        oracle = make_oracle(2, keys=[1, 0])
        assert list(oracle.compare([0, 1])) == [1, 0]

    def test_repeated_element_is_stable(self):
        oracle = make_oracle(1, keys=[0])
        assert list(oracle.compare([0, 0, 0])) == [0, 0, 0]

    def test_four_elements_sorted_by_key(self):
        oracle = make_oracle(4, keys=[2, 0, 3, 1])
        assert list(oracle.compare([0, 1, 2, 3])) == [1, 3, 0, 2]

    def test_width_violation(self):
        oracle = make_oracle(4, seed=0)
        with pytest.raises(WidthViolationError):
            oracle.compare([0, 1, 2], width=2)

    @given(st.integers(2, 8), st.randoms(use_true_random=False))
    @settings(max_examples=30, deadline=None)
    def test_output_is_key_sorted_rearrangement(self, n, rnd):
        keys = list(range(n))
        rnd.shuffle(keys)
        oracle = make_oracle(n, keys=keys)
        members = [rnd.randrange(n) for _ in range(rnd.randrange(1, n + 1))]
        out = list(oracle.compare(members))
        assert sorted(out) == sorted(members)
        assert all(keys[a] <= keys[b] for a, b in zip(out, out[1:]))


class TestExecuteRound:
    def test_empty_batch(self):
        oracle = make_oracle(3, seed=0)
        out = execute_round(oracle, [])
        assert len(out) == 0
        assert oracle.calls == 0

    def test_full_width_single_comparator_sorts_everything(self):
        oracle = make_oracle(6, seed=3)
        out = execute_round(oracle, [list(range(6))], width=6)
        assert np.array_equal(out[0], oracle.true_order())

    def test_two_disjoint_assignments_counter_plus_two(self):
        oracle = make_oracle(6, keys=[5, 3, 1, 0, 2, 4])
        out = execute_round(oracle, [[0, 1, 2], [3, 4, 5]])
        assert oracle.calls == 2
        assert list(out[0]) == [2, 1, 0]
        assert list(out[1]) == [3, 4, 5]

    def test_propagates_width_violation(self):
        oracle = make_oracle(6, seed=1)
        with pytest.raises(WidthViolationError):
            execute_round(oracle, [[0, 1], [0, 1, 2]], width=2)
        assert oracle.calls == 0


class TestGamma:
    def test_values(self):
        assert coverage_lower_bound(9, 3) == 12
        assert coverage_lower_bound(5, 5) == 1
        assert coverage_lower_bound(81, 3) == Fraction(3240, 3)

    def test_exact_rational_not_float(self):
        g = coverage_lower_bound(10, 4)
        assert isinstance(g, Fraction)
        assert g == Fraction(45, 6)

    def test_rejects_tiny_width(self):
        with pytest.raises(ValueError):
            coverage_lower_bound(5, 1)


class TestPairCoverage:
    def test_affine_plane_is_exact_once(self):
        schedule = design_to_schedule(affine_plane(3))
        report = validate_pair_coverage(9, schedule.rounds[0])
        assert report.exact_once
        assert report.covered_pairs == 36
        assert report.min_multiplicity == report.max_multiplicity == 1
        assert report.uncovered.shape == (0, 2)

    def test_two_comparators_never_cover_everything(self):
        # any 2 assignments of width <= t < n leave some pair uncovered
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(3, 30))
            t = int(rng.integers(2, n))
            batch = [rng.integers(0, n, size=t) for _ in range(2)]
            report = validate_pair_coverage(n, batch)
            assert report.uncovered.shape[0] > 0

    def test_partition_schedule_covers_all_with_repeats(self):
        from widesort import partition_schedule

        schedule = partition_schedule(10, 4)
        report = validate_pair_coverage(10, schedule.rounds[0])
        assert not report.exact_once
        assert report.uncovered.shape[0] == 0
        assert report.covered_pairs == 45

    def test_repeated_ids_count_once_per_comparator(self):
        report = validate_pair_coverage(3, [[0, 0, 1], [1, 2, 2]])
        assert report.covered_pairs == 2
        assert report.max_multiplicity == 1
        assert [tuple(p) for p in report.uncovered] == [(0, 2)]


class TestAggregateExactOnce:
    def test_single_comparator_is_its_own_order(self):
        oracle = make_oracle(5, seed=9)
        out = execute_round(oracle, [list(range(5))])
        order = aggregate_exact_once(5, out)
        assert np.array_equal(order, out[0])

    def test_affine_plane_sorts_any_permutation(self):
        schedule = design_to_schedule(affine_plane(3))
        for seed in range(10):
            oracle = make_oracle(9, seed=seed)
            outcomes = execute_schedule(oracle, schedule)[0]
            order = aggregate_exact_once(9, outcomes)
            assert np.array_equal(order, oracle.true_order())

    def test_duplicate_pair_schedule_is_rejected(self):
        oracle = make_oracle(4, seed=2)
        # pair (0, 1) compared twice, pair (2, 3) never
        out = execute_round(oracle, [[0, 1], [0, 1], [0, 2], [0, 3], [1, 2], [1, 3]])
        with pytest.raises(NotExactOnceError):
            aggregate_exact_once(4, out)

    def test_succeeds_iff_coverage_is_exact_once(self):
        # random single-round batches: exact-once coverage means every oracle
        # aggregates correctly; anything else must break on some oracle
        rng = np.random.default_rng(31)
        for _ in range(40):
            n = int(rng.integers(3, 12))
            batch = [
                rng.choice(n, size=int(rng.integers(2, n + 1)), replace=False)
                for _ in range(int(rng.integers(1, 8)))
            ]
            exact = validate_pair_coverage(n, batch).exact_once
            failures = 0
            for seed in range(20):
                oracle = make_oracle(n, seed=seed)
                out = execute_round(oracle, batch)
                try:
                    order = aggregate_exact_once(n, out)
                except NotExactOnceError:
                    failures += 1
                    continue
                if not np.array_equal(order, oracle.true_order()):
                    failures += 1
            if exact:
                assert failures == 0
            else:
                assert failures > 0


class TestAggregateGeneral:
    def test_matches_exact_once_on_designs(self):
        schedule = design_to_schedule(affine_plane(4))
        for seed in range(5):
            oracle = make_oracle(16, seed=seed)
            outcomes = execute_schedule(oracle, schedule)[0]
            assert np.array_equal(
                aggregate_general(16, outcomes), aggregate_exact_once(16, outcomes)
            )

    def test_uncovered_element_is_undetermined(self):
        oracle = make_oracle(3, keys=[0, 1, 2])
        out = execute_round(oracle, [[0, 1]])
        with pytest.raises(UndeterminedOrderError):
            aggregate_general(3, out)

    def test_transitive_chain(self):
        oracle = make_oracle(3, keys=[0, 1, 2])
        out = execute_round(oracle, [[0, 1], [1, 2]])
        assert list(aggregate_general(3, out)) == [0, 1, 2]

    def test_duplicate_comparisons_are_deduplicated(self):
        oracle = make_oracle(3, keys=[2, 0, 1])
        out = execute_round(oracle, [[0, 1], [0, 1], [1, 2], [0, 2]])
        assert list(aggregate_general(3, out)) == [1, 2, 0]


class TestCostReport:
    def test_totals_follow_per_round_counts(self):
        report = CostReport((3, 5, 1))
        assert report.rounds == 3
        assert report.total_comparators == 9


class TestBatch:
    def test_roundtrip_lists(self):
        batch = Batch.from_lists([[1, 2], [0], [3, 4, 5]])
        assert batch.to_lists() == [[1, 2], [0], [3, 4, 5]]
        assert batch.max_width == 3

    def test_rejects_empty_assignment(self):
        with pytest.raises(ValueError):
            Batch.from_lists([[1], []])
