"""Sorting with wide t-way comparators in one or two rounds.

A width-t comparator reports the full order of up to t elements at once.
This package builds and verifies single-round schedules (incidence-design
based exact-once schedules, recursive composition, partition and
three-comparator fallbacks), runs always-correct randomized two-round
sorts, reproduces a recursive multiway-quicksort baseline, and benchmarks
everything under seeded Monte-Carlo trials.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .baseline import BaselineResult, RecursionNode, multiway_quicksort, pivot_count
from .bench import (
    ALGORITHMS,
    ComparisonRow,
    ConfigurationError,
    ExperimentConfig,
    ExperimentSummary,
    TrialRecord,
    compare_table,
    read_csv,
    run_experiment,
    run_trial,
    summarize,
    trial_seed,
    write_csv,
)
from .core import (
    Batch,
    CostReport,
    CoverageReport,
    KeyOracle,
    NotExactOnceError,
    Schedule,
    UndeterminedOrderError,
    WidthViolationError,
    aggregate_exact_once,
    aggregate_general,
    coverage_lower_bound,
    execute_round,
    execute_schedule,
    make_oracle,
    validate_pair_coverage,
)
from .designs import (
    Design,
    SteinerReport,
    affine_plane,
    design_to_schedule,
    projective_plane,
    shifted_matrix_design,
    verify_steiner2,
)
from .gf import FieldElem, FieldSpec, field_of_order, is_prime, make_field, prime_power
from .randomized import (
    Bucket,
    BucketSizeStats,
    InapplicableParams,
    PivotSet,
    ProtocolViolationError,
    TwoRoundResult,
    auto_two_round,
    bucket_size_stats,
    bucketize,
    two_round_sort_general,
    two_round_sort_large_t,
    two_round_sort_square,
)
from .schedules import (
    ConstructionChoice,
    InapplicableError,
    compose,
    minimal_schedule,
    partition_schedule,
    three_comparator_schedule,
)
from .textio import dumps_schedule, loads_schedule, read_schedule, write_schedule

__version__ = "0.1.0"
