"""Adaptive rank-based tests for high-dimensional mean problems.

Per-coordinate Wilcoxon signed-rank / Mann-Whitney statistics aggregated
three ways: a sum-type test calibrated by a normal limit with an estimated
long-run variance, a max-type test calibrated by a Gumbel-type limit, and
their Cauchy p-value combination.  A Monte Carlo laboratory regenerates
empirical size tables and power curves reproducibly.
"""

__version__ = "0.1.0"

from .dists import cauchy_combine, gumbel_type_cdf, gumbel_type_sf, std_normal_cdf, std_normal_sf
from .errors import DomainError, NumericalError, TiesWarning, ValidationError
from .lrv import TauEstimate, default_bandwidth, long_run_variance, tau_from_matrices, tau_from_matrix
from .procedures import (
    METHODS,
    TestResult,
    one_sample_combined_test,
    one_sample_max_test,
    one_sample_sum_test,
    run_one_sample_tests,
    run_two_sample_tests,
    two_sample_combined_test,
    two_sample_max_test,
    two_sample_sum_test,
)
from .ranks import (
    MomentPair,
    mann_whitney_null_moments,
    mann_whitney_u,
    midrank,
    signed_rank_null_moments,
    signed_rank_sum,
    squared_mann_whitney_null_moments,
    squared_signed_rank_null_moments,
    standardized_mann_whitney,
    standardized_signed_ranks,
)
from .shiftmoments import shifted_mann_whitney_moments, shifted_signed_rank_moments
from .simulate import (
    DEFAULT_SIGNAL_GRID,
    SimConfig,
    StudyCell,
    StudyResult,
    ar1_cholesky,
    draw_sample,
    replication_stream,
    run_study,
    sparse_mean,
)

__all__ = [
    "__version__",
    "METHODS",
    "DEFAULT_SIGNAL_GRID",
    "DomainError",
    "MomentPair",
    "NumericalError",
    "SimConfig",
    "StudyCell",
    "StudyResult",
    "TauEstimate",
    "TestResult",
    "TiesWarning",
    "ValidationError",
    "ar1_cholesky",
    "cauchy_combine",
    "default_bandwidth",
    "draw_sample",
    "gumbel_type_cdf",
    "gumbel_type_sf",
    "long_run_variance",
    "mann_whitney_null_moments",
    "mann_whitney_u",
    "midrank",
    "one_sample_combined_test",
    "one_sample_max_test",
    "one_sample_sum_test",
    "replication_stream",
    "run_one_sample_tests",
    "run_study",
    "run_two_sample_tests",
    "shifted_mann_whitney_moments",
    "shifted_signed_rank_moments",
    "signed_rank_null_moments",
    "signed_rank_sum",
    "sparse_mean",
    "squared_mann_whitney_null_moments",
    "squared_signed_rank_null_moments",
    "standardized_mann_whitney",
    "standardized_signed_ranks",
    "std_normal_cdf",
    "std_normal_sf",
    "tau_from_matrices",
    "tau_from_matrix",
    "two_sample_combined_test",
    "two_sample_max_test",
    "two_sample_sum_test",
]
