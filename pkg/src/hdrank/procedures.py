"""The six test procedures: max-type, sum-type, and combined, for one- and
two-sample high-dimensional location problems.

Every procedure reduces the data to per-coordinate rank statistics, so the
results are invariant under strictly increasing odd transformations of the
coordinates (one-sample) or strictly increasing transformations applied to
the pooled per-coordinate samples (two-sample).

The max-type statistic squares the largest standardized per-coordinate
statistic and recenters by 2*log(p) - log(log(p)); its p-value comes from
the Gumbel-type limit in ``dists``.  The sum-type statistic averages the
squared centered statistics across coordinates and normalizes by the exact
null moments times an estimated long-run variance.  The combined test fuses
the two p-values with the equal-weight Cauchy rule and uses the result as
both statistic and p-value.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from . import dists, lrv, ranks
from .errors import DomainError, TiesWarning
from .validation import validate_matrix

METHODS = ("max", "sum", "com")

LRV_METHODS = ("ranks", "sequence")


@dataclass(frozen=True)
class TestResult:
    method: str  # "max" | "sum" | "com"
    problem: str  # "one_sample" | "two_sample"
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    meta: dict[str, Any] = field(default_factory=dict)


def one_sample_max_test(X, alpha: float = 0.05) -> TestResult:
    """Max-type one-sample test against a zero location vector."""
    return _one_sample_batch(X, alpha, None, ("max",), "ranks")["max"]


def one_sample_sum_test(
    X, alpha: float = 0.05, bandwidth: int | None = None, lrv_method: str = "ranks"
) -> TestResult:
    """Sum-type one-sample test; upper-tail normal calibration."""
    return _one_sample_batch(X, alpha, bandwidth, ("sum",), lrv_method)["sum"]


def one_sample_combined_test(
    X, alpha: float = 0.05, bandwidth: int | None = None, lrv_method: str = "ranks"
) -> TestResult:
    """Cauchy combination of the one-sample max and sum tests."""
    return _one_sample_batch(X, alpha, bandwidth, ("com",), lrv_method)["com"]


def two_sample_max_test(X, Y, alpha: float = 0.05) -> TestResult:
    """Max-type two-sample test for equality of location vectors."""
    return _two_sample_batch(X, Y, alpha, None, ("max",), "ranks")["max"]


def two_sample_sum_test(
    X, Y, alpha: float = 0.05, bandwidth: int | None = None, lrv_method: str = "ranks"
) -> TestResult:
    """Sum-type two-sample test; upper-tail normal calibration."""
    return _two_sample_batch(X, Y, alpha, bandwidth, ("sum",), lrv_method)["sum"]


def two_sample_combined_test(
    X, Y, alpha: float = 0.05, bandwidth: int | None = None, lrv_method: str = "ranks"
) -> TestResult:
    """Cauchy combination of the two-sample max and sum tests."""
    return _two_sample_batch(X, Y, alpha, bandwidth, ("com",), lrv_method)["com"]


def run_one_sample_tests(
    X,
    methods: Iterable[str] = METHODS,
    alpha: float = 0.05,
    bandwidth: int | None = None,
    lrv_method: str = "ranks",
) -> dict[str, TestResult]:
    """Run several one-sample tests sharing one rank computation."""
    return _one_sample_batch(X, alpha, bandwidth, tuple(methods), lrv_method)


def run_two_sample_tests(
    X,
    Y,
    methods: Iterable[str] = METHODS,
    alpha: float = 0.05,
    bandwidth: int | None = None,
    lrv_method: str = "ranks",
) -> dict[str, TestResult]:
    """Run several two-sample tests sharing one rank computation."""
    return _two_sample_batch(X, Y, alpha, bandwidth, tuple(methods), lrv_method)


def _one_sample_batch(X, alpha, bandwidth, methods, lrv_method):
    Xv = validate_matrix(X, "X")
    _check_args(alpha, methods, lrv_method)
    n, p = Xv.shape
    _check_dimension(p, methods)

    flags = _data_flags(Xv, one_sample=True)
    U = ranks.signed_rank_sums(Xv)
    u_mean, u_var = ranks.signed_rank_null_moments(n)
    sq_mean, sq_var = ranks.squared_signed_rank_null_moments(n)

    def tau() -> lrv.TauEstimate:
        if lrv_method == "sequence":
            seq = ((U - u_mean) ** 2 - sq_mean) / math.sqrt(sq_var)
            return lrv.long_run_variance(seq, bandwidth)
        return lrv.tau_from_matrix(Xv, bandwidth)

    sizes = {"n": n, "p": p}
    return _assemble(
        "one_sample", methods, U, u_mean, u_var, sq_mean, sq_var, tau, alpha,
        sizes, flags, p,
    )


def _two_sample_batch(X, Y, alpha, bandwidth, methods, lrv_method):
    Xv = validate_matrix(X, "X")
    Yv = validate_matrix(Y, "Y")
    _check_args(alpha, methods, lrv_method)
    if Xv.shape[1] != Yv.shape[1]:
        from .errors import ValidationError

        raise ValidationError(
            f"X and Y must have the same number of columns "
            f"(got {Xv.shape[1]} and {Yv.shape[1]})"
        )
    n, p = Xv.shape
    m = Yv.shape[0]
    _check_dimension(p, methods)

    flags = _data_flags(np.vstack([Xv, Yv]), one_sample=False)
    U = ranks.mann_whitney_us(Xv, Yv)
    u_mean, u_var = ranks.mann_whitney_null_moments(n, m)
    sq_mean, sq_var = ranks.squared_mann_whitney_null_moments(n, m)

    def tau() -> lrv.TauEstimate:
        if lrv_method == "sequence":
            seq = ((U - u_mean) ** 2 - sq_mean) / math.sqrt(sq_var)
            return lrv.long_run_variance(seq, bandwidth)
        return lrv.tau_from_matrices(Xv, Yv, bandwidth)

    sizes = {"n": n, "m": m, "p": p}
    return _assemble(
        "two_sample", methods, U, u_mean, u_var, sq_mean, sq_var, tau, alpha,
        sizes, flags, p,
    )


def _assemble(
    problem, methods, U, u_mean, u_var, sq_mean, sq_var, tau_fn, alpha,
    sizes, flags, p,
):
    results: dict[str, TestResult] = {}
    need_max = "max" in methods or "com" in methods
    need_sum = "sum" in methods or "com" in methods

    max_stat = max_p = None
    if need_max:
        v_sq = (U - u_mean) ** 2 / u_var
        max_stat = float(v_sq.max()) - 2.0 * math.log(p) + math.log(math.log(p))
        max_p = dists.gumbel_type_sf(max_stat)

    sum_stat = sum_p = tau = None
    if need_sum:
        tau = tau_fn()
        sq = (U - u_mean) ** 2
        sum_stat = (
            math.sqrt(p) * (float(sq.mean()) - sq_mean)
            / math.sqrt(sq_var * tau.tau_sq)
        )
        sum_p = dists.std_normal_sf(sum_stat)

    if "max" in methods:
        results["max"] = TestResult(
            "max", problem, max_stat, max_p, max_p <= alpha, alpha,
            {**sizes, **flags},
        )
    if "sum" in methods:
        results["sum"] = TestResult(
            "sum", problem, sum_stat, sum_p, sum_p <= alpha, alpha,
            {**sizes, "tau_sq": tau.tau_sq, "bandwidth": tau.bandwidth, **flags},
        )
    if "com" in methods:
        clamped = not (
            dists.P_CLAMP <= max_p <= 1.0 - dists.P_CLAMP
            and dists.P_CLAMP <= sum_p <= 1.0 - dists.P_CLAMP
        )
        com_p = dists.cauchy_combine(max_p, sum_p)
        results["com"] = TestResult(
            "com", problem, com_p, com_p, com_p <= alpha, alpha,
            {
                **sizes,
                "p_max": max_p,
                "p_sum": sum_p,
                "tau_sq": tau.tau_sq,
                "bandwidth": tau.bandwidth,
                "clamped": clamped,
                **flags,
            },
        )
    return results


def _check_args(alpha, methods, lrv_method):
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    bad = set(methods) - set(METHODS)
    if bad or not methods:
        raise DomainError(f"methods must be a nonempty subset of {METHODS}, got {methods!r}")
    if lrv_method not in LRV_METHODS:
        raise DomainError(f"lrv_method must be one of {LRV_METHODS}, got {lrv_method!r}")


def _check_dimension(p, methods):
    if ("max" in methods or "com" in methods) and p < 3:
        raise DomainError(
            f"the max-type calibration needs p >= 3 coordinates so that "
            f"log(log(p)) is positive; got p = {p}"
        )
    if ("sum" in methods or "com" in methods) and p < 4:
        raise DomainError(
            f"the sum-type test needs p >= 4 coordinates for the long-run "
            f"variance estimate; got p = {p}"
        )


def _data_flags(M: np.ndarray, one_sample: bool) -> dict[str, bool]:
    flags: dict[str, bool] = {}
    constant = bool((M == M[0]).all(axis=0).any())
    zeros = one_sample and bool((M == 0.0).any())
    ties = ranks.has_ties(M, absolute=one_sample)
    if constant:
        flags["constant_columns"] = True
        warnings.warn(
            "constant column(s) present: the per-coordinate statistic is "
            "degenerate there",
            TiesWarning,
            stacklevel=4,
        )
    if zeros:
        flags["zeros_detected"] = True
    if ties:
        flags["ties_detected"] = True
    if (zeros or ties) and not constant:
        warnings.warn(
            "ties or zeros present; mid-ranks used, continuous-data null "
            "moments retained",
            TiesWarning,
            stacklevel=4,
        )
    return flags
