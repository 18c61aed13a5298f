"""Rank kernels and exact moments for per-coordinate location statistics.

The one-sample statistic is the Wilcoxon signed-rank sum: ranks of the
absolute values, summed over the positive observations.  The two-sample
statistic is the Mann-Whitney count of pairs where the first sample exceeds
the second, computed from pooled mid-ranks.  Ties receive mid-ranks; exact
zeros in the one-sample problem keep their rank slot but never count as
positive.  The closed-form null moments below assume continuous data, so a
``TiesWarning`` is emitted whenever ties or zeros are present.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
from scipy.stats import rankdata

from .errors import DomainError, TiesWarning
from .validation import validate_matrix, validate_vector


class MomentPair(NamedTuple):
    """Mean and variance of a statistic under a stated hypothesis."""

    mean: float
    variance: float


def midrank(values) -> np.ndarray:
    """Ranks in 1..k with tied values sharing the average of their positions."""
    x = validate_vector(values, "values")
    return rankdata(x, method="average")


def signed_rank_sum(values) -> float:
    """Wilcoxon signed-rank statistic: sum of |x| mid-ranks over positive x."""
    x = validate_vector(values, "values")
    _warn_on_ties_or_zeros(x[:, None], one_sample=True)
    r = rankdata(np.abs(x), method="average")
    return float(r[x > 0.0].sum())


def mann_whitney_u(x, y) -> float:
    """Mann-Whitney statistic: pooled rank-sum of x minus n(n+1)/2.

    Equals the number of pairs with x_i > y_j when there are no ties.
    """
    xv = validate_vector(x, "x")
    yv = validate_vector(y, "y")
    n = xv.size
    pooled = np.concatenate([xv, yv])
    _warn_on_ties_or_zeros(pooled[:, None], one_sample=False)
    r = rankdata(pooled, method="average")
    return float(r[:n].sum() - n * (n + 1) / 2.0)


def signed_rank_null_moments(n: int) -> MomentPair:
    """Null mean n(n+1)/4 and variance n(n+1)(2n+1)/24 of the signed-rank sum."""
    _require_size(n, "n")
    return MomentPair(n * (n + 1) / 4.0, n * (n + 1) * (2 * n + 1) / 24.0)


def squared_signed_rank_null_moments(n: int) -> MomentPair:
    """Null moments of the squared centered signed-rank sum.

    The variance polynomial is evaluated in exact integer arithmetic before
    the final division, so there is no cancellation or overflow for any
    practical n (tested up to 10**6).
    """
    _require_size(n, "n")
    mean = n * (n + 1) * (2 * n + 1) / 24.0
    num = 6 * n + 5 * n**2 - 30 * n**3 - 25 * n**4 + 24 * n**5 + 20 * n**6
    return MomentPair(mean, num / 1440.0)


def mann_whitney_null_moments(n: int, m: int) -> MomentPair:
    """Null mean mn/2 and variance mn(m+n+1)/12 of the Mann-Whitney count."""
    _require_size(n, "n")
    _require_size(m, "m")
    return MomentPair(m * n / 2.0, m * n * (m + n + 1) / 12.0)


def squared_mann_whitney_null_moments(n: int, m: int) -> MomentPair:
    """Null moments of the squared centered Mann-Whitney count."""
    _require_size(n, "n")
    _require_size(m, "m")
    mean = m * n * (m + n + 1) / 12.0
    num = (m * n * (5 * (m + n) + 8) - 3 * (m + n) * (m + n + 1)) * (m + n + 1) * m * n
    return MomentPair(mean, num / 360.0)


def signed_rank_sums(X: np.ndarray) -> np.ndarray:
    """Per-column signed-rank sums of a validated n-by-p matrix."""
    R = rankdata(np.abs(X), axis=0, method="average")
    return (R * (X > 0.0)).sum(axis=0)


def mann_whitney_us(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Per-column Mann-Whitney counts from pooled mid-ranks."""
    n = X.shape[0]
    R = rankdata(np.vstack([X, Y]), axis=0, method="average")
    return R[:n].sum(axis=0) - n * (n + 1) / 2.0


def standardized_signed_ranks(X) -> np.ndarray:
    """Column-wise signed-rank sums centered and scaled by their null moments."""
    Xv = validate_matrix(X, "X")
    _warn_on_ties_or_zeros(Xv, one_sample=True)
    mean, var = signed_rank_null_moments(Xv.shape[0])
    return (signed_rank_sums(Xv) - mean) / np.sqrt(var)


def standardized_mann_whitney(X, Y) -> np.ndarray:
    """Column-wise Mann-Whitney counts centered and scaled by their null moments."""
    Xv = validate_matrix(X, "X")
    Yv = validate_matrix(Y, "Y")
    if Xv.shape[1] != Yv.shape[1]:
        from .errors import ValidationError

        raise ValidationError(
            f"X and Y must have the same number of columns "
            f"(got {Xv.shape[1]} and {Yv.shape[1]})"
        )
    _warn_on_ties_or_zeros(np.vstack([Xv, Yv]), one_sample=False)
    mean, var = mann_whitney_null_moments(Xv.shape[0], Yv.shape[0])
    return (mann_whitney_us(Xv, Yv) - mean) / np.sqrt(var)


def has_ties(M: np.ndarray, absolute: bool = False) -> bool:
    """True if any column of M contains duplicated (optionally absolute) values."""
    S = np.sort(np.abs(M) if absolute else M, axis=0)
    return bool((np.diff(S, axis=0) == 0.0).any())


def _warn_on_ties_or_zeros(M: np.ndarray, one_sample: bool) -> None:
    if one_sample and (M == 0.0).any():
        warnings.warn(
            "exact zeros present; they keep their rank slot but never count "
            "as positive, and the continuous-data null moments are unchanged",
            TiesWarning,
            stacklevel=3,
        )
    if has_ties(M, absolute=one_sample):
        warnings.warn(
            "tied values resolved by mid-ranks; null moments assume "
            "continuous data",
            TiesWarning,
            stacklevel=3,
        )


def _require_size(k: int, name: str) -> None:
    if int(k) != k or k < 1:
        raise DomainError(f"{name} must be an integer >= 1, got {k!r}")
