"""Long-run variance of the cross-coordinate statistic sequence.

The sum-type tests standardize an average of p dependent per-coordinate
quantities, so the plain variance must be inflated by twice the sum of the
lagged autocovariances.  Two estimators are provided:

* ``rank_correlation_lrv`` (default in the test procedures): the sequence of
  standardized squared statistics has unit variance by construction, and its
  lag-k autocovariance is asymptotically the square of the lag-k correlation
  of the underlying standardized statistics, which in turn is the grade
  (Spearman) correlation of the data coordinates.  Averaged within-sample
  grade correlations are invariant under coordinate-wise location shifts, so
  this estimate is unaffected by the alternative's mean structure.

* ``long_run_variance``: a generic Bartlett-windowed estimate from the
  observed sequence itself.  Autocovariances are computed after centering;
  the uncentered form couples the estimate to the very mean the sum test
  measures and visibly distorts both size and power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import DomainError
from .validation import validate_vector

TAU_FLOOR = 1e-6


@dataclass(frozen=True)
class TauEstimate:
    """Long-run variance estimate with its bandwidth and autocovariances."""

    tau_sq: float
    bandwidth: int
    autocovariances: np.ndarray  # lags 0..bandwidth


def default_bandwidth(p: int) -> int:
    """floor(3 * p^(1/3)), capped at p - 2."""
    return min(int(3.0 * p ** (1.0 / 3.0) + 1e-6), p - 2)


def _resolve_bandwidth(p: int, bandwidth: int | None) -> int:
    if p < 4:
        raise DomainError(f"long-run variance needs a sequence of length >= 4, got {p}")
    if bandwidth is None:
        return default_bandwidth(p)
    if int(bandwidth) != bandwidth or bandwidth < 0:
        raise DomainError(f"bandwidth must be a nonnegative integer, got {bandwidth!r}")
    if bandwidth >= p - 1:
        raise DomainError(f"bandwidth {bandwidth} too large for sequence length {p}")
    return int(bandwidth)


def bartlett_weights(bandwidth: int) -> np.ndarray:
    """Weights 1 - k/(b+1) for lags k = 1..b."""
    return 1.0 - np.arange(1, bandwidth + 1) / (bandwidth + 1.0)


def long_run_variance(seq, bandwidth: int | None = None) -> TauEstimate:
    """Bartlett-windowed long-run variance of a scalar sequence.

    gamma(k) is the lag-k autocovariance of the centered sequence with
    divisor p; the estimate is gamma(0) + 2 * sum_k (1 - k/(b+1)) gamma(k),
    floored at ``TAU_FLOOR``.
    """
    r = validate_vector(seq, "sequence")
    p = r.size
    b = _resolve_bandwidth(p, bandwidth)
    rc = r - r.mean()
    acov = np.empty(b + 1)
    for k in range(b + 1):
        acov[k] = rc[: p - k] @ rc[k:] / p
    tau = acov[0] + 2.0 * (bartlett_weights(b) @ acov[1:])
    return TauEstimate(max(float(tau), TAU_FLOOR), b, acov)


def lag_grade_correlations(M: np.ndarray, bandwidth: int) -> np.ndarray:
    """Average lag-k Spearman correlations between coordinates, k = 1..b.

    Columns are converted to grades (mid-ranks over the sample) and
    standardized; the lag-k value averages the correlation over all
    coordinate pairs (j, j+k).  Constant columns contribute zero.
    """
    n, p = M.shape
    G = rankdata(M, axis=0, method="average")
    G = G - G.mean(axis=0)
    norms = np.sqrt((G * G).sum(axis=0))
    keep = norms > 0.0
    G = np.divide(G, norms, out=np.zeros_like(G), where=keep)
    out = np.empty(bandwidth)
    for k in range(1, bandwidth + 1):
        out[k - 1] = (G[:, : p - k] * G[:, k:]).sum() / (p - k)
    return out


def rank_correlation_lrv(
    lag_corrs: np.ndarray, bandwidth: int | None, p: int
) -> TauEstimate:
    """Long-run variance 1 + 2 * sum_k w_k * rho_k^2 from lag correlations.

    The unit leading term is the known variance of the standardized squared
    statistic under the null; the squared correlations are the implied
    autocovariances of that sequence.
    """
    b = _resolve_bandwidth(p, bandwidth)
    rho = np.asarray(lag_corrs[:b], dtype=float)
    acov = np.concatenate([[1.0], rho**2])
    tau = 1.0 + 2.0 * (bartlett_weights(b) @ acov[1:])
    return TauEstimate(max(float(tau), TAU_FLOOR), b, acov)


def combined_lag_grade_correlations(
    X: np.ndarray, Y: np.ndarray, bandwidth: int
) -> np.ndarray:
    """Two-sample lag correlations, each sample graded within itself.

    The pooled statistic's coordinate correlation is the sample-size
    weighted mix of the two grade correlations: the first sample enters the
    statistic once per opposing observation, so its correlation carries the
    other sample's size.
    """
    n, m = X.shape[0], Y.shape[0]
    rx = lag_grade_correlations(X, bandwidth)
    ry = lag_grade_correlations(Y, bandwidth)
    return (m * rx + n * ry) / (m + n)


def tau_from_matrix(X: np.ndarray, bandwidth: int | None = None) -> TauEstimate:
    """One-sample rank-correlation long-run variance from a data matrix."""
    p = X.shape[1]
    b = _resolve_bandwidth(p, bandwidth)
    return rank_correlation_lrv(lag_grade_correlations(X, b), b, p)


def tau_from_matrices(
    X: np.ndarray, Y: np.ndarray, bandwidth: int | None = None
) -> TauEstimate:
    """Two-sample rank-correlation long-run variance from both matrices."""
    p = X.shape[1]
    b = _resolve_bandwidth(p, bandwidth)
    return rank_correlation_lrv(combined_lag_grade_correlations(X, Y, b), b, p)
