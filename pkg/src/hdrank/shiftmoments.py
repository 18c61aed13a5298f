"""Analytic moments of the rank statistics under location shifts.

These closed forms express the mean and variance of the signed-rank sum
and the Mann-Whitney count through pairwise ordering probabilities of the
shifted marginal, evaluated by adaptive quadrature.  With zero shift they
reduce exactly to the null moments, which the test suite verifies; under
shifts they serve as an independent cross-check of the simulated
statistics.

A ``marginal`` is any object with ``cdf``, ``pdf`` and ``ppf`` methods for
the centered, symmetric noise distribution - a frozen ``scipy.stats``
distribution such as ``scipy.stats.norm()`` or ``scipy.stats.t(3)`` works
directly.
"""

from __future__ import annotations

from scipy.integrate import quad

from .errors import DomainError, NumericalError
from .ranks import MomentPair, _require_size

TAIL_EPS = 1e-12
QUAD_TOL = 1e-8


def _integrate(func, lo: float, hi: float) -> float:
    res = quad(func, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200, full_output=1)
    value, abserr = res[0], res[1]
    if len(res) > 3 or abserr > QUAD_TOL:
        raise NumericalError(
            f"quadrature did not reach the {QUAD_TOL:g} tolerance "
            f"(reported error {abserr:g})"
        )
    return value


def _support(marginal) -> tuple[float, float]:
    lo, hi = marginal.ppf(TAIL_EPS), marginal.ppf(1.0 - TAIL_EPS)
    if not (lo < hi):
        raise DomainError("marginal quantiles do not define a valid support")
    return float(lo), float(hi)


def shifted_signed_rank_moments(n: int, mu: float, marginal) -> MomentPair:
    """Mean and variance of the signed-rank sum when the data are shifted by mu.

    Uses the Walsh-pair decomposition: the statistic counts the pairs
    i <= j with x_i + x_j > 0, so its moments are polynomials in
    p1 = P(X > 0), p2 = P(X1 + X2 > 0), p3 = P(X1 > 0, X1 + X2 > 0) and
    p4 = P(X1 + X2 > 0, X1 + X3 > 0).  p3 is (p1^2 + p2)/2 exactly by an
    inclusion-exclusion identity.
    """
    _require_size(n, "n")
    lo, hi = _support(marginal)
    F, f = marginal.cdf, marginal.pdf
    p1 = float(F(mu))
    p2 = _integrate(lambda x: F(2.0 * mu + x) * f(x), lo, hi)
    p3 = (p1 * p1 + p2) / 2.0
    p4 = _integrate(lambda x: F(2.0 * mu + x) ** 2 * f(x), lo, hi)
    mean = n * (n - 1) * p2 / 2.0 + n * p1
    var = (
        n * p1 * (1.0 - p1)
        + n * (n - 1) / 2.0 * p2 * (1.0 - p2)
        + 2.0 * n * (n - 1) * (p3 - p1 * p2)
        + n * (n - 1) * (n - 2) * (p4 - p2 * p2)
    )
    return MomentPair(mean, var)


def shifted_mann_whitney_moments(
    n: int, m: int, mu1: float, mu2: float, marginal
) -> MomentPair:
    """Mean and variance of the Mann-Whitney count under shifted samples.

    The count sums indicators of X_i > Y_j with X shifted by mu1 and Y by
    mu2.  Writing q1 = P(X > Y), the pairs sharing the same X contribute
    through q_xx = P(X > Y1, X > Y2) with multiplicity n*m*(m-1), and the
    pairs sharing the same Y through q_yy = P(X1 > Y, X2 > Y) with
    multiplicity m*n*(n-1); the pairing is checked against exhaustive
    enumeration in the tests.  Swapping mu1 and mu2 maps the mean to
    n*m minus itself.
    """
    _require_size(n, "n")
    _require_size(m, "m")
    lo, hi = _support(marginal)
    F, f = marginal.cdf, marginal.pdf
    d = mu1 - mu2
    q1 = _integrate(lambda u: F(u + d) * f(u), lo, hi)
    q_xx = _integrate(lambda u: F(u + d) ** 2 * f(u), lo, hi)
    q_yy = _integrate(lambda v: (1.0 - F(v - d)) ** 2 * f(v), lo, hi)
    mean = m * n * q1
    var = (
        m * n * q1 * (1.0 - q1)
        + m * n * (n - 1) * (q_yy - q1 * q1)
        + n * m * (m - 1) * (q_xx - q1 * q1)
    )
    return MomentPair(mean, var)
