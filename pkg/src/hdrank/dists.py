"""Limiting distributions and the two-term Cauchy p-value combination.

All survival functions are evaluated in complementary form so small
p-values keep full relative accuracy: the normal tail goes through erfc,
the Gumbel-type tail through expm1, and the Cauchy tail through
arctan(1/x).  The tangent transform of a p-value is computed from the
cotangent identity near 0 and 1, where the direct form loses precision.
"""

from __future__ import annotations

import math

from scipy.special import ndtr

from .errors import DomainError

P_CLAMP = 1e-15

_SQRT_PI = math.sqrt(math.pi)


def std_normal_cdf(x: float) -> float:
    """Standard normal c.d.f."""
    return float(ndtr(x))


def std_normal_sf(x: float) -> float:
    """Standard normal upper-tail probability with full relative accuracy."""
    return float(ndtr(-x))


def gumbel_type_cdf(y: float) -> float:
    """C.d.f. exp(-exp(-y/2)/sqrt(pi)) calibrating the max-type statistic."""
    a = _gumbel_exponent(y)
    return math.exp(-a) if a < 746.0 else 0.0


def gumbel_type_sf(y: float) -> float:
    """Upper tail of the max-type calibration law, accurate for large y."""
    a = _gumbel_exponent(y)
    return -math.expm1(-a) if a < 746.0 else 1.0


def _gumbel_exponent(y: float) -> float:
    half = -0.5 * y
    if half > 700.0:
        return math.inf
    return math.exp(half) / _SQRT_PI


def cauchy_sf(x: float) -> float:
    """Standard Cauchy upper-tail probability; arctan(1/x) form for x > 0."""
    if x > 0.0:
        return math.atan(1.0 / x) / math.pi
    return 0.5 - math.atan(x) / math.pi


def tan_half_shifted(p: float) -> float:
    """tan((0.5 - p)*pi) for p in (0, 1), stable near both endpoints."""
    if 0.25 <= p <= 0.75:
        return math.tan((0.5 - p) * math.pi)
    if p < 0.25:
        return 1.0 / math.tan(p * math.pi)
    return -1.0 / math.tan((1.0 - p) * math.pi)


def clamp_p(p: float) -> float:
    """Clamp a probability into [P_CLAMP, 1 - P_CLAMP]."""
    return min(max(p, P_CLAMP), 1.0 - P_CLAMP)


def cauchy_combine(p_a: float, p_b: float) -> float:
    """Combine two p-values by equal-weight Cauchy averaging.

    Returns the upper Cauchy tail of the mean of the two tangent
    transforms.  Inputs are clamped away from 0 and 1 first; values
    outside [0, 1] raise ``DomainError``.  The combination is symmetric,
    monotone in each argument, and returns p when both inputs equal p.
    """
    for label, p in (("first", p_a), ("second", p_b)):
        if not (0.0 <= p <= 1.0) or math.isnan(p):
            raise DomainError(f"{label} p-value must lie in [0, 1], got {p!r}")
    t = 0.5 * tan_half_shifted(clamp_p(p_a)) + 0.5 * tan_half_shifted(clamp_p(p_b))
    return cauchy_sf(t)
