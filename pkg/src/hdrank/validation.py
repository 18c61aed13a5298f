"""Input validation helpers for data matrices and vectors."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def validate_vector(values, name: str = "values") -> np.ndarray:
    """Coerce to a 1-D float array and reject empty or non-finite input."""
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        x = x.reshape(-1)
    if x.size == 0:
        raise ValidationError(f"{name} must contain at least one value")
    bad = ~np.isfinite(x)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ValidationError(f"{name} has a non-finite entry at position {i + 1}")
    return x


def validate_matrix(data, name: str = "X") -> np.ndarray:
    """Coerce to an n-by-p float matrix of samples (rows) by coordinates.

    Requires n >= 2 rows, p >= 1 columns, and all entries finite.
    """
    try:
        X = np.asarray(data, dtype=float)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"{name} must be a rectangular numeric matrix: {exc}") from None
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValidationError(f"{name} must be a two-dimensional matrix")
    n, p = X.shape
    if n < 2:
        raise ValidationError(f"{name} needs at least 2 rows (samples), got {n}")
    if p < 1:
        raise ValidationError(f"{name} needs at least 1 column")
    bad = ~np.isfinite(X)
    if bad.any():
        i, j = (int(v[0]) for v in np.nonzero(bad))
        raise ValidationError(
            f"{name} has a non-finite entry at row {i + 1}, column {j + 1}"
        )
    return X
