"""Exception and warning types shared across the package."""


class ValidationError(ValueError):
    """Input data is malformed: non-finite entries, wrong shape, ragged rows."""


class DomainError(ValueError):
    """A parameter is outside the domain a method is defined on."""


class NumericalError(RuntimeError):
    """A numerical routine failed to reach its accuracy target."""


class TiesWarning(UserWarning):
    """Tied or zero observations met a statistic derived for continuous data."""
