"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Degenerate or inconsistent simplex / grid input."""


class ConditioningError(ArithmeticError):
    """A linear system was too close to singular to solve reliably.

    ``condition`` carries the 2-norm condition estimate when one was
    computed; ``degree`` and ``n`` identify the polynomial space for
    Vandermonde failures.
    """

    def __init__(self, message, condition=None, degree=None, n=None):
        super().__init__(message)
        self.condition = condition
        self.degree = degree
        self.n = n


class AdmissibilityError(ValueError):
    """The step size lies outside the range where the error bound applies."""

    def __init__(self, message, delta0=None):
        super().__init__(message)
        self.delta0 = delta0


class ConfigError(ValueError):
    """Malformed experiment configuration."""
