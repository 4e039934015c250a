"""Shared exception types.

Numeric failures carry the best value computed so far, so callers (and the
CLI) can report partial results instead of losing the run.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ShapeError(ValueError):
    """Grid or sample input with the wrong structure (unsorted, nonuniform...)."""


class ParameterError(ValueError):
    """Family parameters outside their valid range."""


class UnsupportedError(RuntimeError):
    """Operation not available for this entry (missing closed form or sampler)."""


class ValidationError(RuntimeError):
    """A supplied closed form failed its numeric cross-check."""


class QuadratureError(RuntimeError):
    """Numeric integration did not reach the requested tolerance.

    Attributes:
        partial_value: the best integral value obtained.
        err_estimate:  the quadrature error estimate at abort.
    """

    def __init__(self, message, partial_value=None, err_estimate=None):
        super().__init__(message)
        self.partial_value = partial_value
        self.err_estimate = err_estimate


class NonconvergenceError(RuntimeError):
    """An iterative scheme hit its cap before stabilizing.

    Attributes:
        best_value: value at the cap.
        gap:        last stabilization gap.
        n_terms:    iteration count at the cap.
    """

    def __init__(self, message, best_value=None, gap=None, n_terms=None):
        super().__init__(message)
        self.best_value = best_value
        self.gap = gap
        self.n_terms = n_terms


class ConsistencyError(RuntimeError):
    """Two independent computation routes disagree beyond tolerance."""
