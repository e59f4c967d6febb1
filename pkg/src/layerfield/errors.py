"""Exception types shared across the package."""


class LayerFieldError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(LayerFieldError):
    """Input violates a documented precondition or invariant."""


class ConvergenceError(LayerFieldError):
    """A tolerance could not be met within the configured term cap."""

    def __init__(self, message, achieved=None, terms=None):
        super().__init__(message)
        self.achieved = achieved
        self.terms = terms


class ArbiterInsufficientError(ConvergenceError):
    """Brute-force summation cannot reach the tail bound it needs."""


class CapabilityError(LayerFieldError):
    """Requested operation needs an oracle the representation lacks."""


class SolvabilityError(ValidationError):
    """Boundary data violates a solvability constraint."""


class DivergentLinkError(ValidationError):
    """A boundary-link integral diverges for the given parameters."""


class EstimationError(LayerFieldError):
    """A numeric estimate failed to stabilise under refinement."""


class StencilError(ValidationError):
    """A finite-difference stencil left the evaluator's region."""


class UndersamplingError(ValidationError):
    """Too few boundary samples for the requested mode resolution."""


class WindowTooSmallError(ValidationError):
    """Trace window cannot meet the requested truncation tolerance."""

    def __init__(self, message, tail_bound=None):
        super().__init__(message)
        self.tail_bound = tail_bound


class CapacityError(LayerFieldError):
    """Requested index exceeds a precomputed table's capacity."""
