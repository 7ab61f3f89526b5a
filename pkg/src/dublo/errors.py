"""Exception types shared across the package."""


class DubloError(Exception):
    """Base class for all dublo errors."""


class ParseError(DubloError, ValueError):
    """Input text or bytes could not be decoded (edge list, graph6, measure file)."""


class ValidationError(DubloError, ValueError):
    """Structurally invalid object: disconnected graph, self-loop, bad weights, ..."""


class SizeCapError(ValidationError):
    """Instance exceeds the configured vertex / search size cap."""


class SolverError(DubloError, RuntimeError):
    """Numerical solver breakdown, as opposed to a clean 'infeasible' answer."""
