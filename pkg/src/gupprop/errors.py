"""Exception hierarchy shared by the numerical modules."""


class GUPError(Exception):
    """Base class for all library errors."""


class InvalidParameters(GUPError, ValueError):
    """Physical or numerical parameters outside their admissible range."""


class CausticError(GUPError):
    """Evaluation too close to a caustic (sin(omega T) ~ 0)."""


class DomainError(GUPError, ValueError):
    """Argument outside the convergence domain of a formula."""


class NumericalFailure(GUPError, ArithmeticError):
    """An iterative method failed to converge within its budget."""


class NonConvergentConfiguration(GUPError, ValueError):
    """A configuration for which the requested sum cannot converge (e.g. tau = 0)."""


class SolverError(NumericalFailure):
    """The boundary-value root finder did not converge."""
