"""Exception taxonomy shared by the whole package."""


class FinHankelError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FinHankelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma function evaluated at a nonpositive integer."""


class IncompatibleLadderError(FinHankelError):
    """Term exponents do not differ from the minimal one by nonnegative integers,
    so no single power ladder describes the profile near the origin."""


class ExponentCollisionError(FinHankelError):
    """Two distinct boundary exponents share a real part; the expansion cannot be
    ordered by strictly increasing real parts."""


class NotApplicableError(FinHankelError):
    """Requested expansion does not exist for this profile (e.g. boundary data
    of a profile declared identically zero near the support edge)."""


class ZeroLadderError(FinHankelError):
    """Every collected expansion coefficient vanished; there is no leading term
    to normalise against."""


class SmoothnessBudgetError(FinHankelError):
    """A differentiation order exceeds what the boundary exponents allow."""


class HypothesisError(FinHankelError):
    """An explicit hypothesis of the operation is violated by the inputs."""


class EmptyPredictionError(FinHankelError):
    """Dominance comparison requested on a prediction with no terms."""


class RuleViolationError(FinHankelError):
    """A certificate combination rule received children it does not accept."""


class ProfileFormatError(FinHankelError, ValueError):
    """Profile JSON is malformed or violates the schema."""
