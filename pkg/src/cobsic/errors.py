"""Exception hierarchy shared by all cobsic modules."""


class CobsicError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(CobsicError):
    """Operator dimensions are incompatible or below the supported minimum."""


class InvalidOperatorError(CobsicError):
    """An operator violates a structural requirement (e.g. not Hermitian)."""


class RankDeficientError(CobsicError):
    """An input sequence is linearly dependent beyond tolerance."""


class CountError(CobsicError):
    """A collection has the wrong number of elements for its role."""


class ValidationFailure(CobsicError):
    """A set of operators violates its defining constraints.

    ``violations`` maps constraint names to their worst observed deviation.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = dict(violations or {})


class UnsupportedDimensionError(CobsicError):
    """The requested construction is not available in this dimension."""


class ConstraintError(CobsicError):
    """A construction ingredient fails its precondition."""


class LambdaRangeError(CobsicError):
    """Mixing weight outside the admissible interval (0, lambda*]."""


class DegenerateGsicError(CobsicError):
    """Symmetry constants sit at the non-informationally-complete boundary."""


class NotInformationallyCompleteError(CobsicError):
    """The POVM does not span the operator space."""


class InvalidStateError(CobsicError):
    """Input is not a valid density matrix / probability vector."""


class RangeError(CobsicError):
    """Scalar argument outside its admissible range."""


class DegenerateElementError(CobsicError):
    """A POVM element is degenerate (e.g. has zero trace)."""


class NotFiducialError(CobsicError):
    """An operator fails the fiducial conditions for a covariant orbit.

    ``residuals`` maps condition labels to their deviations.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})


class ParseError(CobsicError):
    """An operator-set file cannot be parsed.

    ``location`` is a human-readable position (line/column or JSON path).
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
