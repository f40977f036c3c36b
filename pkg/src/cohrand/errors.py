"""Exception types shared across the package."""


class CohrandError(Exception):
    """Base class for all package errors."""


class StateValidationError(CohrandError):
    """A raw matrix or vector failed a state invariant."""


class NotHermitian(StateValidationError):
    pass


class TraceNotOne(StateValidationError):
    pass


class NotPSD(StateValidationError):
    pass


class DimensionNot2(CohrandError):
    """Operation defined for qubits only."""


class DimensionMismatch(CohrandError):
    pass


class NotIsometry(CohrandError):
    pass


class RankMismatch(CohrandError):
    pass


class NotAPartition(CohrandError):
    pass


class NonExactMeasure(CohrandError):
    """The requested measure is only an upper estimate and cannot back an
    exact inequality check."""


class TooLarge(CohrandError):
    """Requested problem size exceeds the configured memory bound."""


class RateOutOfRange(CohrandError):
    pass
