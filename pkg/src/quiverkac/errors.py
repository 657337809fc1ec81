"""Exception hierarchy shared across the package."""


class QuiverKacError(Exception):
    """Base class for all errors raised by quiverkac."""


class SchemaError(QuiverKacError, ValueError):
    """Malformed input: unknown ids, mismatched vertex sets, bad JSON shape."""


class DomainError(QuiverKacError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ResourceError(QuiverKacError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class ConsistencyError(QuiverKacError):
    """An internal cross-check failed; indicates a bug or a misreading."""


class NonIntegerCoefficients(ConsistencyError):
    pass


class SurplusMismatch(ConsistencyError):
    pass


class NotMonic(ConsistencyError):
    pass


class WrongDegree(ConsistencyError):
    pass


class NotOrientationInvariant(ConsistencyError):
    pass


class NotChoiceInvariant(ConsistencyError):
    pass
