"""Exception types raised across the package."""


class InvalidInputError(ValueError):
    """An argument violates an operation's precondition (bad mode, length, range)."""


class NormalizationError(ValueError):
    """Raised when asked to normalize a state of zero norm."""


class PreconditionError(RuntimeError):
    """An analysis was requested on a code that does not satisfy its requirements."""


class UnknownCodeError(KeyError):
    """Lookup of a code label that is not in the library."""
