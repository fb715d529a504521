"""Exception hierarchy shared by every module."""


class CoincidenceError(Exception):
    """Base class for all errors raised by the package."""


class NotInvertible(CoincidenceError):
    pass


class BadModulus(CoincidenceError):
    pass


class GroupTooLarge(CoincidenceError):
    pass


class NotNormal(CoincidenceError):
    pass


class NotAbelianQuotient(CoincidenceError):
    pass


class SearchBudgetExceeded(CoincidenceError):
    pass


class InternalInconsistency(CoincidenceError):
    """A computed object violated an identity that must hold."""


class NotLarge(CoincidenceError):
    pass


class MalformedRecord(CoincidenceError):
    pass


class Pole(CoincidenceError):
    pass
