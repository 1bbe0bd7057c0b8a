"""Exception hierarchy shared by every module."""


class StabClassError(Exception):
    """Base class for all package errors."""


class RingMismatchError(StabClassError, ValueError):
    """Operands live over different moduli or numbers of variables."""


class ExponentOverflowError(StabClassError, OverflowError):
    pass


class ResourceLimitError(StabClassError):
    """A configured computational bound (S-pairs, degree, torus size) was hit."""


class PreconditionError(StabClassError, ValueError):
    """An operation was called on an input that violates its precondition."""


class NotPoincareError(StabClassError, ValueError):
    pass


class FormatError(StabClassError, ValueError):
    """Malformed input file or unknown field."""
