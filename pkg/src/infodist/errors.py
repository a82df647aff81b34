"""
Exception hierarchy shared by every module.

The CLI maps :class:`BudgetExceeded` to exit status 2 and every other
:class:`InfoDistError` to exit status 1.
"""


class InfoDistError(Exception):
    """
    Base class of all errors raised on purpose by infodist.
    """


class StructuralError(InfoDistError, ValueError):
    """
    Malformed dimensions, mismatched state sets, odd chain sizes,
    repeated indices where distinct ones are required, ...
    """


class ValidationError(StructuralError):
    """
    An input object violates one of the invariants of its type.
    The message always names the invariant.
    """


class ParseError(InfoDistError):
    """
    A JSON document could not be decoded.
    """


class BudgetExceeded(InfoDistError):
    """
    An exhaustive enumeration or an LP is larger than the configured budget.
    """


class CertificationError(InfoDistError):
    """
    A result failed its post-hoc exact certification.
    """
