"""Exception hierarchy shared by every fenwick module."""


class FenwickError(Exception):
    """Base class for all errors raised by the fenwick package"""


class RangeError(FenwickError, ValueError):
    """A value lies outside the range an operation accepts"""


class OutOfRangeError(RangeError, IndexError):
    """A position, index or rank lies outside its domain"""


class UnderflowError(OutOfRangeError):
    """Removal from an empty tree or bit vector"""


class DomainError(FenwickError, ValueError):
    """A function was evaluated outside its mathematical domain"""


class ContractError(FenwickError, ValueError):
    """A structural precondition was violated (bounds, widths, alignment)"""


class FormatError(FenwickError, ValueError):
    """Malformed serialized data"""


class UsageError(FenwickError, ValueError):
    """Unknown variant, operation or option tag"""


class OutputError(FenwickError, OSError):
    """A result file could not be written or read"""
