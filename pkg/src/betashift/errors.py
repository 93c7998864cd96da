"""Exception hierarchy shared by every module.

Each class maps to a distinct command-line exit code (see ``betashift.cli``).
"""


class BetaShiftError(Exception):
    """Base class for all library errors."""


class DomainError(BetaShiftError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergenceError(BetaShiftError, ArithmeticError):
    """A series could not be shown to converge (tail guard failed)."""


class ConsistencyError(BetaShiftError, ArithmeticError):
    """A computed quantity violated an internal identity it must satisfy."""


class UnsupportedError(BetaShiftError):
    """The requested operation needs structure the input does not have."""


class RangeError(BetaShiftError, ValueError):
    """A root could not be bracketed within the configured parameter cap."""


class SizeError(BetaShiftError, MemoryError):
    """A brute-force enumeration was asked to exceed its size guard."""
