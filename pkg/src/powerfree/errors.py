"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PowerfreeError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedDegreeError(PowerfreeError, ValueError):
    pass


class InvariantViolation(PowerfreeError, ValueError):
    pass


class ShapeError(PowerfreeError, ValueError):
    """Two rate vectors do not share a label set."""


class EmptyModelError(PowerfreeError, ValueError):
    pass


class ModelTooLargeError(PowerfreeError, ValueError):
    pass


class DomainError(PowerfreeError, ValueError):
    pass


class InternalInconsistency(PowerfreeError, RuntimeError):
    """Two independent evaluations of the same quantity disagree."""


class InvalidInputError(PowerfreeError, ValueError):
    pass


class InvalidPrimeError(PowerfreeError, ValueError):
    pass


class InvalidFormError(PowerfreeError, ValueError):
    pass


class UnsupportedInputError(PowerfreeError, ValueError):
    pass


class ParseError(PowerfreeError, ValueError):
    """Syntax error in a polynomial expression.

    ``offset`` is the 0-based byte offset where parsing failed.
    """

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class OutOfRangeError(PowerfreeError, ValueError):
    pass
