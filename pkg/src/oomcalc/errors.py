"""Exception types raised across the package."""

from __future__ import annotations


class ZeroDenominator(ZeroDivisionError):
    """A rational function was constructed with the zero polynomial below."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by the zero value."""


class PoleAtPoint(ZeroDivisionError):
    """Evaluation at a point where the denominator vanishes."""


class ZeroValue(ValueError):
    """An operation that needs a nonzero value received zero."""


class NotInvertible(ZeroDivisionError):
    """Inverse of a sign-zero order-of-magnitude value."""


class ParseError(ValueError):
    """Malformed expression text; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonLinearFormula(ValueError):
    """A symbol index would occur more than once in one formula."""


class MissingSymbol(KeyError):
    """An instantiation does not cover a symbol of the formula."""


class ZeroInSet(ZeroDivisionError):
    """Pointwise inverse of a finite set containing zero."""


class UndefinedOperand(ValueError):
    """A harness was asked to compare an undefined evaluation."""


class UnknownOutcome(KeyError):
    """An event mentions a label outside the outcome space."""


class ConditionImpossible(ValueError):
    """Conditioning on an event of infinite rank."""


class ConditionNotInvertible(ValueError):
    """Conditioning on an event whose probability has sign zero."""


class InvalidDistribution(ValueError):
    """Atom values do not form an exact probability distribution."""


class SchemaError(ValueError):
    """A problem document violates its schema; ``path`` locates the field."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
