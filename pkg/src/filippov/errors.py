"""Exception types shared across the package."""

from __future__ import annotations


class FilippovError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(FilippovError, ZeroDivisionError):
    pass


class Pole(FilippovError, ArithmeticError):
    """Raised by ``limit_at_zero`` when the function has a pole at t = 0."""

    def __init__(self, order: int):
        super().__init__(f"pole of order {order} at t = 0")
        self.order = order


class MissingVariable(FilippovError, KeyError):
    pass


class LiteralSyntaxError(FilippovError, ValueError):
    pass


class IndexOutOfRange(FilippovError, IndexError):
    pass


class DimensionMismatch(FilippovError, ValueError):
    pass


class WrongDimension(FilippovError, ValueError):
    pass


class SingularMatrix(FilippovError, ArithmeticError):
    pass


class InvalidT(FilippovError, ValueError):
    pass


class SymbolicBlowup(FilippovError, RuntimeError):
    def __init__(self, terms: int, budget: int):
        super().__init__(f"expansion reached {terms} terms (budget {budget})")
        self.terms = terms
        self.budget = budget


class InvalidId(FilippovError, ValueError):
    pass


class ConstraintViolated(FilippovError, ValueError):
    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class SingularBasis(FilippovError, ArithmeticError):
    pass


class IncompleteClassification(FilippovError, RuntimeError):
    def __init__(self, pairs):
        self.pairs = sorted(pairs)
        super().__init__(f"{len(self.pairs)} unclassified pairs: {self.pairs[:10]}")


class InconsistentAutomorphismCheck(FilippovError, AssertionError):
    pass


class MalformedInput(FilippovError, ValueError):
    """A JSON document or command-line value does not follow the expected format."""
