"""Exception hierarchy shared by every thomcalc module."""
from typing import Optional


class ThomcalcError(Exception):
    """Base class for all thomcalc errors."""


class PresentationError(ThomcalcError, ValueError):
    """A ring presentation is malformed (inhomogeneous relation, bad generator degree)."""


class CoefficientError(ThomcalcError, ValueError):
    """The coefficient modulus is not a prime."""


class UsageError(ThomcalcError, ValueError):
    """An operation was called outside its preconditions."""


class ContractViolation(UsageError):
    """An operation series has a nonzero constant term."""


class UnresolvedName(UsageError):
    """A workspace, generator or bundle name does not resolve."""


class NotInvertible(ThomcalcError, ArithmeticError):
    """A power series with non-unit constant term was inverted."""


class NotWellDefined(NotInvertible):
    """The operation has no Todd genus: its inverse Todd series is not a unit."""


class ParseError(ThomcalcError, ValueError):
    """Expression syntax error at a byte offset of the source text."""

    def __init__(self, message: str, source: str = "", offset: Optional[int] = None):
        self.message = message
        self.source = source
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")

    def highlight(self) -> str:
        """Render the source with a caret under the offending offset."""
        if self.offset is None:
            return self.source
        # offsets are byte offsets; map back to a character column
        column = len(self.source.encode()[:self.offset].decode(errors="ignore"))
        return f"{self.source}\n{' ' * column}^"
