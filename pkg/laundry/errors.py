"""
Exception hierarchy for the laundry package.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Iterable, Optional, Tuple


class LaundryError(Exception):
    """Base class for all laundry errors"""
    pass


class InputFormatError(LaundryError):
    """Malformed text input, located by line and column (both 1-based)"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class BraidParseError(InputFormatError):
    """Braid word text does not match `<n>: <signed integers>`"""
    pass


class MatrixFormatError(InputFormatError):
    """Matrix or chord-diagram text is malformed"""
    pass


class MoveFormatError(InputFormatError):
    """Move specification string is malformed"""
    pass


class InvalidMatrixError(LaundryError):
    """Matrix is not a linking matrix of any braid diagram"""

    def __init__(self, violations: Iterable[str]):
        self.violations: Tuple[str, ...] = tuple(violations)
        super().__init__("invalid linking matrix: " + "; ".join(self.violations))


class PatternNotFoundError(LaundryError):
    """A move's pattern is absent or its parameters are out of range"""
    pass


class InconsistentCertificateError(LaundryError):
    """Chord diagram, matrix and turns of a certificate do not fit together"""
    pass


class InternalVerificationError(LaundryError):
    """An internal consistency check failed; this is always a bug"""
    pass


def locate(text: str, offset: int) -> Tuple[int, int]:
    """Translate a character offset in text into a (line, column) pair."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column
