"""Exception hierarchy. Every error carries a stable ``code`` string."""
from __future__ import annotations


class MatDresError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class DivisionByZero(MatDresError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class SingularMatrix(MatDresError):
    code = "SINGULAR_MATRIX"


class DimensionMismatch(MatDresError):
    code = "DIMENSION_MISMATCH"


class WrongOrder(MatDresError):
    code = "WRONG_ORDER"


class SingularLeadingCoefficient(MatDresError):
    code = "SINGULAR_LEADING_COEFFICIENT"


class NoncommutingArguments(MatDresError):
    code = "NONCOMMUTING_ARGUMENTS"


class NoncommutingPair(MatDresError):
    code = "NONCOMMUTING_PAIR"


class NonconstantCoefficients(MatDresError):
    code = "NONCONSTANT_COEFFICIENTS"


class UnsupportedFactorization(MatDresError):
    code = "UNSUPPORTED_FACTORIZATION"


class InvalidUserFactorization(MatDresError):
    code = "INVALID_USER_FACTORIZATION"


class JointMinimalityFailure(MatDresError):
    code = "JOINT_MINIMALITY_FAILURE"


class ConjectureViolation(MatDresError):
    """``f(L, B)`` is not the zero operator; ``operator`` holds the residue."""

    code = "CONJECTURE_VIOLATION"

    def __init__(self, message: str, operator=None, report=None):
        super().__init__(message)
        self.operator = operator
        self.report = report


class ZeroDenominatorEntry(MatDresError):
    code = "ZERO_DENOMINATOR_ENTRY"


class NotAKNSShape(MatDresError):
    code = "NOT_AKNS_SHAPE"


class ConfigError(MatDresError):
    """Parse or validation failure, with 1-based line/column when known."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, line: int | None = None, col: int | None = None, code: str | None = None):
        if code:
            self.code = code
        loc = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{self.code}: {message}{loc}")
        self.line = line
        self.col = col
