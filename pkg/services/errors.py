"""
Exception hierarchy shared by the library and the command line.

Every failure family carries its own exit code; main.py maps an uncaught
AlgebraError to that code and a one-line diagnostic.
"""


class AlgebraError(Exception):
    exit_code = 70
    code = "algebra_error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self):
        if not self.details:
            return self.message
        extra = ", ".join(f"{k}={v}" for k, v in sorted(self.details.items()))
        return f"{self.message} ({extra})"


class UsageError(AlgebraError):
    exit_code = 64
    code = "usage"


class SchemaError(AlgebraError):
    exit_code = 65
    code = "schema"


class InputNotFoundError(AlgebraError):
    exit_code = 66
    code = "input_not_found"


class DegreeMismatchError(AlgebraError):
    exit_code = 67
    code = "degree_mismatch"


class ClassCoordinateError(AlgebraError):
    exit_code = 68
    code = "class_coordinates"


class MalformedTableError(AlgebraError):
    exit_code = 69
    code = "malformed_table"


class InvalidStructureError(AlgebraError):
    exit_code = 70
    code = "invalid_structure"

    def __init__(self, message: str, violations=None, **details):
        super().__init__(message, **details)
        self.violations = list(violations or [])


class FiltrationError(AlgebraError):
    exit_code = 71
    code = "filtration"


class ParentMismatchError(AlgebraError):
    exit_code = 72
    code = "parent_mismatch"


class DimensionMismatchError(AlgebraError):
    exit_code = 73
    code = "dimension_mismatch"


class NotInSpanError(AlgebraError):
    exit_code = 74
    code = "not_in_span"


class NonDeformationError(AlgebraError):
    exit_code = 75
    code = "non_deformation"


class ClosednessViolation(AlgebraError):
    """A right-hand side that must be a cocycle is not one (exact values)."""

    exit_code = 76
    code = "closedness_violation"
