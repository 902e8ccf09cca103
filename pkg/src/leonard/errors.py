"""Exception hierarchy shared by every module."""


class LeonardError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "error"


class InvalidField(LeonardError, ValueError):
    kind = "InvalidField"


class FieldMismatch(LeonardError, TypeError):
    kind = "FieldMismatch"


class NoRootInField(LeonardError):
    kind = "NoRootInField"


class FieldTooLarge(LeonardError):
    kind = "FieldTooLarge"


class LengthMismatch(LeonardError, ValueError):
    kind = "LengthMismatch"


class TypeFieldMismatch(LeonardError, ValueError):
    kind = "TypeFieldMismatch"


class FitInconsistent(LeonardError, AssertionError):
    kind = "FitInconsistent"


class DegenerateQ(LeonardError, ZeroDivisionError):
    kind = "DegenerateQ"


class NoValidArray(LeonardError):
    """The reconstructed sequence is not a parameter array.

    ``condition`` and ``index`` name the first violated condition.
    """

    kind = "NoValidArray"

    def __init__(self, message, condition=None, index=None):
        super().__init__(message)
        self.condition = condition
        self.index = index


class NoSpecialCase(LeonardError):
    kind = "NoSpecialCase"


class BudgetExhausted(LeonardError):
    kind = "BudgetExhausted"


class SearchExhausted(LeonardError):
    kind = "SearchExhausted"


class InvalidEndParameters(LeonardError, ValueError):
    kind = "InvalidEndParameters"


class SchemaError(LeonardError, ValueError):
    """Input JSON does not match the expected shape."""

    kind = "SchemaError"
