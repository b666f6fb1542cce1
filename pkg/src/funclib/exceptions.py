class FuncExprError(ValueError):
    """Base class for errors in multiplicative function expressions."""


class UnknownLeaf(FuncExprError):
    pass


class InvalidLeafParameter(FuncExprError):
    pass


class ExpressionSyntaxError(FuncExprError):
    """Raised by the expression parser; ``position`` is the offending column."""

    def __init__(self, message, text='', position=None):
        if position is not None:
            message = f"{message} at column {position + 1} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class ValueOutOfRange(FuncExprError):
    """An argument lies beyond the smallest-prime-factor table."""
