"""Exception hierarchy shared by every fictio module."""


class FictioError(Exception):
    """Base class for all library errors."""


class DomainError(FictioError, ValueError):
    """The operation has no value in the requested number system."""


class PrecisionExhausted(FictioError, ArithmeticError):
    """Cancellation consumed every guaranteed coefficient."""


class UnboundedQuantity(DomainError):
    """Standard part requested for an infinite quantity."""


class DegreeError(DomainError):
    """Leading coefficient is zero, so the polynomial is not of the stated degree."""


class NotFound(FictioError, LookupError):
    """A bounded search finished without a hit."""


class QuadratureError(FictioError, ArithmeticError):
    pass


class ExprSyntaxError(FictioError, SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariable(FictioError, NameError):
    pass
