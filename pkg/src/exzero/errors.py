"""Exception hierarchy shared by every module."""


class ExzeroError(Exception):
    pass


class PrecisionError(ExzeroError):
    """Requested p-adic precision cannot be reached from the inputs."""

    def __init__(self, message, achievable=None):
        super().__init__(message)
        self.achievable = achievable


class BudgetError(PrecisionError):
    """A truncation/interpolation budget cannot certify the requested digits."""

    def __init__(self, message, required=None, achievable=None):
        super().__init__(message, achievable=achievable)
        self.required = required


class UndeterminedError(PrecisionError):
    pass


class UnitRequiredError(ExzeroError, ValueError):
    pass


class NonIntegralError(ExzeroError, ValueError):
    pass


class LevelError(ExzeroError, ValueError):
    pass


class InvalidAutomorphismError(ExzeroError, ValueError):
    pass


class PoleError(ExzeroError, ZeroDivisionError):
    pass


class PrimitivityError(ExzeroError, ValueError):
    pass


class ParityError(ExzeroError, ValueError):
    pass


class HypothesisError(ExzeroError, ValueError):
    """Input violates a standing hypothesis (exceptionality, p ∤ Nφ(N), ...)."""

    def __init__(self, message, reason=None):
        super().__init__(message)
        self.reason = reason


class DomainError(ExzeroError, ValueError):
    pass
