class PolynomialError(ArithmeticError):
    """Base class for errors raised by F_p[X] / F_p(X) arithmetic."""


class ModulusMismatch(PolynomialError, ValueError):
    pass


class InexactDivision(PolynomialError):
    """A division that was required to be exact left a remainder."""


class ZeroDenominator(PolynomialError, ZeroDivisionError):
    pass
