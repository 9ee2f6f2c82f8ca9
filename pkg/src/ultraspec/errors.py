"""Exception hierarchy shared by every ultraspec module."""


class UltraspecError(Exception):
    """Base class for all toolkit errors."""


class ParseError(UltraspecError, ValueError):
    pass


class PrimeMismatch(UltraspecError, ValueError):
    pass


class DivisionByZero(UltraspecError, ZeroDivisionError):
    pass


class DimensionError(UltraspecError, ValueError):
    pass


class SingularMatrix(UltraspecError, ArithmeticError):
    pass


class SingularPencil(UltraspecError, ArithmeticError):
    """det(A - lambda*M) vanishes identically."""


class SingularStructure(UltraspecError, ArithmeticError):
    """A structure matrix B or C is singular where invertibility is required."""


class CommutativityViolated(UltraspecError, ValueError):
    pass


class NotInPseudoRegion(UltraspecError, ValueError):
    pass


class HenselConditionFailed(UltraspecError, ArithmeticError):
    def __init__(self, message, derivative_abs=None):
        super().__init__(message)
        self.derivative_abs = derivative_abs


class ZeroVector(UltraspecError, ValueError):
    pass
