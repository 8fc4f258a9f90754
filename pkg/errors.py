"""Exceptions raised by the Cayley-Dickson engine."""


class CayleyDicksonError(Exception):
    """Base class for every error raised by this package."""


class LevelError(CayleyDicksonError, ValueError):
    """Operands live at different levels, or the level is unsupported."""


class IndexOutOfRangeError(CayleyDicksonError, IndexError):
    pass


class ParseError(CayleyDicksonError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroElementError(CayleyDicksonError, ZeroDivisionError):
    pass


class PreconditionError(CayleyDicksonError, ValueError):
    pass


class NotSymmetricError(CayleyDicksonError, ValueError):
    pass


class EigenSolverError(CayleyDicksonError, ArithmeticError):
    pass


class NoSolutionError(CayleyDicksonError, ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SubalgebraError(CayleyDicksonError, RuntimeError):
    pass


class ConstructionError(CayleyDicksonError, ArithmeticError):
    """A constructed eigenvector or element failed its residual check."""
