"""Exception hierarchy shared by every module of the package."""


class AppellError(Exception):
    """Base class for all errors raised by :mod:`discrete_appell`."""


class PoleError(AppellError, ZeroDivisionError):
    """A gamma function or a denominator Pochhammer symbol hit a pole."""


class ShiftPoleError(PoleError):
    """A parameter shift moved ``c`` onto a nonpositive integer."""


class ValidityError(AppellError, ValueError):
    """Parameters violate the validity constraints of an identity or representation."""


class DivergenceDetected(AppellError, ArithmeticError):
    """The lattice terms grow without bound.

    Attributes
    ----------
    diagonals : int
        Number of anti-diagonals inspected before the diagnostic fired.
    partial : complex
        Partial sum at the moment of detection.
    growth : list of float
        The last few anti-diagonal growth ratios.
    """

    def __init__(self, message, diagonals=0, partial=0j, growth=()):
        super().__init__(message)
        self.diagonals = diagonals
        self.partial = partial
        self.growth = list(growth)
