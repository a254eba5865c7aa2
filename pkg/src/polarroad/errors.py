"""Exception hierarchy shared by all modules."""


class PolarRoadError(Exception):
    """Base class for all package errors."""


class ParseError(PolarRoadError, ValueError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class RingMismatchError(PolarRoadError, ValueError):
    pass


class ResourceLimitError(PolarRoadError):
    """A configured budget (pairs, polynomial size) was exceeded. Not a mathematical failure."""


class NotZeroDimensionalError(PolarRoadError, ValueError):
    pass


class PositiveDimensionalError(PolarRoadError):
    """The sample-point system has positive dimension; unsupported here."""

    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class UnsupportedShapeError(PolarRoadError, ValueError):
    pass
