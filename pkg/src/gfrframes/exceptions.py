"""Exception types raised by gfrframes."""


class GFRFramesError(Exception):
    """Base class for all library errors."""


class GraphError(GFRFramesError, ValueError):
    """Invalid graph input or unsupported generator request."""


class DegenerateDegreeError(GraphError):
    """A vertex has zero degree where a normalized operator was requested."""


class DimensionError(GFRFramesError, ValueError):
    """Array shapes do not match the graph or basis."""


class DecompositionError(GFRFramesError, ArithmeticError):
    """An eigendecomposition failed its residual check."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularFrameError(GFRFramesError, ArithmeticError):
    """The frame vector has (numerically) vanishing entries."""


class NotDualError(GFRFramesError, ArithmeticError):
    """Two window sets fail the dual-window condition."""

    def __init__(self, message, max_deviation):
        super().__init__(message)
        self.max_deviation = max_deviation
