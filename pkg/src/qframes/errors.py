"""Exception types raised across the package."""


class QFramesError(Exception):
    """Base class for all package errors."""


class DimensionError(QFramesError, ValueError):
    """Operand shapes are incompatible."""


class StructureError(QFramesError, ValueError):
    """A complex matrix is not in the image of the quaternionic embedding."""


class NotHermitianError(QFramesError, ValueError):
    pass


class PairingError(QFramesError, ArithmeticError):
    """Eigenvalues of a complex embedding could not be grouped into pairs."""


class RankError(QFramesError, ValueError):
    pass


class NegativeEigenvalueError(QFramesError, ValueError):
    pass


class SizeError(QFramesError, ValueError):
    """Input too large for an exhaustive computation."""


class NotAdmissibleError(QFramesError, ValueError):
    """No frame exists with the requested spectrum and norms."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class DegenerateDrawError(QFramesError, ArithmeticError):
    pass


class SpectrumMismatch(QFramesError, ValueError):
    """Two frames (or a frame and an operator) lie in different strata."""


class PathNotFound(QFramesError, RuntimeError):
    """The path heuristic gave up.

    This is a failure of the search, not evidence that no path exists: the
    strata are path-connected, so a path always exists.
    """
