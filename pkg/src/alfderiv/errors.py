"""Exception hierarchy shared by every module."""


class AlfError(Exception):
    """Base class for all errors raised by alfderiv."""


class DomainError(AlfError, ValueError):
    """An argument lies outside the domain of the requested function."""


class PoleError(DomainError):
    """A gamma (or derived) prefactor is evaluated at one of its poles.

    ``argument`` holds the offending gamma argument when it is known.
    """

    def __init__(self, message, argument=None):
        super().__init__(message)
        self.argument = argument


class StencilPoleError(PoleError):
    """A finite-difference stencil crosses a pole of the differentiated function."""


class ConstraintError(DomainError):
    """A convergence inequality of an integral representation is violated.

    ``constraint`` is the human-readable inequality that failed, for example
    ``"Re z > 1"``.
    """

    def __init__(self, message, constraint):
        super().__init__(message)
        self.constraint = constraint


class RegionError(ConstraintError):
    """``z`` lies outside the region ``Re f(z) > 1`` bounded by the boundary curve."""


class ConvergenceError(AlfError, ArithmeticError):
    """An iterative or adaptive procedure exhausted its budget.

    ``partial`` carries the best result obtained so far (a
    :class:`~alfderiv.quadrature.QuadratureResult` or a plain estimate).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
