"""Exception hierarchy shared by every fdehat module."""


class FdeHatError(Exception):
    """Base class for all library errors."""


class DomainError(FdeHatError, ValueError):
    """An argument lies outside the domain the operation is defined on."""


class ParityError(DomainError):
    """Modified hat functions were requested on an odd number of subintervals."""


class DimensionError(FdeHatError, ValueError):
    """Array shapes do not agree with the grid or problem size."""


class ConfigurationError(FdeHatError, ValueError):
    """Inputs are individually valid but inconsistent with each other."""


class NumericalError(FdeHatError, ArithmeticError):
    """A nonlinear solve failed.

    ``best`` and ``residual_norm`` describe the best iterate seen. ``block``
    and ``t`` are filled in by the cascade solver when the failure happens
    inside one of its blocks.
    """

    def __init__(self, message, best=None, residual_norm=None, block=None, t=None):
        super().__init__(message)
        self.best = best
        self.residual_norm = residual_norm
        self.block = block
        self.t = t

    def __str__(self):
        msg = super().__str__()
        if self.block is not None:
            msg = f"block {self.block} (t={self.t:g}): {msg}"
        return msg


class ConvergenceError(NumericalError):
    """Newton iteration stopped without meeting the residual tolerance."""


class SingularJacobianError(NumericalError):
    """A pivot fell below the relative threshold during the Newton linear solve."""


class RenderError(FdeHatError, ValueError):
    """Plot input cannot be rendered (empty, or containing non-finite values)."""
