class RepresentationError(ValueError):
    """Base class for errors raised while building or evaluating (A, u) representations."""


class SingularMatrix(RepresentationError):
    """A linear system over F_p(X) has no unique solution."""


class SingularConvolution(RepresentationError):
    """A (x) I - I (x) B is not invertible, so the convolution cannot be built."""

    def __init__(self, message, expression=None):
        super().__init__(message)
        self.expression = expression


class DivergentBellSeries(RepresentationError):
    """I - A is singular: the Bell series has no R-fraction at this shift."""


class NoConvergentShift(RepresentationError):
    """No shift in the probe window satisfies the convergence criterion."""
