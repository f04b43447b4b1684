"""Exceptions raised by the framing routines."""


class FramingError(ValueError):
    """Base class for invalid-input conditions detected by this package."""


class TooFewPoints(FramingError):
    pass


class ZeroLengthSegment(FramingError):
    pass


class NotUnitSpeed(FramingError):
    """Tangent norms deviate from one beyond the allowed tolerance.

    Raw polylines can usually be fixed by resampling them by arc length
    first (``resample_arclength`` or ``--resample`` on the command line).
    """

    def __init__(self, deviation, tol):
        self.deviation = float(deviation)
        self.tol = float(tol)
        super().__init__(
            f"tangent norm deviates from 1 by {self.deviation:.3g} "
            f"(tolerance {self.tol:.3g}); resample the curve by arc length"
        )


class NotOrthonormal(FramingError):
    pass


class NonzeroTwist(FramingError):
    pass


class NoRegularNodes(FramingError):
    """Every node has curvature below the masking threshold."""


class IrregularNodes(FramingError):
    """Some (not all) nodes of a Frenet field are masked."""
