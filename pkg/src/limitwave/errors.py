"""Exception types shared across the package.

Every guard raises one of these so callers can distinguish bad input
(user error) from violated internal invariants (bugs).
"""


class LimitWaveError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(LimitWaveError):
    """Operands live on tori of different dimensions."""


class SingularMatrix(LimitWaveError):
    """Dilation matrix has zero determinant."""


class NotExpansive(LimitWaveError):
    """Dilation matrix has an eigenvalue on or inside the unit circle."""


class DualityFailure(LimitWaveError):
    """Transversal candidates do not satisfy the pairing-matrix identity."""


class NotUnitVector(LimitWaveError):
    """Coefficient vector is not normalized."""


class NotOrthonormal(LimitWaveError):
    """Coefficient rows are not an orthonormal basis."""


class InvalidFilter(LimitWaveError):
    """Filter (or filter-bank) equation residual exceeds tolerance."""


class RepresentationMismatch(LimitWaveError):
    """Operation not defined for this function representation."""


class ContextMismatch(LimitWaveError):
    """Direct-limit vectors built over different filter contexts."""


class LevelTooLow(LimitWaveError):
    """Requested promotion target below the current level."""


class LevelCapExceeded(LimitWaveError):
    """Resolution level beyond the per-run cap."""


class SupportOverflow(LimitWaveError):
    """Coefficient support grew past the guardrail."""


class BoxTooSmall(LimitWaveError):
    """Sampled box cannot cover the requested translates."""


class Diverged(LimitWaveError):
    """Sampled function shows no decay toward the box boundary."""


class NotLowPass(LimitWaveError):
    """Operation requires a low-pass filter context."""


class ParameterOutOfRange(LimitWaveError):
    """Scalar parameter outside its documented domain."""


class InternalError(LimitWaveError):
    """Invariant that should be unreachable was violated."""
