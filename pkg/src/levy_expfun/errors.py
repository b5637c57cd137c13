"""Exception types shared across the estimation pipeline."""


class LevyExpFunError(Exception):
    """Base class for all package-specific errors."""


class MomentOverflowError(LevyExpFunError):
    """Empirical complex moment exceeds the floating-point exponent range
    even after log-scale stabilization."""


class DegenerateDenominatorError(LevyExpFunError):
    """Denominator moment is numerically zero at some grid point.

    Signals that the sample size is too small or the frequency window too
    wide for the Mellin transform decay of the underlying law.
    """


class ZeroDenominatorError(LevyExpFunError):
    """Weight function vanishes on the whole grid."""


class PoleError(LevyExpFunError):
    """Laplace exponent evaluated at a pole of its closed form."""


class AccuracyRegionExceededError(LevyExpFunError):
    """Complex error function requested outside its documented accuracy
    region."""


class TruncationCapError(LevyExpFunError):
    """Series sampler hit the hard term cap before reaching the requested
    relative truncation tolerance."""


class NonDecayingMomentsError(LevyExpFunError):
    """Fitted Mellin decay slope is nonpositive: the empirical moments do
    not decay in frequency, so the exponential-decay assumption behind the
    bandwidth rule is violated."""
