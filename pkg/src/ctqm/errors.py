"""Exception types shared across the package."""


class CTQMError(ValueError):
    """Base class for physics-level errors raised by this package."""


class DomainError(CTQMError):
    """Input outside the physical domain (superluminal, off shell, non-finite)."""


class FrameMismatchError(CTQMError):
    """Objects attached to different frames were combined."""


class VarianceError(CTQMError):
    """Covariant/contravariant mix-up."""


class MeasureMismatchError(CTQMError):
    """Wave packets with different measure conventions were combined."""


class NormalizationMismatchError(CTQMError):
    """State vectors with different normalization conventions were combined."""


class SingularBracketError(CTQMError):
    """Poisson bracket evaluated at a point where u.k vanishes."""


class ConsistencyError(CTQMError):
    """A closed-form identity failed beyond tolerance during construction."""
