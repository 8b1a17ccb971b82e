"""Exception hierarchy for phaselens."""


class PhaseLensError(Exception):
    """Base class for all phaselens errors."""


class DimensionMismatch(PhaseLensError):
    """Two dense vectors (or a vector and a frame) disagree on ambient dimension."""


class IncompatibleVector(PhaseLensError):
    """A vector representation cannot be paired with the given frame or vector."""


class NotAFrameError(PhaseLensError):
    """The vector family does not span: smallest frame-operator eigenvalue is
    numerically zero."""


class EnumerationCapExceeded(PhaseLensError):
    """A combinatorial enumeration would exceed the configured cap."""


class FieldError(PhaseLensError):
    """An operation requires a specific scalar field (real vs complex)."""


class SingularTransformError(PhaseLensError):
    """The supplied operator is singular under the rank tolerance."""


class FrameFormatError(PhaseLensError):
    """A frame or vector file failed to parse."""


class UnknownScenarioError(PhaseLensError):
    """Requested reproduction scenario is not registered."""
