"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the exception hierarchy shared by the kernel and the command line.

Every error derives from DarbouxError. ConfigError covers malformed input documents and flags,
KernelError covers mathematical and domain failures, VerificationFailure is raised when a verdict fails.
The class attribute `exit_code` is the process exit status the command line reports.
"""


class DarbouxError(Exception):
    """Base class of all darboux_helix errors.

    Attributes
    ----------
    message: str
        Description of the failure.
    stage: str, None
        Name of the pipeline stage that raised the error, set by the pipeline.
    """
    exit_code = 2

    def __init__(self, message=''):
        super().__init__(message)
        self.message = message
        self.stage = None

    def __str__(self):
        if self.stage:
            return f"[{self.stage}] {self.message}"

        return self.message


class ConfigError(DarbouxError, ValueError):
    """Scene document, built-in name, family, constant or flag could not be understood."""
    exit_code = 1


class KernelError(DarbouxError, ValueError):
    """A mathematical or domain failure inside the kernel."""
    exit_code = 2


class VerificationFailure(DarbouxError):
    """A validation report or helix verdict came out negative."""
    exit_code = 3


class ExprLexError(KernelError):
    """Character outside the expression grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExprSyntaxError(KernelError):
    """Malformed token stream."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExprDomainError(KernelError):
    """Expression evaluated outside its real domain."""


class GridError(KernelError):
    """Sampling grid violates s1 > s0, n >= 5 or n odd."""


class DegenerateParametrizationError(KernelError):
    """Surface partials are (nearly) parallel."""


class ValidationError(KernelError):
    """Surface curve is not unit speed, not normal or its normal is not unit."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ZeroSpeedError(KernelError):
    """Curve derivative vanishes."""


class UndefinedFrameError(KernelError):
    """Frenet frame undefined because the curvature vanishes."""

    def __init__(self, message, kappa=None):
        super().__init__(message)
        self.kappa = kappa


class CurvatureVanishesError(KernelError):
    """Curvature too small for a ratio test."""


class HypothesisViolationError(KernelError):
    """A characterisation theorem does not apply to the samples."""


class VanishingFieldError(KernelError):
    """A Darboux vector field vanishes somewhere on the grid."""


class NonFiniteError(KernelError):
    """Sampled input contains NaN or infinity."""


class CaseAmbiguityError(KernelError):
    """Curvature is neither identically zero nor nonvanishing on the grid."""

    def __init__(self, message, name=''):
        super().__init__(message)
        self.name = name


class DivisorTooSmallError(KernelError):
    """A curvature used as divisor comes too close to zero."""

    def __init__(self, message, name=''):
        super().__init__(message)
        self.name = name


class RegularityViolationError(KernelError):
    """The associated curve is not regular (R component vanishes or changes sign)."""


class MissingConstantError(KernelError):
    """A family constant is required but was not supplied."""
