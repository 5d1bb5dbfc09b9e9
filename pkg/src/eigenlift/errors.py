"""Exception hierarchy.

Every error raised by the package derives from :class:`EigenliftError`, so
callers can catch the whole family at once.  The classes are grouped by the
exit code the command-line front end maps them to.
"""


class EigenliftError(Exception):
    """Base class for all package errors."""


# -- linear algebra -------------------------------------------------------

class NotHermitian(EigenliftError, ValueError):
    pass


class NotUnitary(EigenliftError, ValueError):
    pass


class NotAProjector(EigenliftError, ValueError):
    pass


class NotNormalized(EigenliftError, ValueError):
    pass


class SizeMismatch(EigenliftError, ValueError):
    pass


# -- model / domain (exit code 3) -----------------------------------------

class DomainError(EigenliftError):
    """The requested parameter point is outside the usable domain."""


class PunctureHit(DomainError):
    pass


class OriginExcluded(PunctureHit):
    """The spin model is undefined at zero field."""


class DegenerateSpectrum(DomainError):
    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class DegeneratePoint(DomainError):
    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class TooLarge(EigenliftError, ValueError):
    pass


class AmbiguousMatch(EigenliftError):
    def __init__(self, message, overlaps=None):
        super().__init__(message)
        self.overlaps = overlaps


# -- paths ----------------------------------------------------------------

class InvalidPath(EigenliftError, ValueError):
    pass


class EndpointMismatch(EigenliftError, ValueError):
    pass


class NotClosed(EigenliftError, ValueError):
    pass


class PunctureOnPath(EigenliftError, ValueError):
    pass


class NonAbelianGenerators(EigenliftError, ValueError):
    pass


# -- lifting (exit code 4) ------------------------------------------------

class LiftError(EigenliftError):
    pass


class DegeneracyOnPath(LiftError):
    def __init__(self, message, point=None, gap=None):
        super().__init__(message)
        self.point = point
        self.gap = gap


class DepthExceeded(LiftError):
    pass


# -- theorem checks (exit code 5) -----------------------------------------

class TheoremViolation(EigenliftError):
    pass


# -- configuration (exit code 2) ------------------------------------------

class ConfigError(EigenliftError, ValueError):
    pass
