"""Exception types raised by the spectral-flow engine.

Every failure mode that callers are expected to branch on gets its own
class; generic misuse (wrong shapes, non-finite input) raises plain
``ValueError``.
"""

from __future__ import annotations

__all__ = [
    "SpectralFlowError",
    "BoundaryAmbiguity",
    "NoGap",
    "DepthExceeded",
    "EndpointMismatch",
    "InvalidSpec",
    "WindowTooSmall",
    "GeneratorFailure",
    "CertificateBroken",
    "ResolutionWarning",
    "EigensolverError",
    "WindowCountViolation",
]


class SpectralFlowError(Exception):
    """Base class for all engine-specific errors."""


class BoundaryAmbiguity(SpectralFlowError):
    """An eigenvalue sits too close to a counting boundary.

    Counts on an interval are only reliable when both endpoints are
    bounded away from the spectrum; the caller must move the endpoint.
    """


class NoGap(SpectralFlowError):
    """No window radius near the requested target has a usable margin."""


class DepthExceeded(SpectralFlowError):
    """Recursive bisection hit its depth limit without certifying a segment.

    Signals a near-degenerate path (e.g. an eigenvalue pinned at a window
    boundary); callers may raise sampling density or tolerances.
    """


class EndpointMismatch(SpectralFlowError):
    """Path endpoints do not agree where an operation requires them to."""


class InvalidSpec(SpectralFlowError):
    """A family or gluing specification violates its invariants."""


class WindowTooSmall(SpectralFlowError):
    """The requested winding exceeds the number of represented modes."""


class GeneratorFailure(SpectralFlowError):
    """A flow generator returned a path whose flow does not exceed the bound."""


class CertificateBroken(SpectralFlowError):
    """Internal consistency check failed; indicates a bug, not bad input."""


class ResolutionWarning(SpectralFlowError):
    """Doubling the oracle grid changed the result.

    Raised as a hard error: an under-resolved oracle run is never
    silently accepted.
    """


class EigensolverError(SpectralFlowError):
    """The dense eigensolver failed to converge."""


class WindowCountViolation(SpectralFlowError):
    """The eigenvalue count inside the gluing window is not constant."""

    def __init__(self, message: str, t: float | None = None, spectrum=None):
        super().__init__(message)
        self.t = t
        self.spectrum = spectrum
