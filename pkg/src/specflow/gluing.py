"""Window-preserving spectrum merge under bounded perturbation.

Models the gluing step: the spectrum of a base operator (empty inside the
window [-2, 2]) is merged with a crossing-family spectrum, and every
merged eigenvalue is perturbed by a smooth seeded amount strictly inside
(-epsilon, epsilon).  The merge preserves the window count and keeps +/-2
off the spectrum, so the flow of the merged path equals the crossing
multiplicity m + 1 > m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, WindowCountViolation
from .families import BaerFamilySpec
from .operators import SelfAdjointOperator, Spectrum, eigen_count
from .paths import OperatorPath

__all__ = [
    "GluingSpec",
    "GluedPath",
    "WindowCountReport",
    "glue",
    "window_count_constancy",
    "WINDOW_RADIUS",
]

WINDOW_RADIUS = 2.0
_NOISE_KNOTS = 8
# Keeps the perturbation strictly below epsilon even when a knot draws the
# extreme of the uniform range.
_NOISE_HEADROOM = 1.0 - 1e-12


@dataclass(frozen=True)
class GluingSpec:
    """Inputs of the merge: base spectrum, crossing family, noise level.

    The base spectrum must avoid [-2, 2] entirely, and epsilon must stay
    below half the minimal distance of any merged eigenvalue to +/-2 so
    the window count survives the perturbation.
    """

    base: Spectrum
    sphere_family: BaerFamilySpec
    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.base, Spectrum):
            object.__setattr__(self, "base", Spectrum(self.base))
        for v in self.base.values:
            if abs(v) <= WINDOW_RADIUS:
                raise InvalidSpec(
                    f"base eigenvalue {v!r} lies in [-2, 2]; rescale the base "
                    "spectrum out of the window first"
                )
        if not 0.0 <= self.epsilon < 0.5:
            raise InvalidSpec(f"epsilon must satisfy 0 <= epsilon < 1/2, got {self.epsilon!r}")
        if self.epsilon >= self.min_boundary_gap / 2:
            raise InvalidSpec(
                f"epsilon {self.epsilon!r} is not below half the minimal gap "
                f"{self.min_boundary_gap:.6g} between merged eigenvalues and +/-2"
            )

    @property
    def min_boundary_gap(self) -> float:
        """Minimal distance of any merged eigenvalue (over all t) to +/-2.

        The crossing eigenvalue contributes 1 (attained at the endpoints);
        static eigenvalues contribute their distance to the boundary.
        """
        static = np.concatenate([np.asarray(self.sphere_family.background), self.base.values])
        gap = 1.0
        if static.size:
            gap = min(gap, float(np.abs(np.abs(static) - WINDOW_RADIUS).min()))
        return gap

    @property
    def dim(self) -> int:
        return self.sphere_family.dim + len(self.base)


class GluedPath:
    """Merged path with bounded perturbation, realized diagonally.

    Slot order: crossing block (multiplicity m + 1), then the family
    background, then the base spectrum.  ``unperturbed_values`` /
    ``perturbed_values`` expose the per-slot eigenvalue curves for
    deviation checks.
    """

    __slots__ = ("spec", "path", "_static", "_knots")

    def __init__(self, spec: GluingSpec):
        self.spec = spec
        self._static = np.concatenate(
            [np.asarray(spec.sphere_family.background), spec.base.values]
        )
        rng = np.random.default_rng(spec.seed)
        self._knots = rng.uniform(-1.0, 1.0, size=(spec.dim, _NOISE_KNOTS)) * _NOISE_HEADROOM

        def ev(t: float) -> SelfAdjointOperator:
            return SelfAdjointOperator.from_diagonal(self.perturbed_values(t))

        lip = 2.0 + spec.epsilon * 1.5 * (_NOISE_KNOTS - 1) * 2.0
        self.path = OperatorPath(spec.dim, ev, lipschitz=lip)

    def unperturbed_values(self, t: float) -> np.ndarray:
        mult = self.spec.sphere_family.multiplicity
        return np.concatenate([np.full(mult, 2.0 * t - 1.0), self._static])

    def _noise(self, t: float) -> np.ndarray:
        # Cubic-smoothstep interpolation of the seeded knot values: smooth,
        # deterministic, bounded by the knot maxima.
        x = float(t) * (_NOISE_KNOTS - 1)
        j = min(int(x), _NOISE_KNOTS - 2)
        u = x - j
        w = u * u * (3.0 - 2.0 * u)
        return self._knots[:, j] + w * (self._knots[:, j + 1] - self._knots[:, j])

    def perturbed_values(self, t: float) -> np.ndarray:
        return self.unperturbed_values(t) + self.spec.epsilon * self._noise(t)

    def max_deviation(self, grid: int = 101) -> float:
        """Largest |perturbed - unperturbed| over a parameter grid."""
        ts = np.linspace(0.0, 1.0, grid)
        return max(
            float(np.abs(self.perturbed_values(t) - self.unperturbed_values(t)).max())
            for t in ts
        )


@dataclass(frozen=True)
class WindowCountReport:
    """Constant eigenvalue count in (-radius, radius) across the grid."""

    count: int
    radius: float
    grid: int


def glue(spec: GluingSpec) -> GluedPath:
    """Build the merged, perturbed path.

    Endpoints are invertible: the crossing block sits at -1 + O(eps) and
    1 + O(eps) with eps < 1/2, and static eigenvalues stay outside the
    window.
    """
    return GluedPath(spec)


def window_count_constancy(
    glued: GluedPath | OperatorPath,
    grid: int = 101,
    radius: float = WINDOW_RADIUS,
) -> WindowCountReport:
    """Verify the window count is constant on a parameter grid.

    Counts go through :func:`eigen_count`, so an eigenvalue sitting on the
    window boundary raises :class:`BoundaryAmbiguity` rather than being
    silently assigned a side.  Accepts a plain path too, so deliberately
    broken merges can be fed in as negative tests; a changing count raises
    :class:`WindowCountViolation` with the offending parameter and
    spectrum.
    """
    path = glued.path if isinstance(glued, GluedPath) else glued
    ts = np.linspace(0.0, 1.0, grid)
    counts = [eigen_count(path.at(float(t)), (-radius, radius)).count for t in ts]
    first = counts[0]
    for t, c in zip(ts, counts):
        if c != first:
            raise WindowCountViolation(
                f"window count changed from {first} to {c} at t={float(t)!r}",
                t=float(t),
                spectrum=path.at(float(t)).spectrum.values,
            )
    return WindowCountReport(count=first, radius=radius, grid=grid)
