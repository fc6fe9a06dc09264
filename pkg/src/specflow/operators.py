"""Finite self-adjoint operators and certified eigenvalue counts.

Operators are dense Hermitian matrices.  Ingestion symmetrizes input that
is Hermitian up to rounding and rejects anything genuinely non-self-adjoint,
so downstream code can rely on exact Hermiticity and a real spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryAmbiguity, EigensolverError, NoGap

__all__ = [
    "SelfAdjointOperator",
    "Spectrum",
    "SpectralWindow",
    "EigenCount",
    "eigenvalues",
    "eigen_count",
    "certify_window",
    "HERMITICITY_RTOL",
    "DEFAULT_CLUSTER_TOL",
    "DEFAULT_MIN_MARGIN",
]

# Inputs with relative asymmetry above this are rejected instead of repaired.
HERMITICITY_RTOL = 1e-12
# Relative distance (to the spectral radius) below which an eigenvalue is
# considered to collide with a counting boundary.
DEFAULT_CLUSTER_TOL = 1e-9
# Relative floor for certified window margins.
DEFAULT_MIN_MARGIN = 1e-6


def _ingest_hermitian(entries) -> np.ndarray:
    a = np.asarray(entries)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator entries must be a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("operator dimension must be at least 1")
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    a = a.astype(dtype, copy=True)
    if not np.all(np.isfinite(a)):
        raise ValueError("operator entries must be finite")
    scale = float(np.abs(a).max()) if a.size else 0.0
    asym = float(np.abs(a - a.conj().T).max())
    if asym > HERMITICITY_RTOL * scale:
        raise ValueError(
            f"matrix is not self-adjoint: asymmetry {asym:.3e} exceeds "
            f"{HERMITICITY_RTOL:.0e} * norm ({scale:.3e})"
        )
    h = (a + a.conj().T) / 2
    h.setflags(write=False)
    return h


class SelfAdjointOperator:
    """A finite Hermitian matrix standing in for a Dirac operator.

    Entries Hermitian within rounding are symmetrized exactly on ingestion;
    an already-Hermitian matrix passes through bit-for-bit.  Instances are
    immutable and cache their spectrum.
    """

    __slots__ = ("_entries", "_spectrum")

    def __init__(self, entries):
        self._entries = _ingest_hermitian(entries)
        self._spectrum: Spectrum | None = None

    @classmethod
    def from_diagonal(cls, values) -> "SelfAdjointOperator":
        """Operator with the given real diagonal (eigenvalues as stated)."""
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("diagonal must be a non-empty 1-d sequence")
        return cls(np.diag(vals))

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def spectrum(self) -> "Spectrum":
        """Sorted eigenvalues with multiplicity (computed once, cached)."""
        if self._spectrum is None:
            self._spectrum = _solve_spectrum(self._entries)
        return self._spectrum

    @property
    def spectral_radius(self) -> float:
        return self.spectrum.radius

    def __repr__(self) -> str:
        return f"SelfAdjointOperator(dim={self.dim})"


class Spectrum:
    """Nondecreasing real eigenvalue sequence of one operator."""

    __slots__ = ("_values",)

    def __init__(self, values):
        vals = np.sort(np.asarray(values, dtype=np.float64))
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("spectrum must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(vals)):
            raise ValueError("spectrum values must be finite")
        vals.setflags(write=False)
        self._values = vals

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    @property
    def radius(self) -> float:
        """Largest eigenvalue magnitude."""
        return float(np.abs(self._values).max())

    @property
    def min_abs(self) -> float:
        """Distance of the spectrum to zero."""
        return float(np.abs(self._values).min())

    def count_between(self, lo: float, hi: float) -> int:
        """Raw inclusive count in [lo, hi]; no boundary guards."""
        return int(np.count_nonzero((self._values >= lo) & (self._values <= hi)))

    def min_distance(self, x: float) -> float:
        return float(np.abs(self._values - x).min())

    def __repr__(self) -> str:
        return f"Spectrum({np.array2string(self._values, precision=6)})"


@dataclass(frozen=True)
class SpectralWindow:
    """Certified symmetric window (-radius, radius).

    ``margin`` is the verified distance from both +/-radius to the
    spectrum; it is strictly positive for any certified window.
    """

    radius: float
    margin: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("window radius must be positive")
        if not self.margin > 0:
            raise ValueError("window margin must be positive")


@dataclass(frozen=True)
class EigenCount:
    """Eigenvalue count (with multiplicity) on a closed interval."""

    lower: float
    upper: float
    count: int


def _solve_spectrum(entries: np.ndarray) -> Spectrum:
    try:
        vals = np.linalg.eigvalsh(entries)
    except np.linalg.LinAlgError as exc:
        dim = entries.shape[0]
        norm = float(np.abs(entries).max())
        raise EigensolverError(
            f"dense Hermitian eigensolver failed to converge: dim={dim}, "
            f"max|entry|={norm:.3e} ({exc})"
        ) from exc
    return Spectrum(vals)


def eigenvalues(op: SelfAdjointOperator) -> Spectrum:
    """All eigenvalues of ``op``, sorted nondecreasing, with multiplicity."""
    return op.spectrum


def _cluster_scale(spectrum: Spectrum) -> float:
    # Fall back to 1.0 so zero operators still get a usable absolute tolerance.
    r = spectrum.radius
    return r if r > 0 else 1.0


def eigen_count(
    op: SelfAdjointOperator,
    interval: tuple[float, float],
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> EigenCount:
    """Count eigenvalues of ``op`` in the closed interval ``[lo, hi]``.

    ``cluster_tol`` is relative to the spectral radius.  If any eigenvalue
    lies within that distance of either endpoint the count is ambiguous
    and :class:`BoundaryAmbiguity` is raised: the caller must move the
    endpoint off the spectrum.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo <= hi:
        raise ValueError(f"interval is empty: [{lo}, {hi}]")
    if not cluster_tol > 0:
        raise ValueError("cluster_tol must be positive")
    spec = op.spectrum
    tol = cluster_tol * _cluster_scale(spec)
    for endpoint in (lo, hi):
        d = spec.min_distance(endpoint)
        if d < tol:
            raise BoundaryAmbiguity(
                f"eigenvalue within {tol:.3e} of interval endpoint {endpoint!r} "
                f"(distance {d:.3e}); move the endpoint off the spectrum"
            )
    return EigenCount(lo, hi, spec.count_between(lo, hi))


def _abs_levels(spectrum: Spectrum) -> np.ndarray:
    """Distinct eigenvalue magnitudes, always including 0 as a floor."""
    return np.unique(np.concatenate(([0.0], np.abs(spectrum.values))))


def certify_window(
    op: SelfAdjointOperator,
    target: float,
    min_margin: float | None = None,
) -> SpectralWindow:
    """Certify a symmetric spectral window with radius near ``target``.

    Returns ``target`` itself when both +/-target clear the spectrum by at
    least the margin floor.  Otherwise the radius is nudged to the midpoint
    of the nearest spectral gap (on the eigenvalue-magnitude axis)
    straddling the target.  Candidates are confined to
    ``[target/2, 2*target]``; if none has a usable margin, raises
    :class:`NoGap`.
    """
    if not target > 0:
        raise ValueError("window target must be positive")
    spec = op.spectrum
    levels = _abs_levels(spec)

    def margin_at(lam: float) -> float:
        return float(np.abs(levels - lam).min())

    scale = max(spec.radius, target)
    floor = min_margin if min_margin is not None else DEFAULT_MIN_MARGIN * scale
    if margin_at(target) >= floor:
        return SpectralWindow(target, margin_at(target))

    lo_lim, hi_lim = target / 2, 2 * target
    candidates = [float(0.5 * (levels[i] + levels[i + 1])) for i in range(len(levels) - 1)]
    candidates.extend([lo_lim, hi_lim])
    best: tuple[float, float] | None = None
    for lam in candidates:
        if lam <= 0 or lam < lo_lim or lam > hi_lim:
            continue
        m = margin_at(lam)
        if m < floor:
            continue
        if best is None or abs(lam - target) < abs(best[0] - target) or (
            abs(lam - target) == abs(best[0] - target) and lam < best[0]
        ):
            best = (lam, m)
    if best is None:
        raise NoGap(
            f"no window radius in [{lo_lim:.6g}, {hi_lim:.6g}] achieves margin "
            f">= {floor:.3e} for target {target!r}"
        )
    return SpectralWindow(best[0], best[1])
