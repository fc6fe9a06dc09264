"""Shared test helpers: brute-force spectral checks independent of the engine."""

from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


def brute_window_count(path, t: float, radius: float) -> int:
    """Eigenvalue count in [-radius, radius] by direct eigendecomposition."""
    vals = np.linalg.eigvalsh(path.at(t).entries)
    return int(np.count_nonzero(np.abs(vals) <= radius))


def brute_min_abs(path, grid: int = 1000) -> float:
    """Smallest |eigenvalue| over a fine parameter grid."""
    return min(
        float(np.abs(np.linalg.eigvalsh(path.at(float(t)).entries)).min())
        for t in np.linspace(0.0, 1.0, grid)
    )


def brute_negative_count(path, t: float) -> int:
    return int(np.count_nonzero(np.linalg.eigvalsh(path.at(t).entries) < 0.0))


def brute_endpoint_flow(path) -> int:
    """Net zero crossings of a finite-dimensional path with invertible ends.

    In fixed finite dimension this is exactly the drop in the negative
    eigenvalue count from t=0 to t=1; an independent closed form the
    partition engine never uses.
    """
    return brute_negative_count(path, 0.0) - brute_negative_count(path, 1.0)
