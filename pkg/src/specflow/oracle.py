"""Brute-force spectral-flow oracle.

Deliberately naive and fully independent of the certified engine: dense
eigendecomposition on a fine parameter grid, signed zero crossings
detected from negative-eigenvalue count differences between adjacent grid
cells, each crossing refined by bisection.  Multiplicity > 1 crossings
are handled by count differences, never by eigenvalue-curve pairing,
which is ambiguous at collisions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryAmbiguity, ResolutionWarning
from .paths import OperatorPath

__all__ = ["CrossingRecord", "OracleResult", "oracle_flow"]

DEFAULT_GRID = 512
DEFAULT_ZERO_BAND = 1e-9
REFINE_WIDTH = 1e-10


@dataclass(frozen=True)
class CrossingRecord:
    """One detected zero crossing, bracketed to ``REFINE_WIDTH``."""

    t_lower: float
    t_upper: float
    direction: int
    refined_t: float


@dataclass(frozen=True)
class OracleResult:
    flow: int
    crossings: tuple[CrossingRecord, ...]
    grid: int


def _negative_count(path: OperatorPath, t: float) -> int:
    return int(np.count_nonzero(path.at(t).spectrum.values < 0.0))


def _refine_cell(
    path: OperatorPath,
    lo: float,
    hi: float,
    n_lo: int,
    n_hi: int,
    out: list[CrossingRecord],
) -> None:
    if hi - lo <= REFINE_WIDTH:
        net = n_lo - n_hi  # upward crossings reduce the negative count
        direction = 1 if net > 0 else -1
        mid = 0.5 * (lo + hi)
        for _ in range(abs(net)):
            out.append(CrossingRecord(lo, hi, direction, mid))
        return
    mid = 0.5 * (lo + hi)
    n_mid = _negative_count(path, mid)
    if n_mid != n_lo:
        _refine_cell(path, lo, mid, n_lo, n_mid, out)
    if n_mid != n_hi:
        _refine_cell(path, mid, hi, n_mid, n_hi, out)


def oracle_flow(
    path: OperatorPath,
    grid: int = DEFAULT_GRID,
    zero_band: float = DEFAULT_ZERO_BAND,
    check_doubling: bool = True,
) -> OracleResult:
    """Signed zero-crossing count of ``path`` on a fine grid.

    ``zero_band`` (relative to the spectral radius) guards the path
    endpoints: an eigenvalue that close to zero there makes the crossing
    count ill-defined.  With ``check_doubling`` the run is repeated on a
    doubled grid and any disagreement (net flow or number of detected
    crossings) raises :class:`ResolutionWarning` instead of being
    silently accepted.
    """
    if grid < 64:
        raise ValueError(f"oracle grid must be at least 64, got {grid!r}")
    for t in (0.0, 1.0):
        spec = path.at(t).spectrum
        scale = spec.radius if spec.radius > 0 else 1.0
        if spec.min_abs < zero_band * scale:
            raise BoundaryAmbiguity(
                f"endpoint t={t} has an eigenvalue within {zero_band * scale:.3e} of 0; "
                "the signed crossing count is ill-defined there"
            )
    ts = np.linspace(0.0, 1.0, grid + 1)
    negs = [_negative_count(path, float(t)) for t in ts]
    records: list[CrossingRecord] = []
    for j in range(grid):
        if negs[j] != negs[j + 1]:
            _refine_cell(path, float(ts[j]), float(ts[j + 1]), negs[j], negs[j + 1], records)
    flow = negs[0] - negs[-1]
    result = OracleResult(flow=flow, crossings=tuple(records), grid=grid)
    if check_doubling:
        doubled = oracle_flow(path, 2 * grid, zero_band, check_doubling=False)
        if (doubled.flow, len(doubled.crossings)) != (flow, len(records)):
            raise ResolutionWarning(
                f"oracle result changed under grid doubling {grid} -> {2 * grid}: "
                f"flow {flow} -> {doubled.flow}, crossings {len(records)} -> "
                f"{len(doubled.crossings)}; raise the grid"
            )
    return result
