"""Operator paths over [0, 1] and the algebra on them.

A path is an immutable wrapper around an evaluator ``t -> operator``.
Evaluations are memoized per path so that partition refinement, which
revisits segment endpoints, reuses cached spectra.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .errors import EndpointMismatch
from .operators import SelfAdjointOperator

__all__ = [
    "OperatorPath",
    "Homotopy",
    "matrix_path",
    "constant_path",
    "straight_segment",
    "concat",
    "reverse",
    "affine_homotopy",
    "reparametrize",
    "ENDPOINT_RTOL",
]

# Relative tolerance for endpoint agreement in concat/affine_homotopy;
# loose enough that file round-trips never break composability.
ENDPOINT_RTOL = 1e-10


class OperatorPath:
    """Continuous family ``t -> SelfAdjointOperator`` on [0, 1].

    ``lipschitz`` is an optional continuity hint (a bound on the operator
    norm of the derivative); ``None`` means unknown.  It is informational
    only: certification never assumes it.
    """

    __slots__ = ("_dim", "_evaluator", "_lipschitz", "_cache")

    def __init__(
        self,
        dim: int,
        evaluator: Callable[[float], SelfAdjointOperator],
        lipschitz: float | None = None,
    ):
        if dim < 1:
            raise ValueError("path dimension must be at least 1")
        self._dim = int(dim)
        self._evaluator = evaluator
        self._lipschitz = None if lipschitz is None else float(lipschitz)
        self._cache: dict[float, SelfAdjointOperator] = {}

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def lipschitz(self) -> float | None:
        return self._lipschitz

    def at(self, t: float) -> SelfAdjointOperator:
        """Evaluate the path at parameter ``t`` in [0, 1]."""
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"path parameter {t!r} outside [0, 1]")
        op = self._cache.get(t)
        if op is None:
            op = self._evaluator(t)
            if op.dim != self._dim:
                raise ValueError(
                    f"path evaluator returned dimension {op.dim}, expected {self._dim}"
                )
            self._cache[t] = op
        return op

    __call__ = at

    def __repr__(self) -> str:
        return f"OperatorPath(dim={self._dim})"


def matrix_path(
    dim: int,
    fn: Callable[[float], np.ndarray],
    lipschitz: float | None = None,
) -> OperatorPath:
    """Path from a function returning raw Hermitian matrices."""
    return OperatorPath(dim, lambda t: SelfAdjointOperator(fn(t)), lipschitz)


def constant_path(op: SelfAdjointOperator) -> OperatorPath:
    return OperatorPath(op.dim, lambda t: op, lipschitz=0.0)


def straight_segment(a: SelfAdjointOperator, b: SelfAdjointOperator) -> OperatorPath:
    """Affine segment ``t -> (1-t) a + t b`` in the convex operator space."""
    if a.dim != b.dim:
        raise EndpointMismatch(f"segment endpoints have dims {a.dim} and {b.dim}")
    ea, eb = a.entries, b.entries

    def ev(t: float) -> SelfAdjointOperator:
        return SelfAdjointOperator((1.0 - t) * ea + t * eb)

    lip = float(np.linalg.norm(eb - ea, 2))
    return OperatorPath(a.dim, ev, lipschitz=lip)


def _endpoint_gap(x: SelfAdjointOperator, y: SelfAdjointOperator) -> tuple[float, float]:
    diff = float(np.abs(x.entries - y.entries).max())
    scale = float(np.abs(x.entries).max())
    return diff, scale


def concat(a: OperatorPath, b: OperatorPath) -> OperatorPath:
    """Concatenate ``a`` then ``b`` with midpoint reparametrization.

    Requires ``a(1) == b(0)`` up to ``ENDPOINT_RTOL`` relative to the
    junction norm.  The flow is reparametrization invariant, so the
    midpoint split is immaterial.
    """
    if a.dim != b.dim:
        raise EndpointMismatch(f"cannot concatenate paths of dims {a.dim} and {b.dim}")
    a1, b0 = a.at(1.0), b.at(0.0)
    diff, scale = _endpoint_gap(a1, b0)
    if diff > ENDPOINT_RTOL * scale:
        raise EndpointMismatch(
            f"a(1) != b(0): max entry gap {diff:.3e} exceeds "
            f"{ENDPOINT_RTOL:.0e} * {scale:.3e}"
        )

    def ev(t: float) -> SelfAdjointOperator:
        if t <= 0.5:
            return a.at(min(1.0, 2.0 * t))
        return b.at(min(1.0, 2.0 * t - 1.0))

    lip = None
    if a.lipschitz is not None and b.lipschitz is not None:
        lip = 2.0 * max(a.lipschitz, b.lipschitz)
    return OperatorPath(a.dim, ev, lipschitz=lip)


def reverse(a: OperatorPath) -> OperatorPath:
    """Time-reversed path ``t -> a(1-t)``."""
    return OperatorPath(a.dim, lambda t: a.at(1.0 - t), lipschitz=a.lipschitz)


class Homotopy:
    """Two-parameter family ``(s, t) -> operator`` on [0, 1]^2.

    ``slice_lipschitz`` bounds the t-derivative uniformly in s (``None``
    when unknown) and is inherited by every slice.
    """

    __slots__ = ("_dim", "_evaluator", "_slice_lipschitz")

    def __init__(
        self,
        dim: int,
        evaluator: Callable[[float, float], SelfAdjointOperator],
        slice_lipschitz: float | None = None,
    ):
        self._dim = int(dim)
        self._evaluator = evaluator
        self._slice_lipschitz = slice_lipschitz

    @property
    def dim(self) -> int:
        return self._dim

    def at(self, s: float, t: float) -> SelfAdjointOperator:
        if not (0.0 <= s <= 1.0 and 0.0 <= t <= 1.0):
            raise ValueError(f"homotopy parameters ({s!r}, {t!r}) outside [0, 1]^2")
        return self._evaluator(float(s), float(t))

    def slice_at(self, s: float) -> OperatorPath:
        """The path ``t -> H(s, t)`` at a fixed deformation parameter."""
        s = float(s)
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"slice parameter {s!r} outside [0, 1]")
        return OperatorPath(self._dim, lambda t: self._evaluator(s, t), self._slice_lipschitz)


def affine_homotopy(a: OperatorPath, b: OperatorPath) -> Homotopy:
    """Straight-line homotopy ``H(s, t) = (1-s) a(t) + s b(t)``.

    Both paths must share endpoints (the homotopy fixes them in ``s``),
    which is what the convex parameter space guarantees exists.
    """
    if a.dim != b.dim:
        raise EndpointMismatch(f"cannot blend paths of dims {a.dim} and {b.dim}")
    for t in (0.0, 1.0):
        diff, scale = _endpoint_gap(a.at(t), b.at(t))
        if diff > ENDPOINT_RTOL * scale:
            raise EndpointMismatch(
                f"paths disagree at t={t}: max entry gap {diff:.3e} exceeds "
                f"{ENDPOINT_RTOL:.0e} * {scale:.3e}"
            )

    def ev(s: float, t: float) -> SelfAdjointOperator:
        if s == 0.0:
            return a.at(t)
        if s == 1.0:
            return b.at(t)
        return SelfAdjointOperator((1.0 - s) * a.at(t).entries + s * b.at(t).entries)

    lip = None
    if a.lipschitz is not None and b.lipschitz is not None:
        lip = max(a.lipschitz, b.lipschitz)
    return Homotopy(a.dim, ev, slice_lipschitz=lip)


def reparametrize(
    a: OperatorPath,
    phi: Callable[[float], float],
    lipschitz: float | None = None,
) -> OperatorPath:
    """Precompose with a monotone bijection ``phi`` of [0, 1].

    ``phi`` must fix the endpoints; values are clipped to [0, 1] to guard
    against rounding at the edges.  ``phi`` is opaque here, so a bound on
    the composite (``a.lipschitz`` times the slope bound of ``phi``) must
    be supplied by the caller if certification is to stay rigorous.
    """
    for t, expect in ((0.0, 0.0), (1.0, 1.0)):
        if abs(float(phi(t)) - expect) > 1e-12:
            raise ValueError(f"phi({t}) = {phi(t)!r}, expected {expect}")

    def ev(t: float) -> SelfAdjointOperator:
        return a.at(min(1.0, max(0.0, float(phi(t)))))

    return OperatorPath(a.dim, ev, lipschitz=lipschitz)
