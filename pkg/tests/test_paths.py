"""Path algebra: concatenation, reversal, affine homotopies, reparametrization."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_endpoint_flow
from specflow import (
    EndpointMismatch,
    SelfAdjointOperator,
    affine_homotopy,
    concat,
    constant_path,
    matrix_path,
    random_family,
    reparametrize,
    reverse,
    spectral_flow,
    straight_segment,
)


def crossing_path(up: bool = True):
    sign = 1.0 if up else -1.0
    return matrix_path(3, lambda t: np.diag([sign * (2 * t - 1), 5.0, -5.0]))


class TestConcat:
    def test_constant_constant(self):
        g0 = SelfAdjointOperator.from_diagonal([1.0, -2.0])
        c = concat(constant_path(g0), constant_path(g0))
        for t in (0.0, 0.3, 0.5, 0.8, 1.0):
            assert np.array_equal(c.at(t).entries, g0.entries)

    def test_crossing_then_constant(self):
        a = crossing_path()
        b = constant_path(a.at(1.0))
        c = concat(a, b)
        fa = spectral_flow(a).flow
        fb = spectral_flow(b).flow
        assert (fa, fb) == (1, 0)
        assert spectral_flow(c).flow == fa + fb == brute_endpoint_flow(c)

    def test_loop_flow_zero(self):
        a = crossing_path()
        loop = concat(a, reverse(a))
        assert spectral_flow(loop).flow == 0

    def test_endpoint_mismatch(self):
        a = crossing_path()
        b = constant_path(SelfAdjointOperator.from_diagonal([9.0, 5.0, -5.0]))
        with pytest.raises(EndpointMismatch):
            concat(a, b)

    def test_dim_mismatch(self):
        with pytest.raises(EndpointMismatch):
            concat(crossing_path(), constant_path(SelfAdjointOperator.from_diagonal([1.0])))


class TestReverse:
    def test_constant_unchanged(self):
        g0 = SelfAdjointOperator.from_diagonal([2.0, -3.0])
        r = reverse(constant_path(g0))
        assert np.array_equal(r.at(0.4).entries, g0.entries)

    def test_flow_negated(self):
        assert spectral_flow(reverse(crossing_path())).flow == -1

    def test_involution_pointwise(self):
        a = random_family(4, seed=11)
        rr = reverse(reverse(a))
        for t in np.linspace(0.0, 1.0, 9):
            assert np.array_equal(rr.at(float(t)).entries, a.at(float(t)).entries)


class TestAffineHomotopy:
    def test_equal_paths_constant_in_s(self):
        a = crossing_path()
        h = affine_homotopy(a, crossing_path())
        for s in (0.0, 0.5, 1.0):
            for t in (0.0, 0.25, 1.0):
                assert np.allclose(h.at(s, t).entries, a.at(t).entries)

    def test_contraction_of_loop_to_constant(self):
        # loop at g0 against the constant loop: ends stay pinned at g0
        a = crossing_path()
        loop = concat(a, reverse(a))
        const = constant_path(loop.at(0.0))
        h = affine_homotopy(loop, const)
        for s in np.linspace(0.0, 1.0, 5):
            sl = h.slice_at(float(s))
            assert np.array_equal(sl.at(0.0).entries, loop.at(0.0).entries)
            assert np.array_equal(sl.at(1.0).entries, loop.at(1.0).entries)
        assert spectral_flow(h.slice_at(1.0)).flow == 0

    def test_two_crossings_flow_constant_across_slices(self):
        # same endpoints, different crossing profiles: 2t-1 vs -cos(pi t)
        a = crossing_path()
        b = matrix_path(3, lambda t: np.diag([-np.cos(np.pi * t), 5.0, -5.0]))
        h = affine_homotopy(a, b)
        flows = {spectral_flow(h.slice_at(float(s))).flow for s in np.linspace(0, 1, 11)}
        assert flows == {1}

    def test_endpoint_mismatch(self):
        a = crossing_path()
        b = matrix_path(3, lambda t: np.diag([2 * t - 0.5, 5.0, -5.0]))
        with pytest.raises(EndpointMismatch):
            affine_homotopy(a, b)


class TestStraightSegment:
    def test_endpoints_exact(self):
        x = SelfAdjointOperator.from_diagonal([1.0, 2.0])
        y = SelfAdjointOperator.from_diagonal([-3.0, 4.0])
        seg = straight_segment(x, y)
        assert np.array_equal(seg.at(0.0).entries, x.entries)
        assert np.array_equal(seg.at(1.0).entries, y.entries)


class TestReparametrization:
    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        st.lists(st.floats(min_value=0.01, max_value=0.99), min_size=1, max_size=4, unique=True),
    )
    @settings(max_examples=25)
    def test_flow_invariant_under_monotone_bijection(self, seed, knots_in):
        # piecewise-linear bijection of [0, 1] through sorted interior knots
        xs = np.concatenate([[0.0], np.sort(knots_in), [1.0]])
        ys = np.linspace(0.0, 1.0, len(xs))

        def phi(t: float) -> float:
            return float(np.interp(t, xs, ys))

        a = random_family(5, seed)
        slope = float(np.max(np.diff(ys) / np.diff(xs)))
        warped = reparametrize(a, phi, lipschitz=a.lipschitz * slope)
        assert spectral_flow(warped).flow == spectral_flow(a).flow

    def test_rejects_non_endpoint_fixing(self):
        a = crossing_path()
        with pytest.raises(ValueError):
            reparametrize(a, lambda t: 0.5 * t)


class TestPathValidation:
    def test_parameter_out_of_range(self):
        with pytest.raises(ValueError):
            crossing_path().at(1.5)

    def test_dim_mismatch_detected(self):
        bad = matrix_path(3, lambda t: np.eye(2))
        with pytest.raises(ValueError, match="dimension"):
            bad.at(0.5)
