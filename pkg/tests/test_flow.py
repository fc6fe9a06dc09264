"""Partition refinement and the certified spectral flow."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_endpoint_flow, brute_window_count
from specflow import (
    BaerFamilySpec,
    DepthExceeded,
    FlowOptions,
    baer_family,
    matrix_path,
    oracle_flow,
    random_family,
    refine_partition,
    spectral_flow,
)


class TestRefinePartition:
    def test_constant_path_single_segment(self):
        p = matrix_path(2, lambda t: np.diag([-1.0, 1.0]))
        part = refine_partition(p, init_samples=1)
        assert part.times == (0.0, 1.0)
        assert len(part.radii) == 1
        assert 0.0 < part.radii[0] < 1.0
        w = part.witnesses[0]
        assert w.margin > 0
        assert w.symmetric_count == 0

    def test_crossing_family_init8_segments_verified_by_brute_force(self):
        p = matrix_path(3, lambda t: np.diag([2 * t - 1, 3.0, -3.0]))
        part = refine_partition(p, init_samples=8)
        assert part.times[0] == 0.0 and part.times[-1] == 1.0
        # per-segment constancy of the symmetric count on a fine grid
        for w in part.witnesses:
            counts = {
                brute_window_count(p, float(t), w.radius)
                for t in np.linspace(w.t_lower, w.t_upper, 1000 // len(part.witnesses) + 2)
            }
            assert counts == {w.symmetric_count}

    def test_spectrum_avoiding_window_stays_single_segment(self):
        # one eigenvalue dips to exactly 1 at t=3/4, the other sits at -3;
        # the certified radius must separate the curve from zero with a
        # genuine margin (so it lands strictly inside (0, 1))
        p = matrix_path(2, lambda t: np.diag([np.sin(2 * np.pi * t) + 2.0, -3.0]))
        part = refine_partition(p, init_samples=1)
        assert len(part.witnesses) == 1
        w = part.witnesses[0]
        assert 0.0 < w.radius < 1.0
        assert w.margin > 0
        assert w.symmetric_count == 0
        # brute force: no eigenvalue magnitude below the certified margin gap
        for t in np.linspace(0.0, 1.0, 1000):
            assert brute_window_count(p, float(t), w.radius) == 0

    def test_degenerate_path_depth_exceeded(self):
        p = matrix_path(1, lambda t: np.zeros((1, 1)))
        with pytest.raises(DepthExceeded):
            refine_partition(p, init_samples=1, max_depth=6)

    def test_radius_certified_at_all_witnesses(self):
        p = random_family(6, seed=3)
        part = refine_partition(p)
        for w in part.witnesses:
            for t in w.grid:
                vals = np.linalg.eigvalsh(p.at(t).entries)
                assert np.abs(np.abs(vals) - w.radius).min() >= w.margin * (1 - 1e-12)


class TestSpectralFlow:
    def test_constant_invertible_path_zero(self):
        p = matrix_path(2, lambda t: np.diag([2.0, -2.0]))
        assert spectral_flow(p).flow == 0

    def test_single_upward_crossing(self):
        p = matrix_path(3, lambda t: np.diag([2 * t - 1, 5.0, -5.0]))
        cert = spectral_flow(p)
        assert cert.flow == 1 == oracle_flow(p).flow
        cert.verify(p)

    def test_single_downward_crossing(self):
        p = matrix_path(3, lambda t: np.diag([1 - 2 * t, 5.0, -5.0]))
        assert spectral_flow(p).flow == -1 == oracle_flow(p).flow

    def test_baer_family_m3(self):
        p = baer_family(BaerFamilySpec(m=3))
        cert = spectral_flow(p)
        assert cert.flow == 4 == oracle_flow(p).flow
        cert.verify(p)

    def test_zero_eigenvalue_at_endpoint_allowed(self):
        # eigenvalue starts exactly at 0 and moves up: counted at t=0
        # (interval closed at 0), so the net flow is 0
        p = matrix_path(2, lambda t: np.diag([t, 5.0]))
        assert spectral_flow(p).flow == 0

    def test_zero_eigenvalue_leaving_downward(self):
        p = matrix_path(2, lambda t: np.diag([-t, 5.0]))
        assert spectral_flow(p).flow == -1

    def test_telescoping_recorded(self):
        p = random_family(5, seed=9)
        cert = spectral_flow(p)
        assert cert.flow == sum(hi - lo for lo, hi in cert.counts)
        assert len(cert.counts) == len(cert.radii) == len(cert.times) - 1

    @given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=12))
    @settings(max_examples=100)
    def test_partition_independence(self, seed, dim):
        p = random_family(dim, seed)
        f1 = spectral_flow(p, init_samples=1).flow
        f2 = spectral_flow(p, init_samples=7).flow
        assert f1 == f2
        assert f1 == brute_endpoint_flow(p)

    def test_matches_oracle_on_random_families(self):
        for seed in range(25):
            p = random_family(2 + seed % 11, seed, invertible_ends=True)
            assert spectral_flow(p).flow == oracle_flow(p, grid=256).flow

    def test_options_validation(self):
        with pytest.raises(ValueError):
            FlowOptions(init_samples=0)
        with pytest.raises(ValueError):
            FlowOptions(witness_points=1)
        with pytest.raises(ValueError):
            FlowOptions(cluster_tol=0.0)
