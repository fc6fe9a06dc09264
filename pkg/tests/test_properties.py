"""Flow-axiom property suites and their failure reporting."""

from __future__ import annotations

import specflow.properties as properties_module
from specflow import check_flow_properties
from specflow.flow import FlowCertificate, FlowOptions, spectral_flow


class TestCheckFlowProperties:
    def test_small_run_passes(self):
        report = check_flow_properties(
            seed=5, invertible_paths=8, concat_pairs=8, homotopies=4, slices=5
        )
        assert report.passed
        names = [c.name for c in report.checks]
        assert names == [
            "invertible-paths-zero-flow",
            "concatenation-additivity",
            "reversal-antisymmetry",
            "affine-homotopy-invariance",
        ]
        assert [c.cases for c in report.checks] == [8, 8, 8, 4]

    def test_failures_list_offending_seed(self, monkeypatch):
        # sabotage the flow computation for exactly one case seed and make
        # sure that seed (and only that seed) lands in the failure list
        target = 7 * 100000 + 3  # seed=7, invertible-path case index 3
        real_flow = spectral_flow
        state = {"armed": True}

        def lying_flow(path, options=None, **kw):
            cert = real_flow(path, options, **kw)
            if state.get("poison") == id(path) and state["armed"]:
                state["armed"] = False
                return FlowCertificate(
                    times=cert.times,
                    radii=cert.radii,
                    witnesses=cert.witnesses,
                    counts=cert.counts,
                    flow=cert.flow + 1,
                    options=cert.options or FlowOptions(),
                )
            return cert

        real_family = properties_module.invertible_valued_family

        def tagging_family(dim, seed):
            p = real_family(dim, seed)
            if seed == target:
                state["poison"] = id(p)
            return p

        monkeypatch.setattr(properties_module, "spectral_flow", lying_flow)
        monkeypatch.setattr(properties_module, "invertible_valued_family", tagging_family)
        report = check_flow_properties(
            seed=7, invertible_paths=6, concat_pairs=2, homotopies=1, slices=3
        )
        zero_check = report.checks[0]
        assert zero_check.failures == (target,)
        assert not report.passed

    def test_deterministic_at_fixed_seed(self):
        a = check_flow_properties(seed=1, invertible_paths=5, concat_pairs=5, homotopies=2)
        b = check_flow_properties(seed=1, invertible_paths=5, concat_pairs=5, homotopies=2)
        assert a == b
