"""Hypothesis-pair builders and their closed-form Williamson data."""

import numpy as np
import pytest

from qillum import (
    ScenarioParams,
    build_hypotheses,
    log_negativity,
    symplectic_eigenvalues,
    tms_hypotheses,
    tms_probe,
    tmsv_covariance,
    tmsv_hypotheses,
    tss_hypotheses,
    tss_probe,
)
from qillum.scenarios import tms_closed_form


def random_params(rng, kind):
    kwargs = {}
    if kind == "tss":
        kwargs = {"r1": rng.uniform(0, 2), "r2": rng.uniform(0, 2)}
    elif kind == "tms":
        kwargs = {"r": rng.uniform(0, 2)}
    return ScenarioParams(
        kind=kind,
        n_s=rng.uniform(0.001, 2.0),
        n_b=rng.uniform(0.1, 50.0),
        kappa=rng.uniform(0.0, 0.5),
        **kwargs,
    )


class TestScenarioParams:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            ScenarioParams(kind="coherent", n_s=0.1, n_b=1.0, kappa=0.1)

    def test_rejects_kappa_one(self):
        with pytest.raises(ValueError):
            ScenarioParams(kind="tmsv", n_s=0.1, n_b=1.0, kappa=1.0)

    def test_rejects_foreign_squeeze_params(self):
        with pytest.raises(ValueError):
            ScenarioParams(kind="tmsv", n_s=0.1, n_b=1.0, kappa=0.1, r1=0.3)
        with pytest.raises(ValueError):
            ScenarioParams(kind="tss", n_s=0.1, n_b=1.0, kappa=0.1, r=0.3)

    def test_rejects_bad_copy_count(self):
        with pytest.raises(ValueError):
            ScenarioParams(kind="tmsv", n_s=0.1, n_b=1.0, kappa=0.1, m_copies=0)


class TestTmsvHypotheses:
    def test_kappa_zero_collapses(self):
        pair = tmsv_hypotheses(
            ScenarioParams(kind="tmsv", n_s=0.3, n_b=2.0, kappa=0.0)
        )
        assert np.array_equal(pair.v0.entries, pair.v1.entries)

    def test_v1_off_diagonal(self):
        pair = tmsv_hypotheses(
            ScenarioParams(kind="tmsv", n_s=1.0, n_b=5.0, kappa=0.1)
        )
        expected = np.sqrt(0.1) * 2.0 * np.sqrt(2.0)
        assert pair.v1.entries[0, 2] == pytest.approx(expected, rel=1e-12)
        assert pair.v1.entries[1, 3] == pytest.approx(-expected, rel=1e-12)

    def test_v0_structure(self):
        pair = tmsv_hypotheses(
            ScenarioParams(kind="tmsv", n_s=0.25, n_b=3.0, kappa=0.2)
        )
        a, b = 1.5, 7.0
        assert np.allclose(pair.v0.entries, np.diag([b, b, a, a]))
        assert np.allclose(
            sorted(pair.w0.sympl_eigenvalues, reverse=True), [b, a]
        )

    def test_random_draws_physical(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            pair = build_hypotheses(random_params(rng, "tmsv"))
            assert min(symplectic_eigenvalues(pair.v1)) >= 1.0 - 1e-9


class TestTssProbe:
    def test_reduces_to_tmsv(self):
        cov, photons = tss_probe(0.2, 0.0, 0.0)
        assert np.allclose(cov.entries, tmsv_covariance(0.2).entries)
        assert photons.signal == pytest.approx(0.2)
        assert photons.idler == pytest.approx(0.2)

    def test_signal_photon_number(self):
        _, photons = tss_probe(0.1, 0.5, 0.0)
        n1 = np.sinh(0.5) ** 2
        assert photons.signal == pytest.approx(0.1 + 2 * n1 * 0.1 + n1, rel=1e-12)
        assert photons.signal == pytest.approx(0.4258484, abs=1e-6)

    def test_photon_numbers_differ_iff_asymmetric(self):
        _, symmetric = tss_probe(0.3, 0.4, 0.4)
        assert symmetric.signal == pytest.approx(symmetric.idler)
        _, asymmetric = tss_probe(0.3, 0.4, 0.1)
        assert asymmetric.signal != pytest.approx(asymmetric.idler)

    def test_entanglement_matches_tmsv(self):
        cov, _ = tss_probe(0.1, 0.7, 0.3)
        assert log_negativity(cov) == pytest.approx(
            log_negativity(tmsv_covariance(0.1)), abs=1e-9
        )


class TestTssHypotheses:
    def test_zero_squeeze_matches_tmsv(self):
        base = dict(n_s=0.15, n_b=4.0, kappa=0.08)
        tss = tss_hypotheses(ScenarioParams(kind="tss", **base))
        tmsv = tmsv_hypotheses(ScenarioParams(kind="tmsv", **base))
        assert np.max(np.abs(tss.v1.entries - tmsv.v1.entries)) < 1e-12

    def test_eigenvalues_match_numeric(self):
        pair = tss_hypotheses(
            ScenarioParams(kind="tss", n_s=0.1, n_b=10.0, kappa=0.05, r1=0.4, r2=0.2)
        )
        closed = sorted(pair.w1.sympl_eigenvalues, reverse=True)
        numeric = symplectic_eigenvalues(pair.v1)
        assert np.allclose(closed, numeric, rtol=1e-9)

    def test_eigenvalues_independent_of_r2(self):
        results = []
        for r2 in (0.0, 0.5, 1.0):
            pair = tss_hypotheses(
                ScenarioParams(kind="tss", n_s=0.2, n_b=8.0, kappa=0.1, r1=0.3, r2=r2)
            )
            results.append(sorted(pair.w1.sympl_eigenvalues))
        assert np.allclose(results[0], results[1], rtol=1e-12)
        assert np.allclose(results[0], results[2], rtol=1e-12)

    def test_transform_reduces_to_two_mode_pattern_at_zero_squeeze(self):
        params = ScenarioParams(kind="tmsv", n_s=0.1, n_b=5.0, kappa=0.05)
        cf = tmsv_hypotheses(params).closed_form
        a, b = 1.2, 11.0
        c = 2.0 * np.sqrt(0.1 * 1.1)
        tm = tms_closed_form(a, b, c, 0.05)
        assert float(cf.y1) == pytest.approx(float(tm.x_plus), abs=1e-9)
        assert float(cf.y2) == pytest.approx(float(tm.x_plus), abs=1e-9)
        assert float(cf.y3) == pytest.approx(float(tm.x_plus), abs=1e-9)
        assert float(cf.y4) == pytest.approx(float(tm.x_plus), abs=1e-9)
        assert float(cf.y5) == pytest.approx(float(tm.x_minus), abs=1e-9)
        assert float(cf.y5p) == pytest.approx(float(tm.x_minus), abs=1e-9)
        assert float(cf.y6) == pytest.approx(-float(tm.x_minus), abs=1e-9)
        assert float(cf.y6p) == pytest.approx(-float(tm.x_minus), abs=1e-9)

    def test_v0_transform_structure(self):
        pair = tss_hypotheses(
            ScenarioParams(kind="tss", n_s=0.1, n_b=5.0, kappa=0.05, r2=0.3)
        )
        zeta = np.exp(-0.3)
        assert np.allclose(
            pair.w0.transform.entries,
            np.diag([1.0, 1.0, 1.0 / zeta, zeta]),
            rtol=1e-12,
        )


class TestTmsProbe:
    def test_reduces_to_tmsv(self):
        cov, photons = tms_probe(0.2, 0.0)
        assert np.allclose(cov.entries, tmsv_covariance(0.2).entries)
        assert photons.signal == pytest.approx(0.2)

    def test_purity_identity(self):
        cov, _ = tms_probe(0.3, 0.6)
        a_t = cov.entries[0, 0]
        c_t = cov.entries[0, 2]
        assert a_t * a_t - c_t * c_t == pytest.approx(1.0, abs=1e-9)

    def test_entanglement_excess(self):
        r = 0.4
        cov, _ = tms_probe(0.1, r)
        excess = log_negativity(cov) - log_negativity(tmsv_covariance(0.1))
        assert excess == pytest.approx(2 * r * np.log2(np.e), abs=1e-9)


class TestTmsHypotheses:
    def test_kappa_zero_collapses(self):
        pair = tms_hypotheses(
            ScenarioParams(kind="tms", n_s=0.3, n_b=2.0, kappa=0.0, r=0.5)
        )
        assert np.array_equal(pair.v0.entries, pair.v1.entries)

    def test_reassembly(self):
        pair = tms_hypotheses(
            ScenarioParams(kind="tms", n_s=0.1, n_b=5.0, kappa=0.05, r=0.3)
        )
        rel = np.linalg.norm(
            pair.w1.reassemble() - pair.v1.entries
        ) / np.linalg.norm(pair.v1.entries)
        assert rel < 1e-8

    def test_transform_hyperbolic_normalization(self):
        cf = tms_hypotheses(
            ScenarioParams(kind="tms", n_s=0.1, n_b=5.0, kappa=0.05, r=0.3)
        ).closed_form
        assert float(cf.x_plus) ** 2 - float(cf.x_minus) ** 2 == pytest.approx(
            1.0, abs=1e-9
        )

    def test_eigenvalues_match_numeric(self):
        pair = tms_hypotheses(
            ScenarioParams(kind="tms", n_s=0.1, n_b=5.0, kappa=0.05, r=0.2)
        )
        closed = sorted(pair.w1.sympl_eigenvalues, reverse=True)
        assert np.allclose(closed, symplectic_eigenvalues(pair.v1), rtol=1e-9)

    def test_zero_squeeze_matches_tmsv(self):
        base = dict(n_s=0.15, n_b=4.0, kappa=0.08)
        tms = tms_hypotheses(ScenarioParams(kind="tms", **base))
        tmsv = tmsv_hypotheses(ScenarioParams(kind="tmsv", **base))
        assert np.max(np.abs(tms.v1.entries - tmsv.v1.entries)) < 1e-12


class TestRandomSweeps:
    def test_all_kinds_physical_and_collapsing(self):
        rng = np.random.default_rng(17)
        for kind in ("tmsv", "tss", "tms"):
            for _ in range(60):
                params = random_params(rng, kind)
                pair = build_hypotheses(params)
                assert min(symplectic_eigenvalues(pair.v0)) >= 1.0 - 1e-9
                assert min(symplectic_eigenvalues(pair.v1)) >= 1.0 - 1e-9
                kwargs = {
                    "kind": kind, "n_s": params.n_s, "n_b": params.n_b,
                    "kappa": 0.0, "r1": params.r1, "r2": params.r2,
                    "r": params.r,
                }
                collapsed = build_hypotheses(ScenarioParams(**kwargs))
                assert np.max(
                    np.abs(collapsed.v1.entries - collapsed.v0.entries)
                ) < 1e-10

    def test_closed_form_agrees_with_generic(self):
        rng = np.random.default_rng(29)
        for kind in ("tmsv", "tss", "tms"):
            for _ in range(20):
                params = random_params(rng, kind)
                pair = build_hypotheses(params)
                if pair.closed_form is None:
                    continue
                closed = sorted(pair.w1.sympl_eigenvalues)
                numeric = sorted(symplectic_eigenvalues(pair.v1))
                assert np.allclose(closed, numeric, rtol=1e-9)
                rel = np.linalg.norm(
                    pair.w1.reassemble() - pair.v1.entries
                ) / np.linalg.norm(pair.v1.entries)
                assert rel < 1e-8
