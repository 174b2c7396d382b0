"""Two-amplifier switching schedules: SE/EE accounting and the frontier."""

import math
from dataclasses import replace

import numpy as np
import pytest

from ofdmsee import (
    Duplex,
    PasConfig,
    pa_with_loss,
    pas_ee,
    pas_ee_harmonic,
    pas_frontier,
    pas_se,
    se,
    se_ideal,
    single_pa_curve,
)


@pytest.fixture(scope="module")
def base_config(arm_low, arm_high):
    return PasConfig(
        pa_low=arm_low,
        pa_high=arm_high,
        frame_length=0.01,
        frame_count=20,
        kappa=0.65,
        insertion_loss_db=1.0,
        switching_time=1e-5,
        duplex=Duplex.FDD,
    )


class TestConfig:
    def test_schedule_quantization(self, base_config):
        assert base_config.f_ind == 13
        assert base_config.kappa_quantized == pytest.approx(0.65)
        cfg = replace(base_config, kappa=0.633)
        assert cfg.f_ind == 13  # rounds to the nearest frame count

    def test_switch_overhead_vanishes_for_tdd(self, base_config):
        cfg = replace(base_config, duplex=Duplex.TDD)
        assert cfg.eps_eff == 0.0

    def test_switch_overhead_vanishes_for_pure_schedules(self, base_config):
        for kappa in (0.0, 1.0):
            cfg = replace(base_config, kappa=kappa)
            assert cfg.eps_eff == 0.0

    def test_duplex_coerces_from_string(self, base_config):
        cfg = replace(base_config, duplex="tdd")
        assert cfg.duplex is Duplex.TDD

    def test_validation(self, base_config):
        with pytest.raises(ValueError):
            replace(base_config, kappa=1.5)
        with pytest.raises(ValueError):
            replace(base_config, frame_count=0)
        with pytest.raises(ValueError):
            replace(base_config, switching_time=-1e-6)


class TestInsertionLoss:
    def test_noise_scaling(self, scenario):
        noisy = pa_with_loss(scenario, 1.0)
        assert noisy.noise_variance == pytest.approx(
            scenario.noise_variance * 10 ** 0.1, rel=1e-14
        )
        assert noisy.gamma == pytest.approx(scenario.gamma / 10 ** 0.1, rel=1e-14)

    def test_zero_loss_is_identity(self, scenario):
        assert pa_with_loss(scenario, 0.0) is scenario

    def test_arm_passthrough(self, arm_low):
        noisy = pa_with_loss(arm_low, 2.0)
        assert noisy.spec is arm_low.spec
        assert noisy.scenario.noise_variance == pytest.approx(
            arm_low.scenario.noise_variance * 10 ** 0.2, rel=1e-14
        )

    def test_negative_loss_rejected(self, scenario):
        with pytest.raises(ValueError):
            pa_with_loss(scenario, -0.5)


class TestScheduleAverages:
    def test_pure_low_schedule_is_the_low_arm(self, base_config):
        cfg = replace(base_config, kappa=1.0)
        arm = pa_with_loss(cfg.pa_low, cfg.insertion_loss_db)
        assert pas_se(0.3, cfg) == pytest.approx(se(0.3, arm.scenario), rel=1e-12)

    def test_pure_high_schedule_is_the_high_arm(self, base_config):
        cfg = replace(base_config, kappa=0.0)
        arm = pa_with_loss(cfg.pa_high, cfg.insertion_loss_db)
        assert pas_se(0.3, cfg) == pytest.approx(se(0.3, arm.scenario), rel=1e-12)

    def test_se_is_time_share_between_arms(self, base_config):
        cfg = replace(base_config, duplex=Duplex.TDD)  # no dead-time prefactor
        lo = pa_with_loss(cfg.pa_low, 1.0)
        hi = pa_with_loss(cfg.pa_high, 1.0)
        want = 0.65 * se(0.3, lo.scenario) + 0.35 * se(0.3, hi.scenario)
        assert pas_se(0.3, cfg) == pytest.approx(want, rel=1e-12)

    def test_dead_time_prefactor(self, base_config):
        # eps = 10 us against a 200 ms window scales SE by 20000/20001
        tdd = replace(base_config, duplex=Duplex.TDD)
        fdd = base_config
        k, t, eps = 20, 0.01, 1e-5
        want = (k * t) / (k * t + eps)
        assert pas_se(0.3, fdd) / pas_se(0.3, tdd) == pytest.approx(want, rel=1e-12)

    def test_linear_mode_uses_ideal_curves(self, base_config):
        cfg = replace(base_config, duplex=Duplex.TDD)
        lo = pa_with_loss(cfg.pa_low, 1.0)
        hi = pa_with_loss(cfg.pa_high, 1.0)
        want = 0.65 * se_ideal(0.3, lo.scenario) + 0.35 * se_ideal(0.3, hi.scenario)
        assert pas_se(0.3, cfg, linear=True) == pytest.approx(want, rel=1e-12)

    def test_ee_equals_harmonic_combination(self, base_config):
        for kappa in (0.0, 0.2, 0.65, 1.0):
            for eps in (0.0, 1e-5, 1e-3):
                cfg = replace(base_config, kappa=kappa, switching_time=eps)
                direct = pas_ee(0.3, cfg)
                harmonic = pas_ee_harmonic(0.3, cfg)
                assert direct == pytest.approx(harmonic, rel=1e-12), (kappa, eps)

    def test_ee_decreases_with_dead_time(self, base_config):
        es = (0.0, 1e-5, 1e-4, 1e-3)
        vals = [pas_ee(0.3, replace(base_config, switching_time=e)) for e in es]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_tdd_never_worse_than_fdd(self, base_config):
        fdd = replace(base_config, switching_time=1e-3)
        tdd = replace(fdd, duplex=Duplex.TDD)
        assert pas_ee(0.3, tdd) >= pas_ee(0.3, fdd)
        assert pas_se(0.3, tdd) >= pas_se(0.3, fdd)

    def test_per_arm_loadings(self, base_config):
        cfg = replace(base_config, duplex=Duplex.TDD)
        lo = pa_with_loss(cfg.pa_low, 1.0)
        hi = pa_with_loss(cfg.pa_high, 1.0)
        want = 0.65 * se(0.4, lo.scenario) + 0.35 * se(0.15, hi.scenario)
        assert pas_se((0.4, 0.15), cfg) == pytest.approx(want, rel=1e-12)


class TestSinglePaCurve:
    def test_columns(self, arm_low):
        xis = np.asarray([0.1, 0.3])
        data = single_pa_curve(arm_low, xis)
        assert set(data) == {"xi", "se", "ee", "pc_watts"}
        assert data["se"][0] == pytest.approx(se(0.1, arm_low.scenario), rel=1e-12)

    def test_loss_lowers_se(self, arm_low):
        xis = np.asarray([0.2])
        clean = single_pa_curve(arm_low, xis)
        lossy = single_pa_curve(arm_low, xis, insertion_loss_db=1.0)
        assert lossy["se"][0] < clean["se"][0]


@pytest.fixture(scope="module")
def tdd_clean(arm_low, arm_high):
    return PasConfig(
        pa_low=arm_low,
        pa_high=arm_high,
        frame_length=0.01,
        frame_count=20,
        kappa=0.0,
        insertion_loss_db=0.0,
        switching_time=0.0,
        duplex=Duplex.TDD,
    )


@pytest.fixture(scope="module")
def grid():
    return np.geomspace(0.02, 1.0, 20)


class TestFrontier:
    def test_meets_targets_and_monotone(self, tdd_clean, grid):
        targets = [8.0, 12.0, 14.0, 15.5, 16.5]
        pts = pas_frontier(targets, tdd_clean, xi_grid=grid)
        for t, p in zip(targets, pts):
            assert p.feasible
            assert p.se >= t - 1e-9
        ees = [p.ee for p in pts]
        assert all(b <= a + 1e-9 for a, b in zip(ees, ees[1:]))

    def test_infeasible_target_flagged(self, tdd_clean, grid):
        pts = pas_frontier([25.0], tdd_clean, xi_grid=grid)
        assert not pts[0].feasible
        assert math.isnan(pts[0].ee)

    def test_kappa_on_lattice(self, tdd_clean, grid):
        pts = pas_frontier([10.0, 15.0], tdd_clean, xi_grid=grid)
        for p in pts:
            if p.feasible:
                assert p.kappa == pytest.approx(round(p.kappa * 20) / 20, abs=1e-12)

    def test_per_pa_mode_at_least_as_good(self, tdd_clean, grid):
        targets = [14.0, 16.0]
        shared = pas_frontier(targets, tdd_clean, xi_mode="shared", xi_grid=grid)
        per_pa = pas_frontier(targets, tdd_clean, xi_mode="per_pa", xi_grid=grid)
        for s, p in zip(shared, per_pa):
            assert p.ee >= s.ee - 1e-9

    def test_dominates_single_arms(self, tdd_clean, grid):
        # with no switching penalty the schedule can always fall back to
        # running one arm full time, so it cannot lose to either single curve
        low_curve = single_pa_curve(tdd_clean.pa_low, grid)
        high_curve = single_pa_curve(tdd_clean.pa_high, grid)
        targets = [10.0, 13.0, 15.0, 16.5]
        pts = pas_frontier(targets, tdd_clean, xi_grid=grid)
        for t, p in zip(targets, pts):
            for curve in (low_curve, high_curve):
                ok = np.asarray(curve["se"]) >= t - 1e-9
                if np.any(ok):
                    best = float(np.max(np.asarray(curve["ee"])[ok]))
                    assert p.ee >= best - 1e-9

    def test_bad_mode_rejected(self, tdd_clean, grid):
        with pytest.raises(ValueError):
            pas_frontier([10.0], tdd_clean, xi_mode="other", xi_grid=grid)
