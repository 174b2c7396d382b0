"""Received-signal statistics, spectral efficiency, and loading optimizers."""

import math
import warnings

import numpy as np
import pytest
import scipy.integrate

from ofdmsee import (
    ChannelProfile,
    build_scenario,
    clip_probability,
    entropy_y,
    multipath_equiv_gain,
    noise_entropy,
    pdf_clipped,
    pdf_radial,
    pdf_unclipped,
    pdf_unclipped_closed,
    se,
    se_ibo,
    se_ideal,
    se_lower_bound_multipath,
    se_sweep,
    xi_se_opt,
)


class TestScenario:
    def test_reference_link_budget(self, scenario):
        # 44 dBm PA, 55 dB gain, G = 5 dB, alpha = 3.76, d = 200 m,
        # -174 dBm/Hz over 10 MHz
        assert scenario.attenuation_db == pytest.approx(-96.7187278369657, abs=1e-10)
        assert scenario.noise_variance == pytest.approx(1.870134248498386e-4, rel=1e-12)
        assert 10 * math.log10(scenario.gamma) == pytest.approx(51.281272163034295, abs=1e-9)

    def test_signal_power_identity(self, scenario):
        # amplifier input loading xi puts xi * p_max_out at the (virtual)
        # linear output: g * P_in = xi * p_max_out
        for xi in (0.05, 0.4, 1.0):
            assert scenario.signal_power(xi) == pytest.approx(
                xi * scenario.p_max_out, rel=1e-12
            )

    def test_noise_entropy_matches_gaussian(self, scenario):
        want = math.log2(math.pi * math.e * scenario.noise_variance)
        assert noise_entropy(scenario) == pytest.approx(want, rel=1e-14)


class TestRadialPdf:
    @pytest.mark.parametrize("xi", [0.01, 0.1, 0.5, 1.0])
    def test_total_mass_one(self, xi, scenario):
        from ofdmsee.se_engine import _entropy_edges
        from ofdmsee.specfun import gauss_panels

        edges, _ = _entropy_edges(xi, scenario)
        f = lambda r: 2 * np.pi * r * pdf_radial(r, xi, scenario)
        mass = gauss_panels(f, edges, order=32, check=True, tol=1e-9)
        assert mass == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("xi", [0.1, 0.5, 1.0])
    def test_branch_masses(self, xi, scenario):
        from ofdmsee.se_engine import _entropy_edges
        from ofdmsee.specfun import gauss_panels

        edges, _ = _entropy_edges(xi, scenario)
        pclip = clip_probability(xi)
        m0 = gauss_panels(
            lambda r: 2 * np.pi * r * pdf_unclipped(r, xi, scenario),
            edges, order=32, check=True, tol=1e-9,
        )
        m1 = gauss_panels(
            lambda r: 2 * np.pi * r * pdf_clipped(r, xi, scenario),
            edges, order=32, check=True, tol=1e-9,
        )
        assert m0 == pytest.approx(1.0 - pclip, abs=1e-6)
        assert m1 == pytest.approx(pclip, abs=1e-6)

    def test_closed_form_matches_integral(self, scenario):
        for xi in (0.05, 0.3, 1.0):
            r = np.linspace(0.0, scenario.b_max * 1.2, 100)
            a = pdf_unclipped(r, xi, scenario)
            b = pdf_unclipped_closed(r, xi, scenario)
            assert np.max(np.abs(a - b)) <= 1e-6 * np.max(a)

    def test_integral_against_scipy_quad(self, scenario):
        # independent evaluation of the folded ring integral at a few radii
        xi = 0.3
        gp = scenario.signal_power(xi)
        s2 = scenario.noise_variance
        bmax = scenario.b_max
        from ofdmsee.specfun import bessel_i0e

        import scipy.special

        for r in (0.0, 0.2 * bmax, 0.8 * bmax, 1.05 * bmax):
            def integrand(rho):
                # rho * exp(-rho^2/gp - (rho^2 + r^2)/s2) * I0(2 rho r / s2)
                # with the Bessel growth kept folded to avoid overflow
                z = 2 * rho * r / s2
                expo = -rho * rho / gp - (rho - r) ** 2 / s2
                return rho * math.exp(expo) * float(scipy.special.i0e(z))

            # the ring around rho = r is ~sqrt(s2) wide in a span of b_max;
            # split there so the adaptive rule cannot step over it
            width = 30.0 * math.sqrt(s2)
            cuts = sorted({0.0, max(0.0, r - width), min(bmax, r + width), bmax})
            ref = 0.0
            for a_cut, b_cut in zip(cuts, cuts[1:]):
                if b_cut > a_cut:
                    part, _ = scipy.integrate.quad(integrand, a_cut, b_cut, limit=400)
                    ref += part
            ref *= 2.0 / (math.pi * gp * s2)
            got = float(pdf_unclipped(r, xi, scenario))
            assert got == pytest.approx(ref, rel=1e-7, abs=1e-12), r

    def test_clipped_branch_is_a_ring(self, scenario):
        xi = 0.8
        r = np.linspace(0.0, scenario.b_max + 8 * math.sqrt(scenario.noise_variance), 600)
        f = pdf_clipped(r, xi, scenario)
        peak = r[np.argmax(f)]
        assert peak == pytest.approx(scenario.b_max, rel=1e-2)

    def test_method_dispatch(self, scenario):
        r = np.linspace(0, scenario.b_max, 8)
        a = pdf_radial(r, 0.2, scenario, method="integral")
        b = pdf_radial(r, 0.2, scenario, method="closed")
        np.testing.assert_allclose(a, b, rtol=1e-8, atol=1e-15)
        with pytest.raises(ValueError):
            pdf_radial(r, 0.2, scenario, method="other")


class TestSpectralEfficiency:
    def test_frozen_reference_points(self, scenario):
        assert se(0.1, scenario) == pytest.approx(13.71324626096657, abs=1e-6)
        assert se(0.25, scenario) == pytest.approx(14.932438933859284, abs=1e-6)
        assert entropy_y(0.25, scenario) == pytest.approx(5.642059563067989, abs=1e-6)

    def test_never_exceeds_linear_channel(self, scenario):
        for xi in (0.02, 0.1, 0.3, 0.7, 1.0):
            assert se(xi, scenario) <= se_ideal(xi, scenario) + 1e-9

    def test_ideal_is_shannon(self, scenario):
        for xi in (0.05, 0.5, 1.0):
            assert se_ideal(xi, scenario) == pytest.approx(
                math.log2(1.0 + scenario.gamma * xi), rel=1e-14
            )

    def test_ibo_deflates_by_clip_entropy_terms(self, scenario):
        # the approximation equals the ideal curve minus an exp(-1/xi) dent
        xi = 0.2
        pclip = clip_probability(xi)
        want = se_ideal(xi, scenario) + pclip * (
            1.0 / (xi * math.log(2.0))
            + math.log2(math.pi * math.e * scenario.noise_variance)
        )
        assert se_ibo(xi, scenario) == pytest.approx(want, rel=1e-12)

    def test_ibo_accuracy_window(self, scenario):
        for xi in np.linspace(0.02, 0.3, 15):
            exact = se(float(xi), scenario)
            approx = se_ibo(float(xi), scenario)
            assert abs(approx - exact) / exact <= 0.05

    def test_unimodal_in_loading(self, scenario):
        xs = np.geomspace(0.01, 0.5, 60)
        vals = np.asarray([se(float(x), scenario) for x in xs])
        d = np.diff(vals)
        signs = np.sign(d[np.abs(d) > 1e-9])
        flips = int(np.sum(np.abs(np.diff(signs)) > 0))
        assert flips <= 1

    def test_zero_floor(self, pa_low):
        # drown the link in noise: the exact SE must clamp at (numerical) zero
        bad = build_scenario(5.0, 3.76, 60.0, -100.0, 1e7, pa_low)
        val = se(1.0, bad)
        assert 0.0 <= val <= 1e-9


class TestLoadingOptimizer:
    def test_closed_form_frozen(self, scenario):
        assert xi_se_opt(scenario, method="closed_form") == pytest.approx(
            0.33998254576117515, rel=1e-10
        )

    def test_exact_root_frozen(self, scenario):
        assert xi_se_opt(scenario, method="exact_root") == pytest.approx(
            0.39731338470791205, rel=1e-9
        )

    def test_methods_land_within_twenty_percent(self, scenario):
        cf = xi_se_opt(scenario, method="closed_form")
        ex = xi_se_opt(scenario, method="exact_root")
        assert abs(ex - cf) / ex <= 0.20

    def test_exact_root_is_stationary(self, scenario):
        xi = xi_se_opt(scenario, method="exact_root")
        h = 1e-6
        f = lambda x: se_ibo(x, scenario)
        deriv = (f(xi + h) - f(xi - h)) / (2 * h)
        scale = abs(f(xi)) / xi
        assert abs(deriv) <= 1e-4 * scale

    def test_near_grid_best(self, scenario):
        xs = np.geomspace(0.05, 0.5, 120)
        best = max(se_ibo(float(x), scenario) for x in xs)
        got = se_ibo(xi_se_opt(scenario, method="exact_root"), scenario)
        assert got >= best - 1e-9

    def test_bad_method_raises(self, scenario):
        with pytest.raises(ValueError):
            xi_se_opt(scenario, method="grid")


class TestMultipath:
    def test_single_tap_reduces_to_flat(self, scenario):
        # for one unit tap the bound is exact: the clipped-link SE itself
        prof = ChannelProfile.flat()
        xi = 0.2
        bound = se_lower_bound_multipath(prof, xi, scenario)
        assert bound == pytest.approx(se(xi, scenario), rel=1e-10)

    def test_equiv_gain_single_tap(self, scenario):
        prof = ChannelProfile.flat()
        h = multipath_equiv_gain(prof, 0.2, scenario)
        assert h * h == pytest.approx(scenario.gamma * 0.2, rel=1e-12)

    def test_bound_below_flat_capacity(self, scenario):
        # dispersing energy across taps cannot beat the flat channel
        p = np.exp(-np.arange(4) / 1.5)
        p /= p.sum()
        prof = ChannelProfile(taps=tuple(np.sqrt(p).astype(complex)))
        for xi in (0.05, 0.2, 0.8):
            assert se_lower_bound_multipath(prof, xi, scenario) <= se_ideal(xi, scenario)

    def test_unit_energy_invariance_under_phase(self, scenario):
        p = np.asarray([0.5, 0.3, 0.2])
        base = tuple(np.sqrt(p).astype(complex))
        rot = tuple(np.sqrt(p) * np.exp(1j * np.asarray([0.3, -1.2, 2.0])))
        b1 = se_lower_bound_multipath(ChannelProfile(taps=base), 0.3, scenario)
        b2 = se_lower_bound_multipath(ChannelProfile(taps=rot), 0.3, scenario)
        assert b1 == pytest.approx(b2, rel=1e-12)

    def test_more_delayed_energy_lowers_bound(self, scenario):
        mild = np.asarray([0.9, 0.1])
        harsh = np.asarray([0.6, 0.4])
        b_mild = se_lower_bound_multipath(
            ChannelProfile(taps=tuple(np.sqrt(mild).astype(complex))), 0.3, scenario
        )
        b_harsh = se_lower_bound_multipath(
            ChannelProfile(taps=tuple(np.sqrt(harsh).astype(complex))), 0.3, scenario
        )
        assert b_harsh < b_mild


class TestSweep:
    def test_columns_and_shapes(self, scenario):
        grid = np.geomspace(0.05, 0.5, 7)
        data = se_sweep(scenario, grid)
        assert set(data) == {"xi", "se_exact", "se_ideal", "se_ibo", "pr_clip"}
        for key in data:
            assert np.asarray(data[key]).shape == grid.shape

    def test_rows_consistent_with_scalars(self, scenario):
        grid = np.asarray([0.1, 0.3])
        data = se_sweep(scenario, grid)
        assert data["se_exact"][0] == pytest.approx(se(0.1, scenario), rel=1e-10)
        assert data["pr_clip"][1] == pytest.approx(clip_probability(0.3), rel=1e-12)
