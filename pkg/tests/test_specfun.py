"""Special-function kernels against scipy oracles and frozen references."""

import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special
import scipy.stats

from ofdmsee import (
    IntegrationError,
    WBranch,
    adaptive_simpson,
    bessel_i0,
    bessel_i0e,
    gauss_panels,
    integrate_radial,
    lambert_w,
    marcum_q1,
    marcum_q1_complement,
)


def scipy_marcum_q1(a, b):
    # Q1(a, b) is the survival function of a noncentral chi-square with
    # 2 degrees of freedom and noncentrality a^2, evaluated at b^2
    return scipy.stats.ncx2.sf(b * b, df=2, nc=a * a)


class TestBessel:
    def test_reference_values(self):
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520084, rel=1e-13)
        assert bessel_i0(2.0) == pytest.approx(2.2795853023360673, rel=1e-13)
        assert bessel_i0(0.0) == 1.0

    def test_matches_scipy_across_regimes(self):
        x = np.concatenate([np.linspace(0.0, 17.9, 40), np.geomspace(18.1, 600.0, 40)])
        ours = np.asarray([bessel_i0e(v) for v in x])
        ref = scipy.special.i0e(x)
        np.testing.assert_allclose(ours, ref, rtol=1e-12)

    def test_scaled_matches_unscaled(self):
        for v in (0.5, 3.0, 10.0, 40.0):
            assert bessel_i0e(v) == pytest.approx(bessel_i0(v) * math.exp(-v), rel=1e-12)

    def test_no_overflow_at_large_argument(self):
        assert 0.0 < bessel_i0e(50000.0) < 1.0

    def test_negative_argument_is_even(self):
        assert bessel_i0(-3.0) == pytest.approx(bessel_i0(3.0), rel=1e-14)


class TestMarcumQ1:
    def test_reference_values(self):
        # Q1(0, b) = exp(-b^2/2)
        assert marcum_q1(0.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
        # b = 0 means the threshold is never exceeded from below
        assert marcum_q1(1.5, 0.0) == pytest.approx(1.0, rel=1e-14)
        assert marcum_q1(1.0, 2.0) == pytest.approx(scipy_marcum_q1(1.0, 2.0), rel=1e-10)

    def test_grid_against_scipy(self):
        a_grid = np.geomspace(0.05, 60.0, 12)
        b_grid = np.geomspace(0.05, 60.0, 12)
        for a in a_grid:
            for b in b_grid:
                ref = scipy_marcum_q1(a, b)
                got = marcum_q1(a, b)
                assert got == pytest.approx(ref, abs=1e-8), (a, b)

    def test_complement_consistency(self):
        for a, b in [(0.3, 1.0), (2.0, 2.5), (8.0, 7.0), (30.0, 31.0)]:
            q = marcum_q1(a, b)
            c = marcum_q1_complement(a, b)
            assert q + c == pytest.approx(1.0, abs=1e-10)
            assert 0.0 <= c <= 1.0

    def test_complement_tiny_tail_region(self):
        # far into the right tail Q1 -> 1 and the complement must stay
        # accurate in absolute terms rather than cancelling to 0
        a, b = 50.0, 10.0
        ref = 1.0 - scipy_marcum_q1(a, b)
        assert marcum_q1_complement(a, b) == pytest.approx(ref, abs=1e-12)


class TestLambertW:
    def test_reference_value(self):
        assert lambert_w(1.0, WBranch.PRINCIPAL) == pytest.approx(
            0.5671432904097838, rel=1e-12
        )

    def test_principal_branch_against_scipy(self):
        q = np.concatenate([np.geomspace(1e-8, 100.0, 50), [-0.05, -0.2, -1 / math.e + 1e-9]])
        for v in q:
            ref = float(scipy.special.lambertw(v, 0).real)
            assert lambert_w(v, WBranch.PRINCIPAL) == pytest.approx(ref, rel=1e-10, abs=1e-12)

    def test_lower_branch_against_scipy(self):
        # scipy's own iteration stalls within ~1e-8 of the branch point
        # (its residual there is ~1e-10), so compare at a safe distance;
        # the defining-identity test covers the near-branch region
        q = -np.geomspace(1e-8, 1 / math.e - 1e-6, 50)
        for v in q:
            ref = float(scipy.special.lambertw(v, -1).real)
            assert lambert_w(v, WBranch.LOWER_NEGATIVE) == pytest.approx(ref, rel=1e-10)

    def test_branch_point_beats_naive_iteration(self):
        # within 1e-10 of -1/e the identity must still hold to machine level
        q = -(1 / math.e - 1e-10)
        for branch in (WBranch.PRINCIPAL, WBranch.LOWER_NEGATIVE):
            w = lambert_w(q, branch)
            assert abs(w * math.exp(w) - q) <= 1e-15

    def test_defining_identity_residual(self):
        for v in np.geomspace(1e-6, 50.0, 200):
            w = lambert_w(v, WBranch.PRINCIPAL)
            assert abs(w * math.exp(w) - v) <= 1e-12 * max(1.0, abs(v))
        for v in -np.geomspace(1e-6, 1 / math.e - 1e-9, 200):
            w = lambert_w(v, WBranch.LOWER_NEGATIVE)
            assert abs(w * math.exp(w) - v) <= 1e-12 * max(1.0, abs(v))

    def test_lower_branch_rejects_positive(self):
        with pytest.raises(ValueError):
            lambert_w(0.5, WBranch.LOWER_NEGATIVE)

    def test_out_of_domain_raises(self):
        with pytest.raises(ValueError):
            lambert_w(-1.0, WBranch.PRINCIPAL)


class TestQuadrature:
    def test_simpson_matches_quad(self):
        f = lambda x: math.exp(-x) * math.sin(3 * x)
        ref, _ = scipy.integrate.quad(f, 0.0, 4.0)
        got = adaptive_simpson(f, 0.0, 4.0, tol=1e-11)
        assert got == pytest.approx(ref, abs=1e-10)

    def test_simpson_error_object_carries_estimate(self):
        # a needle the maximum depth cannot resolve at the requested tol
        f = lambda x: 1.0 / math.sqrt(abs(x - 0.123456789) + 1e-300)
        with pytest.raises(IntegrationError) as info:
            adaptive_simpson(f, 0.0, 1.0, tol=1e-14)
        assert math.isfinite(info.value.estimate)
        assert info.value.error_bound > 0.0

    def test_gauss_panels_polynomial_exactness(self):
        # degree-9 polynomial is exact for order-32 nodes
        f = lambda x: 3 * x**9 - x**4 + 2.0
        edges = np.asarray([0.0, 0.3, 1.0, 2.0])
        got = gauss_panels(f, edges, order=32, check=False)
        ref = 3 * 2.0**10 / 10 - 2.0**5 / 5 + 2.0 * 2.0
        assert got == pytest.approx(ref, rel=1e-14)

    def test_gauss_panels_refinement_converges(self):
        f = lambda x: np.exp(-np.asarray(x) ** 2)
        edges = np.linspace(0.0, 6.0, 4)
        ref = math.sqrt(math.pi) / 2 * math.erf(6.0)
        got = gauss_panels(f, edges, order=32, check=True, tol=1e-12)
        assert got == pytest.approx(ref, rel=1e-12)

    def test_integrate_radial_gaussian_mass(self):
        # 2D isotropic Gaussian integrates to 1 in polar coordinates
        s2 = 0.7
        f = lambda r: 2 * np.pi * np.asarray(r) * np.exp(-np.asarray(r) ** 2 / s2) / (np.pi * s2)
        got = integrate_radial(f, 40.0 * math.sqrt(s2), tol=1e-10)
        assert got == pytest.approx(1.0, abs=1e-9)
