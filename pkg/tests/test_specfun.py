"""Tests for Bessel functions, mu, the distance and the phase function."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import special

from hkasym.errors import DomainError, PoleError
from hkasym.specfun import (
    I_SWITCHOVER,
    bessel_i_scaled,
    bessel_j,
    cc_distance_squared,
    g_function,
    g_prime,
    gamma_fn,
    mu,
    mu_from_eps,
    mu_inverse,
    mu_inverse_eps,
    mu_prime,
    reduced_bessel_j,
    remainder_r,
    s_coth_s,
    s_factor,
    saddle_phi,
    saddle_phi_prime,
    theta_eps,
)


def half_order_i_scaled(z: complex) -> complex:
    """exp(-z) I_{1/2}(z) = sqrt(2 / (pi z)) (1 - exp(-2z)) / 2."""
    return cmath.sqrt(2.0 / (math.pi * z)) * (1.0 - cmath.exp(-2.0 * z)) / 2.0


class TestBessel:
    """Tests for the Bessel and gamma wrappers."""

    @pytest.mark.parametrize("x", [0.3, 5.0, 29.0, 31.0, 80.0])
    def test_i_half_closed_form(self, x: float):
        """Test exp(-x) I_{1/2}(x) on both sides of the switchover."""
        value = bessel_i_scaled(0.5, x)

        assert value.to_number() == pytest.approx(half_order_i_scaled(x).real, rel=1e-10)

    @pytest.mark.parametrize("z", [3 + 4j, 40 + 10j])
    def test_i_half_complex(self, z: complex):
        """Test complex arguments, including the phase for large |z|."""
        value = complex(bessel_i_scaled(0.5, z))

        assert value == pytest.approx(half_order_i_scaled(z), rel=1e-9)

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.5])
    def test_integral_matches_scipy_at_switchover(self, nu: float):
        """Test the integral form agrees with scipy's ive at |z| = I_SWITCHOVER."""
        forced_quad = bessel_i_scaled(nu, I_SWITCHOVER, switchover=2 * I_SWITCHOVER)

        assert forced_quad.to_number() == pytest.approx(special.ive(nu, I_SWITCHOVER), rel=1e-10)

    def test_large_argument_limit(self):
        """Test exp(-x) I_nu(x) sqrt(2 pi x) -> 1."""
        x = 1e4
        value = bessel_i_scaled(1.0, x).to_number() * math.sqrt(2 * math.pi * x)

        assert value == pytest.approx(1.0, abs=1e-3)

    def test_i_at_origin(self):
        """Test I_0(0) = 1 and I_nu(0) = 0 for nu > 0."""
        assert bessel_i_scaled(0.0, 0.0).to_number() == pytest.approx(1.0)
        assert bessel_i_scaled(1.0, 0.0).is_zero

    def test_i_rejects_left_half_plane(self):
        """Test Re z < 0 is a domain error."""
        with pytest.raises(DomainError):
            bessel_i_scaled(0.5, -1.0)

    def test_i_rejects_small_order(self):
        """Test nu <= -1/2 is a domain error."""
        with pytest.raises(DomainError):
            bessel_i_scaled(-0.5, 1.0)

    @pytest.mark.parametrize("x", [0.5, 3.0, 20.0])
    def test_j_half_orders(self, x: float):
        """Test J_{1/2} and J_{-1/2} against sin and cos."""
        scale = math.sqrt(2.0 / (math.pi * x))

        assert bessel_j(0.5, x) == pytest.approx(scale * math.sin(x), rel=1e-10, abs=1e-14)
        assert bessel_j(-0.5, x) == pytest.approx(scale * math.cos(x), rel=1e-10, abs=1e-14)

    def test_j_domain(self):
        """Test nu < -1/2 and x < 0 are rejected."""
        with pytest.raises(DomainError):
            bessel_j(-1.0, 1.0)
        with pytest.raises(DomainError):
            bessel_j(0.5, -1.0)

    def test_reduced_j_across_series_boundary(self):
        """Test (x/2)^(-1/2) J_{1/2}(x) = 2 sin(x) / (x sqrt(pi)) near and at the origin."""
        x = np.array([0.0, 1e-4, 0.0099, 0.0101, 1.0, 7.0])
        safe = np.where(x == 0, 1.0, x)
        expected = np.where(x == 0, 1.0, np.sin(safe) / safe) * 2.0 / math.sqrt(math.pi)

        assert_allclose(reduced_bessel_j(0.5, x), expected, rtol=1e-12)

    def test_gamma(self):
        """Test gamma at a half integer and its domain."""
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi))
        with pytest.raises(DomainError):
            gamma_fn(0.0)


class TestMu:
    """Tests for mu and its inverse near pi."""

    @given(st.floats(min_value=-3.0, max_value=3.0))
    def test_mu_is_odd(self, w: float):
        """Test mu(-w) = -mu(w)."""
        assert mu(-w) == pytest.approx(-mu(w), rel=1e-12, abs=1e-15)

    def test_mu_small_argument(self):
        """Test mu(w) ~ 2w/3 near the origin."""
        assert mu(1e-3) == pytest.approx(2e-3 / 3, rel=1e-6)
        assert mu(0.0) == 0.0

    def test_mu_prime_matches_difference(self):
        """Test mu' against a central difference."""
        w, h = 1.3, 1e-5

        assert mu_prime(w) == pytest.approx((mu(w + h) - mu(w - h)) / (2 * h), rel=1e-8)

    def test_mu_is_vectorized(self):
        """Test arrays go through elementwise."""
        w = np.array([1e-3, 0.5, 2.0])

        assert_allclose(mu(w), [mu(1e-3), mu(0.5), mu(2.0)])

    def test_eps_form_agrees(self):
        """Test mu(pi - eps) in the eps variable."""
        assert mu_from_eps(0.4) == pytest.approx(mu(math.pi - 0.4), rel=1e-12)

    @given(st.floats(min_value=0.01, max_value=0.15))
    def test_inverse_round_trip(self, eps: float):
        """Test mu_inverse_eps(mu_from_eps(eps)) = eps."""
        assert mu_inverse_eps(mu_from_eps(eps)) == pytest.approx(eps, rel=1e-12)

    def test_mu_is_increasing(self):
        """Test mu rises strictly across (0, pi)."""
        w = np.linspace(1e-3, math.pi - 1e-3, 1000)

        assert np.all(np.diff(mu(w)) > 0)

    @pytest.mark.parametrize("x", np.geomspace(200.0, 1e8, 13).tolist())
    def test_inverse_round_trip_in_eps(self, x: float):
        """Test mu_from_eps(mu_inverse_eps(x)) = x across the log grid."""
        assert mu_from_eps(mu_inverse_eps(x)) == pytest.approx(x, rel=1e-12)

    @pytest.mark.parametrize("x", np.geomspace(200.0, 1e8, 13).tolist())
    def test_inverse_round_trip_in_theta(self, x: float):
        """Test mu(mu_inverse(x)) = x, limited by the rounding of theta near pi."""
        assert mu(mu_inverse(x)) == pytest.approx(x, rel=1e-11)

    def test_inverse_leading_order(self):
        """Test pi - theta ~ sqrt(pi / x) at x = 1e6."""
        eps = mu_inverse_eps(1e6)

        assert eps == pytest.approx(1.7725e-3, rel=1e-2)
        assert math.pi - mu_inverse(1e6) == pytest.approx(eps, rel=1e-9)

    def test_inverse_argument_halves(self):
        """Test arg x = 0.1 gives arg eps ~ -0.05."""
        eps = mu_inverse_eps(1e4 * cmath.exp(0.1j))

        assert cmath.phase(eps) == pytest.approx(-0.05, abs=2e-3)

    @pytest.mark.parametrize("seed", [2.5, 0.05])
    def test_inverse_from_bad_seed(self, seed: float):
        """Test seeds that overshoot out of (0, pi) still reach the root there."""
        eps = mu_inverse_eps(1e4, seed=seed)

        assert 0.0 < eps < math.pi
        assert mu_from_eps(eps) == pytest.approx(1e4, rel=1e-12)
        assert eps == pytest.approx(mu_inverse_eps(1e4), rel=1e-11)

    def test_inverse_complex(self):
        """Test a complex argument in the sector inverts."""
        x = 500.0 * cmath.exp(0.2j)

        theta = mu_inverse(x)

        assert complex(mu(theta)) == pytest.approx(x, rel=1e-10)

    def test_inverse_outside_sector(self):
        """Test |x| <= r0 is rejected."""
        with pytest.raises(DomainError):
            mu_inverse_eps(50.0)

    def test_poles(self):
        """Test mu and mu_from_eps refuse their poles."""
        with pytest.raises(PoleError):
            mu(math.pi)
        with pytest.raises(PoleError):
            mu_from_eps(0.0)


class TestDistance:
    """Tests for the Carnot-Caratheodory distance."""

    def test_vertical_points(self):
        """Test d^2(0, t) = 4 pi |t|."""
        assert cc_distance_squared(0.0, 2.0) == pytest.approx(8.0 * math.pi)

    def test_horizontal_points(self):
        """Test d^2(z, 0) = |z|^2."""
        assert cc_distance_squared(3.0, 0.0) == 3.0

    @pytest.mark.parametrize("t", [0.1, 1.0, 50.0])
    def test_exceeds_euclidean(self, t: float):
        """Test d^2 > |z|^2 once t > 0."""
        assert cc_distance_squared(1.0, t) > 1.0

    def test_large_t_approaches_vertical(self):
        """Test d^2(u, v) / (4 pi v) -> 1 as v grows."""
        deviations = [abs(cc_distance_squared(1.0, v) / (4 * math.pi * v) - 1) for v in (1e2, 1e3, 1e4)]

        assert deviations[0] > deviations[1] > deviations[2]
        assert deviations[2] < 0.02

    @pytest.mark.parametrize("z_sq, t", [(4.0, 3.0), (1.0, 50.0)])
    @pytest.mark.parametrize("h", [7.0, 0.25, 100.0])
    def test_dilation(self, z_sq: float, t: float, h: float):
        """Test d^2(z / sqrt h, t / h) = d^2(z, t) / h."""
        assert cc_distance_squared(z_sq / h, t / h) == pytest.approx(cc_distance_squared(z_sq, t) / h, rel=1e-10)

    def test_theta_eps_large_v(self):
        """Test eps sqrt(4v / (pi u)) -> 1 and d^2 / (4 pi v) -> 1 at u = 1, v = 1e4."""
        data = theta_eps(1.0, 1e4)

        assert data.eps * math.sqrt(4e4 / math.pi) == pytest.approx(1.0, rel=1e-2)
        assert data.d_squared / (4 * math.pi * 1e4) == pytest.approx(1.0, rel=2e-2)
        assert data.theta + data.eps == pytest.approx(math.pi)

    def test_agrees_with_saddle_bundle(self):
        """Test the real-axis solver and theta_eps give the same d^2."""
        assert theta_eps(1.0, 200.0).d_squared == pytest.approx(cc_distance_squared(1.0, 200.0), rel=1e-11)

    def test_negative_input(self):
        """Test negative arguments are rejected."""
        with pytest.raises(DomainError):
            cc_distance_squared(-1.0, 1.0)


class TestPhase:
    """Tests for the phase function and its decomposition."""

    @pytest.mark.parametrize("u, v", [(1.0, 1e2), (2.0, 1e2), (1.0, 1e4), (2.0, 1e4)])
    def test_saddle_value(self, u: float, v: float):
        """Test phi(i theta) = -d^2 / 4 at the saddle."""
        saddle = theta_eps(u, v)

        assert saddle_phi(u, v, 1j * saddle.theta) == pytest.approx(-saddle.d_squared / 4, rel=1e-11)

    @pytest.mark.parametrize("u, v", [(1.0, 1e2), (2.0, 1e2), (1.0, 1e4), (2.0, 1e4)])
    def test_saddle_is_stationary(self, u: float, v: float):
        """Test phi'(i theta) = 0 relative to v."""
        saddle = theta_eps(u, v)

        assert abs(saddle_phi_prime(u, v, 1j * saddle.theta)) / v < 1e-9

    @pytest.mark.parametrize("u, v", [(1.0, 1e2), (2.0, 1e2), (1.0, 1e4), (2.0, 1e4)])
    def test_v_relation(self, u: float, v: float):
        """Test v = pi u / (4 eps^2) - G'(u; eps)."""
        eps = theta_eps(u, v).eps

        assert math.pi * u / (4 * eps**2) - g_prime(u, eps).real == pytest.approx(v, rel=1e-10)

    @pytest.mark.parametrize("xi", [0.3, 0.005, 0.2 + 0.1j])
    def test_decomposition(self, xi: complex):
        """Test phi(i(pi - xi)) = -(pi - xi) v + pi u / (4 xi) + G(u; xi)."""
        u, v = 1.5, 2.0

        lhs = saddle_phi(u, v, 1j * (math.pi - xi))
        rhs = -(math.pi - xi) * v + math.pi * u / (4 * xi) + g_function(u, xi)

        assert complex(lhs) == pytest.approx(complex(rhs), rel=1e-10)

    def test_g_at_origin(self):
        """Test G(u; 0) = -u/4 and the series joins the closed form."""
        assert g_function(2.0, 0.0).real == pytest.approx(-0.5)
        assert g_function(2.0, 0.0099).real == pytest.approx(g_function(2.0, 0.0101).real, abs=1e-3)

    def test_g_prime_matches_difference(self):
        """Test G' against a central difference."""
        xi, h = 0.4, 1e-5
        difference = (g_function(1.0, xi + h) - g_function(1.0, xi - h)) / (2 * h)

        assert g_prime(1.0, xi).real == pytest.approx(difference.real, rel=1e-7)

    def test_remainder_vanishes_at_center(self):
        """Test R(eps) = 0 and R is second order around eps."""
        eps = 0.1

        assert abs(remainder_r(1.0, eps, eps)) < 1e-15
        assert abs(remainder_r(1.0, eps, eps + 1e-3)) < 1e-5

    def test_s_factor(self):
        """Test S(n; 0) = 1 and S(1; pi/2) = pi/4."""
        assert s_factor(3, 0.0).real == pytest.approx(1.0)
        assert s_factor(1, math.pi / 2).real == pytest.approx(math.pi / 4)

    def test_s_coth_s_origin(self):
        """Test the removable value at the origin."""
        assert s_coth_s(0.0).real == pytest.approx(1.0)

    def test_poles(self):
        """Test the imaginary-axis and real-axis poles are refused."""
        with pytest.raises(PoleError):
            s_coth_s(1j * math.pi)
        with pytest.raises(PoleError):
            g_function(1.0, math.pi)
