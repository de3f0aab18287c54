"""Tests for the large-v approximations and their witnesses."""

import math

import pytest

from hkasym.asymptotics import (
    angular_bessel_integral,
    angular_bessel_reference,
    b_asymp,
    eta_coefficients,
    even_reduction_check,
    exponential_ratio_check,
    log_derivative_check,
    q_expansion,
    q_theorem,
    ratio_table,
    remainder_bound,
    saddle_diagnostics,
)
from hkasym.config import Config
from hkasym.errors import DomainError
from hkasym.kernel import p_contour
from hkasym.specfun import theta_eps


def deviations(n: int, m: int, u: float, grid: list[float]) -> list[float]:
    return [row.abs_dev for row in ratio_table(n, m, u, grid, Config(threads=2))]


class TestCenterOnly:
    """Tests for b(n, m; v) = p(n, m; 0, v)."""

    def test_n1_m1_is_exact(self):
        """Test p(1, 1; 0, v) / b - 1 is below exp(-pi v) noise."""
        assert max(deviations(1, 1, 0.0, [20.0, 40.0, 80.0])) <= 1e-10

    @pytest.mark.parametrize("n, m", [(2, 1), (1, 2), (2, 3)])
    def test_ratio_converges(self, n: int, m: int):
        """Test |p/b - 1| shrinks along the grid and ends below 5%."""
        devs = deviations(n, m, 0.0, [20.0, 40.0, 80.0])

        assert devs[0] > devs[1] > devs[2]
        assert devs[2] <= 0.05

    def test_n2_m1_deviation_rate(self):
        """Test p(2, 1; 0, v) / b = 1 - 2 / (pi v)."""
        devs = deviations(2, 1, 0.0, [40.0])

        assert devs[0] == pytest.approx(2 / (40 * math.pi), rel=1e-6)

    def test_even_and_odd_forms(self):
        """Test b for m = 2k carries sqrt(2) v^(-1/2) relative to the odd form."""
        odd = b_asymp(1, 1, 10.0)
        even = b_asymp(1, 2, 10.0)

        assert even.ratio(odd) == pytest.approx(math.sqrt(2.0) / (2.0 * math.sqrt(10.0)))

    def test_rejects_non_positive_v(self):
        """Test v <= 0 is rejected."""
        with pytest.raises(DomainError):
            b_asymp(1, 1, 0.0)


class TestTheorem:
    """Tests for q(n, m; u, v) against the kernel."""

    @pytest.mark.parametrize("n, m, u", [(1, 1, 1.0), (2, 1, 0.5), (1, 3, 1.0)])
    def test_ratio_converges(self, n: int, m: int, u: float):
        """Test |p/q - 1| shrinks along the grid and ends below 5%."""
        devs = deviations(n, m, u, [50.0, 100.0, 200.0])

        assert devs[0] > devs[1] > devs[2]
        assert devs[2] <= 0.05

    def test_even_center_dimension(self):
        """Test the even-m route through the integral identity."""
        devs = deviations(2, 2, 1.0, [50.0, 100.0, 200.0])

        assert devs[0] > devs[1] > devs[2]
        assert devs[2] <= 0.05

    def test_uniform_along_fixed_ratio(self):
        """Test points with the same 4v/u have comparable deviations."""
        first = deviations(1, 1, 1.0, [100.0])[0]
        second = deviations(1, 1, 2.0, [200.0])[0]

        assert first / 3 <= second <= 3 * first

    def test_recompose(self):
        """Test the stored factors multiply back to the value."""
        approx = q_theorem(2, 3, 1.0, 100.0)

        assert approx.recompose().ratio(approx.value) == pytest.approx(1.0, rel=1e-12)
        assert approx.regime_tag == "u_positive"

    def test_rejects_u_zero(self):
        """Test u = 0 belongs to b_asymp."""
        with pytest.raises(DomainError):
            q_theorem(1, 1, 0.0, 100.0)

    def test_center_only_limit(self):
        """Test q(2, 1; u, v) -> b(2, 1; v) as u -> 0."""
        b = b_asymp(2, 1, 100.0)
        devs = [abs(q_theorem(2, 1, u, 100.0).value.ratio(b) - 1) for u in (1e-2, 1e-3, 1e-5)]

        assert devs[0] > devs[1] > devs[2]
        assert devs[2] <= 1e-2


class TestSaddle:
    """Tests for the saddle-point factorization."""

    @pytest.mark.parametrize("n, j", [(2, 0), (3, 1)])
    def test_angular_integral_is_bessel(self, n: int, j: int):
        """Test the angular integral equals exp(-kappa) I_{|n-j-1|}(kappa)."""
        value = angular_bessel_integral(n, j, 1.0, 0.05)

        assert value == pytest.approx(angular_bessel_reference(n, j, 1.0, 0.05), rel=1e-8)

    @pytest.mark.parametrize("u", [1.0, 4.0])
    def test_remainder_bound_is_stable(self, u: float):
        """Test sup |R| / (u |eps|^2 (1 - cos phi)) stays near 1/6 as eps shrinks."""
        bounds = [remainder_bound(u, eps) for eps in (0.1, 0.05, 0.025)]

        assert all(0.1 <= b <= 0.3 for b in bounds)
        assert max(bounds) <= 2 * min(bounds)

    def test_remainder_bound_needs_positive_u(self):
        """Test u <= 0 is rejected."""
        with pytest.raises(DomainError):
            remainder_bound(0.0, 0.1)

    def test_leading_eta(self):
        """Test eta_0 = 1 up to O(u eps^2)."""
        eta = eta_coefficients(1, 1.0, 0.05, 3)

        assert len(eta) == 3
        assert abs(eta[0] - 1) < 1e-3

    def test_single_term_expansion(self):
        """Test q_expansion with one term is eta_0 times q_theorem."""
        eps = theta_eps(1.0, 100.0).eps
        eta0 = eta_coefficients(1, 1.0, eps, 1)[0].real

        ratio = q_expansion(1, 1.0, 100.0, terms=1).ratio(q_theorem(1, 1, 1.0, 100.0).value)

        assert ratio == pytest.approx(eta0, rel=1e-10)

    def test_more_terms_are_closer(self):
        """Test three expansion terms beat the leading approximation."""
        p = p_contour(1, 1.0, 100.0)

        leading = abs(p.ratio(q_theorem(1, 1, 1.0, 100.0).value) - 1)
        refined = abs(p.ratio(q_expansion(1, 1.0, 100.0, terms=3)) - 1)

        assert refined < leading / 5

    def test_diagnostics(self):
        """Test the saddle identities hold to rounding at (u, v) = (1, 100)."""
        diag = saddle_diagnostics(1.0, 100.0)

        assert diag.phi_residual <= 1e-11
        assert diag.phi_prime_norm / diag.v <= 1e-9
        assert diag.saddle_relation_residual <= 1e-10
        assert 0.1 <= diag.bound_constant <= 0.3
        assert diag.remainder_sup <= 2 * diag.bound_constant * diag.u * abs(diag.eps) ** 2 * (1 + 1e-9)
        assert diag.g_value.real == pytest.approx(-0.25 * (1 + math.pi * diag.eps / 3), abs=1e-3)


class TestWitnesses:
    """Tests for the identities the approximation satisfies."""

    def test_log_derivative(self):
        """Test d/dv log q = -theta + O(1/v + eps)."""
        check = log_derivative_check(1, 1, 1.0, 100.0)

        assert check.passed
        assert check.derivative == pytest.approx(-check.theta, abs=0.05)

    def test_exponential_ratio(self):
        """Test q(s) / q(v) exp(pi (s - v)) grows like exp(eps (s - v))."""
        pairs = exponential_ratio_check(1, 1, 1.0, 200.0)
        ratios = [r for _, r in pairs]

        assert len(pairs) == 11
        assert ratios[0] == pytest.approx(1.0)
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert 1.2 <= ratios[-1] <= 1.6

    def test_even_reduction(self):
        """Test the integral identity maps q(2k+1) to sqrt(2v) q(2k+1) up to O(eps)."""
        assert even_reduction_check(1, 0, 1.0, 200.0) == pytest.approx(1.0, abs=0.05)

    @pytest.mark.parametrize("grid", [[], [40.0, 20.0], [20.0, 20.0]])
    def test_ratio_table_grid(self, grid: list[float]):
        """Test empty and non-ascending grids are rejected."""
        with pytest.raises(DomainError):
            ratio_table(1, 1, 0.0, grid)

    def test_ratio_table_negative_u(self):
        """Test u < 0 is rejected."""
        with pytest.raises(DomainError):
            ratio_table(1, 1, -1.0, [20.0])
