"""Tests for the good-test-function catalog, geometry and criterion."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkasym.config import GtfConfig
from hkasym.errors import BandViolationError, DomainError, GeometryError, ZeroDerivativeError
from hkasym.gtf import (
    ContourCircle,
    FixedRule,
    HalfSineRule,
    LogPlusSin,
    PlainLog,
    PowerExp,
    PowerLog,
    PowerRule,
    Sector,
    UserFunction,
    cauchy_derivative,
    default_rule_exponent,
    default_rule_name,
    get_function,
    get_radius_rule,
    gtf_ratio,
    gtf_scan,
    log_band_bound,
    necessary_check,
    sufficient_check,
)


@pytest.fixture
def short_scan() -> GtfConfig:
    """Two decades of rings."""
    return GtfConfig(decades=2)


class TestCatalog:
    """Tests for the catalog functions."""

    def test_power_log(self):
        """Test z log^2 z and its derivative log z (log z + 2) at e."""
        g = PowerLog(1, 2)

        assert g.value(math.e) == pytest.approx(math.e)
        assert g.derivative(math.e) == pytest.approx(3.0)

    def test_power_exp(self):
        """Test exp(sqrt z) and its derivative at 4."""
        g = PowerExp(0, 1, 0.5)

        assert g.value(4.0) == pytest.approx(math.exp(2.0))
        assert g.derivative(4.0) == pytest.approx(0.25 * math.exp(2.0))

    def test_power_exp_log_abs_does_not_overflow(self):
        """Test log|exp(z)| at z = 1000 stays finite."""
        g = PowerExp(0, 1, 1)

        assert float(g.log_abs_value(1000.0)) == pytest.approx(1000.0)
        assert float(g.log_abs_derivative(1000.0)) == pytest.approx(1000.0)

    def test_plain_log(self):
        """Test log z on the imaginary axis uses the principal branch."""
        g = PlainLog()

        assert g.value(1j) == pytest.approx(0.5j * math.pi)
        assert g.derivative(2.0) == pytest.approx(0.5)

    def test_log_plus_sin(self):
        """Test value 0 and derivative 2 at z = 1."""
        g = LogPlusSin()

        assert g.value(1.0) == pytest.approx(0.0)
        assert g.derivative(1.0) == pytest.approx(2.0)

    def test_vectorized(self):
        """Test arrays evaluate elementwise."""
        z = np.array([1.0, math.e, math.e**2])

        np.testing.assert_allclose(PlainLog().value(z), [0.0, 1.0, 2.0], atol=1e-15)

    def test_scaled(self):
        """Test a scaled copy leaves the original alone."""
        g = PlainLog()

        doubled = g.scaled(2.0)

        assert doubled.value(math.e) == pytest.approx(2.0)
        assert g.value(math.e) == pytest.approx(1.0)

    def test_factory(self):
        """Test names are case- and dash-insensitive."""
        g = get_function("Power-Log", alpha=1, beta=2)

        assert isinstance(g, PowerLog)
        assert g.kind == "power_log"
        assert "alpha=(1+0j)" in repr(g)

    @pytest.mark.parametrize(
        "name, kwargs",
        [
            ("bessel", {}),
            ("power_exp", {"alpha": 0, "beta": 0, "gamma": 1}),
            ("power_exp", {"alpha": 0, "beta": 1, "gamma": -0.5}),
            ("plain_log", {"coefficient": 0}),
        ],
    )
    def test_factory_errors(self, name: str, kwargs: dict):
        """Test unknown names and invalid parameters."""
        with pytest.raises(DomainError):
            get_function(name, **kwargs)

    def test_user_function_without_derivative(self):
        """Test a user callable with no derivative."""
        g = UserFunction(lambda z: z**2, name="square")

        assert not g.has_derivative
        assert g.value(3.0) == pytest.approx(9.0)
        with pytest.raises(NotImplementedError):
            g.derivative(3.0)


class TestGeometry:
    """Tests for sectors, circles and radius rules."""

    @pytest.mark.parametrize(
        "kwargs",
        [{"r_min": 0.0}, {"theta0": math.pi}, {"theta1": 0.0}, {"theta0": 1.0, "theta1": 1.0}],
    )
    def test_invalid_sector(self, kwargs: dict):
        """Test r_min > 0 and 0 < theta1 < theta0 < pi."""
        with pytest.raises(GeometryError):
            Sector(**kwargs)

    def test_membership(self, sector: Sector):
        """Test the sector and its closed subsector."""
        assert sector.contains(20 * cmath.exp(1.0j))
        assert not sector.contains_inner(20 * cmath.exp(1.0j))
        assert sector.contains_inner(20 * cmath.exp(0.5j))
        assert not sector.contains(5.0)

    def test_grid_shape(self, sector: Sector):
        """Test one ring per rings_per_decade step from 3 r_min."""
        grid = sector.grid(rings_per_decade=4, arg_samples=3, decades=2)

        assert grid.shape == (9, 3)
        assert abs(grid[0, 0]) == pytest.approx(30.0)
        assert abs(grid[-1, 0]) == pytest.approx(3000.0)
        assert np.all(np.abs(np.angle(grid)) <= sector.theta1 + 1e-12)

    def test_grid_start(self, sector: Sector):
        """Test the grid cannot start inside r_min."""
        with pytest.raises(GeometryError):
            sector.grid(start=5.0)

    def test_grid_jitter(self, sector: Sector):
        """Test jitter is seeded and stays in the subsector."""
        first = sector.grid(jitter=0.5, seed=3)
        again = sector.grid(jitter=0.5, seed=3)
        other = sector.grid(jitter=0.5, seed=4)

        np.testing.assert_array_equal(first, again)
        assert not np.array_equal(first, other)
        assert np.all(np.abs(np.angle(first)) <= sector.theta1 + 1e-12)

    @pytest.mark.parametrize("radius, nodes", [(0.0, 256), (6.0, 256), (1.0, 8)])
    def test_invalid_circle(self, radius: float, nodes: int):
        """Test 0 < R <= |z|/2 and at least 16 nodes."""
        with pytest.raises(GeometryError):
            ContourCircle(10.0, radius, nodes)

    def test_circle_leaving_sector(self, sector: Sector):
        """Test a circle dipping below r_min is refused."""
        with pytest.raises(GeometryError):
            ContourCircle(12.0, 5.0).check_inside(sector)

    def test_rules(self, sector: Sector):
        """Test the three radius rules and the |z|/2 cap."""
        assert HalfSineRule(sector)(100.0) == pytest.approx(50.0 * math.sin(math.pi / 4))
        assert PowerRule(0.5)(100.0) == pytest.approx(10.0)
        assert PowerRule(2.0)(100.0) == pytest.approx(50.0)
        assert FixedRule(3.0)(100.0) == 3.0
        assert PowerRule(0.5).name == "power(0.5)"

    def test_rule_factory(self, sector: Sector):
        """Test rule lookup and its missing-parameter errors."""
        assert isinstance(get_radius_rule("half-sine", sector), HalfSineRule)
        with pytest.raises(DomainError):
            get_radius_rule("power", sector)
        with pytest.raises(DomainError):
            get_radius_rule("fixed", sector)
        with pytest.raises(DomainError):
            get_radius_rule("spiral", sector)
        with pytest.raises(GeometryError):
            FixedRule(0.0)

    def test_default_rules(self):
        """Test power_exp defaults to the power rule with exponent 1 - Re gamma."""
        g = PowerExp(0, 1, 0.5)

        assert default_rule_name(g) == "power"
        assert default_rule_exponent(g) == pytest.approx(0.5)
        assert default_rule_name(PlainLog()) == "half_sine"
        assert default_rule_exponent(PlainLog()) is None


class TestCriterion:
    """Tests for the contour ratio and its companions."""

    @settings(max_examples=25, deadline=None)
    @given(
        st.floats(min_value=20.0, max_value=1e4),
        st.floats(min_value=-math.pi / 4, max_value=math.pi / 4),
    )
    def test_cauchy_derivative(self, r: float, arg: float):
        """Test the contour derivative of z log^2 z against the closed form."""
        g = PowerLog(1, 2)
        z = r * cmath.exp(1j * arg)

        value = cauchy_derivative(g, ContourCircle(z, r / 4))

        assert value == pytest.approx(g.derivative(z), rel=1e-8)

    def test_ratio_of_identity(self):
        """Test g(z) = z at z = 10 with R = 1 gives 2 pi mean|xi| ~ 63."""
        ratio = gtf_ratio(PowerLog(1), 10.0, 1.0)

        assert ratio == pytest.approx(2 * math.pi * 10.025, rel=1e-4)

    def test_ratio_without_closed_derivative(self):
        """Test a user function falls back to the contour derivative."""
        g = UserFunction(lambda z: z**2)

        ratio = gtf_ratio(g, 10.0, 2.0)

        assert ratio == pytest.approx(math.pi * 104.0 / 20.0, rel=1e-9)

    @pytest.mark.parametrize(
        "g",
        [PowerLog(1, 2), PowerExp(0, 1, 0.5), UserFunction(lambda z: z**2)],
        ids=["power_log", "power_exp", "user"],
    )
    @pytest.mark.parametrize("factor", [3.0, -0.5, 2 - 7j])
    def test_ratio_ignores_constant_factor(self, g, factor: complex):
        """Test c_hat is the same for g and c * g."""
        z, radius = 40.0 * cmath.exp(0.3j), 8.0

        assert gtf_ratio(g.scaled(factor), z, radius) == pytest.approx(gtf_ratio(g, z, radius), rel=1e-9)

    def test_zero_derivative(self):
        """Test a constant function has no ratio."""
        with pytest.raises(ZeroDerivativeError):
            gtf_ratio(PowerLog(0), 100.0, 10.0)

    def test_ratio_checks_sector(self, sector: Sector):
        """Test a circle leaving the sector is refused."""
        with pytest.raises(GeometryError):
            gtf_ratio(PlainLog(), 12.0, 5.0, sector=sector)

    def test_sufficient_check(self):
        """Test the sufficient condition for z log^2 z."""
        check = sufficient_check(PowerLog(1, 2), 100.0, 30.0)

        log_z = math.log(100.0)
        assert check.rhs == pytest.approx(log_z * (log_z + 2), rel=1e-9)
        assert check.lhs_sup == pytest.approx(check.margin * check.rhs)
        assert 1.0 < check.margin < 5.0

    def test_necessary_check_grows_for_log(self):
        """Test rho(z) = |log z| for g = log z."""
        low = necessary_check(PlainLog(), 1e2)
        high = necessary_check(PlainLog(), 1e6)

        assert low == pytest.approx(math.log(1e2))
        assert high / low >= 2.9

    def test_necessary_check_bounded_for_power_log(self):
        """Test rho(z) < 1 for z log^2 z."""
        assert all(necessary_check(PowerLog(1, 2), x) < 1 for x in (1e2, 1e4, 1e6))

    def test_band_bound_holds(self):
        """Test exp(z) between z = 10 and 12 with |g'/g| = 1."""
        bound = log_band_bound(PowerExp(0, 1, 1), 10.0, 12.0, 0.5, 2.0)

        assert bound.holds
        assert bound.bound == pytest.approx(2.0 * math.exp(14.0))

    @pytest.mark.parametrize("c1, c2", [(2.0, 3.0), (3.0, 2.0)])
    def test_band_violation(self, c1: float, c2: float):
        """Test a band missing |g'/g| = 1 and an inverted band."""
        with pytest.raises(BandViolationError):
            log_band_bound(PowerExp(0, 1, 1), 10.0, 12.0, c1, c2)


class TestScan:
    """Tests for the sector scan and its verdict."""

    def test_power_log_is_bounded(self, sector: Sector, short_scan: GtfConfig):
        """Test z log^2 z is bounded with the half-sine rule."""
        report = gtf_scan(PowerLog(1, 2), sector, HalfSineRule(sector), short_scan, workers=2)

        assert report.verdict == "bounded"
        assert len(report.as_rows()) == 17 * 5
        assert len(report.ring_sups) == 17
        assert report.radius_rule_tag == "half_sine"

    def test_power_exp_is_bounded(self, sector: Sector, short_scan: GtfConfig):
        """Test exp(sqrt z) is bounded with R = |z|^(1/2)."""
        report = gtf_scan(PowerExp(0, 1, 0.5), sector, PowerRule(0.5), short_scan)

        assert report.verdict == "bounded"
        assert math.isfinite(report.sup_c_hat)

    def test_plain_log_is_growing(self, sector: Sector, short_scan: GtfConfig):
        """Test log z grows like log |z| with the half-sine rule."""
        report = gtf_scan(PlainLog(), sector, HalfSineRule(sector), short_scan)

        assert report.verdict == "growing"
        assert report.slope > short_scan.slope_threshold

    def test_mean_below_max_on_every_sample(self, sector: Sector, short_scan: GtfConfig):
        """Test c_hat <= 2 pi max|g| / (R |g'|) at every scanned point."""
        report = gtf_scan(PowerLog(1, 2), sector, HalfSineRule(sector), short_scan)

        for sample in report.samples:
            check = sufficient_check(PowerLog(1, 2), sample.z, sample.radius, sector=sector)
            assert sample.c_hat <= 2 * math.pi * sample.margin * (1 + 1e-12)
            assert check.margin == pytest.approx(sample.margin, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_negative_powers_are_bounded(self, sector: Sector, short_scan: GtfConfig, n: int):
        """Test the scale functions z^-n are good test functions."""
        report = gtf_scan(PowerLog(-n), sector, HalfSineRule(sector), short_scan)

        assert report.verdict == "bounded"
        assert abs(report.slope) < short_scan.slope_threshold

    def test_jitter_is_reproducible(self, sector: Sector):
        """Test the same seed gives the same report."""
        cfg = GtfConfig(decades=1)
        rule = HalfSineRule(sector)

        first = gtf_scan(PlainLog(), sector, rule, cfg, jitter=0.5, seed=11)
        second = gtf_scan(PlainLog(), sector, rule, cfg, jitter=0.5, seed=11)

        assert first.as_rows() == second.as_rows()

    def test_single_ring_is_inconclusive(self, sector: Sector):
        """Test fewer than three rings give no verdict."""
        cfg = GtfConfig(decades=1, rings_per_decade=1)

        report = gtf_scan(PlainLog(), sector, HalfSineRule(sector), cfg)

        assert report.verdict == "inconclusive"
        assert math.isnan(report.slope)
