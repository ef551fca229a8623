"""Tests for the derivative-gap grid diagnostic."""

from fractions import Fraction

import pytest

from equidist.analysis import gap_grid, koksma_gap_check, koksma_gap_check_alpha, product_jet, y_jet
from equidist.errors import ArgumentError, DomainError
from equidist.models import GRID_VERIFIED
from equidist.precision import BallReal, parse_gexpr


class TestJets:
    """Tests for y_n(x) = alpha * g(x) * x^n * prod(x^h - 1)."""

    def test_empty_product_is_one(self):
        jet = product_jet(BallReal.from_int(3, 64), [])
        assert float(jet.value) == 1.0
        assert float(jet.d1) == 0.0

    def test_product_jet(self):
        # (x - 1)(x^2 - 1) at 2: value 3, derivative 3x^2 - 2x - 1 = 7
        jet = product_jet(BallReal.from_int(2, 64), [1, 2])
        assert float(jet.value) == 3.0
        assert float(jet.d1) == 7.0

    def test_y_jet(self):
        # y_2(x) = 3 * x * x^2 * (x - 1) = 3x^4 - 3x^3; y' at 2 is 12*8 - 9*4 = 60
        jet = y_jet(BallReal.from_int(3, 64), parse_gexpr("x"), [1], BallReal.from_int(2, 64), 2)
        assert float(jet.value) == 24.0
        assert float(jet.d1) == 60.0


class TestGapCheck:
    """Tests for the beta-variable grid check."""

    def test_admissible_family(self):
        report = koksma_gap_check(1, parse_gexpr("x"), [1], ("11/10", "2"), n_max=6, m_max=5)
        assert report.variable == "beta"
        assert report.monotone_ok
        assert report.L_lower > 0
        assert report.certificate == GRID_VERIFIED
        assert len(report.pairs) == 15

    def test_negative_alpha_is_oriented(self):
        report = koksma_gap_check(-2, parse_gexpr("1"), [], (Fraction(3, 2), 3), n_max=4, m_max=2, grid_points=16)
        assert report.monotone_ok
        assert report.L_lower > 0

    def test_plain_powers_lower_bound(self):
        """For g = 1 and no product, y'_2 - y'_1 = 2x - 1 is smallest at a."""
        report = koksma_gap_check(1, parse_gexpr("1"), [], ("3/2", "2"), n_max=2, m_max=1, grid_points=16)
        assert report.L_lower == pytest.approx(2.0, rel=1e-12)
        assert report.strictly_increasing

    def test_interval_must_start_above_one(self):
        with pytest.raises(DomainError):
            koksma_gap_check(1, parse_gexpr("1"), [], (1, 2), n_max=2, m_max=1)

    def test_interval_order(self):
        with pytest.raises(ArgumentError):
            koksma_gap_check(1, parse_gexpr("1"), [], (3, 2), n_max=2, m_max=1)

    @pytest.mark.parametrize("n_max,m_max", [(2, 2), (3, 0)])
    def test_pair_bounds(self, n_max, m_max):
        with pytest.raises(ArgumentError):
            koksma_gap_check(1, parse_gexpr("1"), [], (2, 3), n_max=n_max, m_max=m_max)

    def test_grid_size(self):
        with pytest.raises(ArgumentError):
            koksma_gap_check(1, parse_gexpr("1"), [], (2, 3), n_max=2, m_max=1, grid_points=8)

    def test_zero_alpha(self):
        with pytest.raises(ArgumentError):
            koksma_gap_check(0, parse_gexpr("1"), [], (2, 3), n_max=2, m_max=1)

    def test_grid_spans_interval(self):
        grid = gap_grid("3/2", 2, 16, 128)
        assert len(grid) == 16
        assert grid[0].contains(Fraction(3, 2))
        assert grid[-1].contains(2)
        assert all(nxt.lower_float() > prev.upper_float() for prev, nxt in zip(grid, grid[1:]))

    def test_surd_interval(self):
        report = koksma_gap_check(
            "sqrt(3)", parse_gexpr("x"), [1], ("sqrt(2)", "1+sqrt(2)"), n_max=4, m_max=3, grid_points=16
        )
        assert report.interval == ("sqrt(2)", "1+sqrt(2)")
        assert report.monotone_ok
        assert report.L_lower > 0


class TestAlphaGapCheck:
    """Tests for the alpha-variable check, where the gap is constant."""

    def test_constant_gap(self):
        report = koksma_gap_check_alpha("3/2", parse_gexpr("1"), [], n_max=3, m_max=2)
        assert report.variable == "alpha"
        assert report.monotone_ok
        assert report.L_lower == pytest.approx(0.75)
        assert report.certificate == "constant in alpha"

    def test_beta_above_one(self):
        with pytest.raises(DomainError):
            koksma_gap_check_alpha("1", parse_gexpr("1"), [], n_max=3, m_max=2)
