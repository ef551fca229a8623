"""Tests for exact reals and ball arithmetic."""

import math
from fractions import Fraction

import pytest

from equidist.errors import AmbiguousBoundary, ArgumentError, DomainError, MixedFieldError
from equidist.precision import PHI, SILVER, BallReal, ExactReal, ball_exp, ball_pow, frac_mod_one, refine


class TestExactReal:
    """Tests for rational and quadratic-surd arithmetic."""

    def test_golden_ratio_identities(self):
        """phi^2 = phi + 1 and 1/phi = phi - 1 hold exactly."""
        assert PHI * PHI == PHI + 1
        assert PHI.reciprocal() == PHI - 1
        assert PHI.norm() == Fraction(-1)

    def test_square_factors_are_pulled_out(self):
        assert ExactReal(Fraction(0), Fraction(1), 8) == ExactReal(Fraction(0), Fraction(2), 2)

    def test_perfect_square_becomes_rational(self):
        x = ExactReal.sqrt(4)
        assert x.is_rational
        assert x == ExactReal(Fraction(2))

    def test_sqrt_of_fraction(self):
        """sqrt(1/2) is written as sqrt(2)/2."""
        assert ExactReal.sqrt(Fraction(1, 2)) == ExactReal(Fraction(0), Fraction(1, 2), 2)

    def test_mixed_fields_rejected(self):
        with pytest.raises(MixedFieldError):
            ExactReal.sqrt(2) + ExactReal.sqrt(3)

    @pytest.mark.parametrize("p", [1009, 1_000_003])
    def test_large_square_factors_are_pulled_out(self, p):
        assert ExactReal.sqrt(2 * p * p) == ExactReal(Fraction(0), Fraction(p), 2)
        assert ExactReal.sqrt(2 * p * p) + ExactReal.sqrt(2) == ExactReal(Fraction(0), Fraction(p + 1), 2)

    def test_same_field_beyond_trial_division(self):
        """sqrt(6 q p^2) and sqrt(6 q) share a field even when p is never tried."""
        p, q = 10**9 + 7, 1_000_033
        big = ExactReal.sqrt(6 * p * p * q)
        small = ExactReal.sqrt(6 * q)
        total = big + small
        assert total.d == big.d
        assert float(total) == pytest.approx(math.sqrt(6 * q) * (p + 1), rel=1e-12)
        assert big * small == ExactReal(Fraction(6 * p * q))
        with pytest.raises(MixedFieldError):
            big + ExactReal.sqrt(2)

    def test_sign_of_surd(self):
        assert (ExactReal(Fraction(1)) - ExactReal.sqrt(2)).sign() == -1
        assert (ExactReal(Fraction(3, 2)) - ExactReal.sqrt(2)).sign() == 1
        assert ExactReal.sqrt(2) < Fraction(3, 2)
        assert SILVER > 2

    def test_power_and_negative_power(self):
        assert SILVER**2 == ExactReal(Fraction(3), Fraction(2), 2)
        assert SILVER ** -1 == SILVER - 2

    def test_text_form(self):
        assert str(PHI) == "1/2+1/2*sqrt(5)"
        assert str(ExactReal(Fraction(1)) - ExactReal.sqrt(2)) == "1-sqrt(2)"
        assert str(ExactReal(Fraction(-3, 4))) == "-3/4"

    def test_float_conversion(self):
        assert float(PHI) == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-15)
        assert float(ExactReal(Fraction(1, 3))) == 1 / 3

    def test_irrational_has_no_fraction(self):
        with pytest.raises(ArgumentError):
            PHI.as_fraction()


class TestRefine:
    """Tests for enclosing exact reals in balls."""

    def test_golden_ratio_enclosure(self):
        ball = refine(PHI, 128)
        phi = (1 + math.sqrt(5)) / 2
        assert ball.lower_float() <= phi <= ball.upper_float()
        assert ball.radius_float() <= 2.0**-125

    def test_dyadic_rational_is_exact(self):
        ball = refine(ExactReal(Fraction(7, 4)), 64)
        assert ball.is_exact
        assert float(ball) == 1.75

    def test_non_dyadic_rational_contains_value(self):
        ball = refine(ExactReal(Fraction(1, 3)), 64)
        assert ball.contains(Fraction(1, 3))
        assert not ball.is_exact

    def test_rejects_tiny_precision(self):
        with pytest.raises(ArgumentError):
            refine(PHI, 1)


class TestBallArithmetic:
    """Tests for BallReal operations and fractional parts."""

    def test_arithmetic_encloses_result(self):
        third = BallReal.from_fraction(Fraction(1, 3), 64)
        total = third * 3
        assert total.contains(Fraction(1))

    def test_power_encloses_result(self):
        ball = ball_pow(BallReal.from_fraction(Fraction(3, 2), 64), 10)
        assert ball.contains(Fraction(3, 2) ** 10)

    def test_power_rejects_non_positive_base(self):
        with pytest.raises(DomainError):
            ball_pow(BallReal.from_int(-2), 3)

    def test_exp_encloses_e(self):
        e = ball_exp(BallReal.from_int(1, 128))
        assert e.lower_float() <= math.e <= e.upper_float()

    def test_exp_of_negative_argument(self):
        value = ball_exp(BallReal.from_fraction(Fraction(-5, 2), 96))
        assert float(value) == pytest.approx(math.exp(-2.5), rel=1e-15)

    def test_frac_mod_one_exact(self):
        unit = frac_mod_one(BallReal.from_fraction(Fraction(7, 4), 64))
        assert float(unit) == 0.75
        assert unit.error_float() == 0.0

    def test_frac_mod_one_straddling_integer(self):
        """A ball around 1 with nonzero radius cannot decide its floor."""
        ball = BallReal.from_fraction(Fraction(1, 3), 64) * 3
        with pytest.raises(AmbiguousBoundary):
            frac_mod_one(ball)

    def test_frac_mod_one_radius_too_wide(self):
        ball = BallReal.from_fraction(Fraction(1, 3), 20)
        with pytest.raises(AmbiguousBoundary):
            frac_mod_one(ball, target_bits=60)

    def test_frac_mod_one_of_surd(self):
        unit = frac_mod_one(refine(SILVER, 128))
        assert float(unit) == pytest.approx(math.sqrt(2) - 1, abs=1e-16)
        assert unit.error_float() <= 2.0**-60


class TestEnclosureProperties:
    """Randomized checks of enclosure soundness and refinement."""

    def test_random_chains_enclose_exact_result(self, rng):
        for _ in range(1000):
            exact = Fraction(int(rng.integers(-1000, 1001)), int(rng.integers(1, 1000)))
            ball = BallReal.from_fraction(exact, int(rng.integers(24, 129)))
            for _ in range(int(rng.integers(1, 6))):
                y = Fraction(int(rng.integers(-100, 101)), int(rng.integers(1, 100)))
                op = int(rng.integers(0, 3))
                if op == 0:
                    ball, exact = ball + BallReal.from_fraction(y, ball.prec), exact + y
                elif op == 1:
                    ball, exact = ball * BallReal.from_fraction(y, ball.prec), exact * y
                elif Fraction(1, 100) < exact < 100:
                    k = int(rng.integers(2, 5))
                    ball, exact = ball_pow(ball, k), exact**k
                assert ball.contains(exact), (exact, ball)

    @pytest.mark.parametrize(
        "value",
        [PHI, SILVER, ExactReal(Fraction(1, 3)), ExactReal(Fraction(2, 7), Fraction(-5, 3), 11), ExactReal.sqrt(1_000_003)],
    )
    def test_refinement_is_monotone(self, value):
        for bits in (32, 64, 128, 256, 512):
            coarse, fine = refine(value, bits), refine(value, bits + 64)
            assert fine.radius <= coarse.radius
            assert coarse.overlaps(fine)

    def test_refined_surd_encloses_square_root(self):
        """b * sqrt(d) squared lies in the square of its enclosure."""
        for d in (2, 3, 5, 7, 1_000_003):
            ball = refine(ExactReal.sqrt(d), 128)
            assert ball.lower_float() <= math.sqrt(d) <= ball.upper_float()
            assert (ball * ball).contains(d)
