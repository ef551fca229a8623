"""Tests for exact polynomials and residues modulo one."""

import math
from fractions import Fraction

import pytest

from equidist.errors import MixedFieldError, ParseError
from equidist.precision import ExactReal
from equidist.sequences import Polynomial, shift_difference_poly, split_top_level
from equidist.sequences.polynomial import floor_divmod, poly_residue, residue_mod_one


class TestPolynomial:
    """Tests for construction and evaluation."""

    def test_parse_and_evaluate(self):
        q = Polynomial.parse("1,2,3")
        assert q.degree == 2
        assert q.evaluate(2) == ExactReal(Fraction(17))

    def test_trailing_zeros_trimmed(self):
        q = Polynomial.parse("1,2,0,0")
        assert q.degree == 1
        assert q.to_text() == "1,2"

    def test_empty_text_is_zero(self):
        assert Polynomial.parse("").is_zero()
        assert Polynomial.parse("0,0").is_zero()

    def test_monomial(self):
        q = Polynomial.monomial("1/2", 3)
        assert q.degree == 3
        assert q(2) == ExactReal(Fraction(4))

    def test_surd_coefficients_share_field(self):
        q = Polynomial.parse("0,1,sqrt(2)")
        assert q.radicand == 2
        assert not q.is_rational
        assert q.evaluate(1) == ExactReal(Fraction(1), Fraction(1), 2)

    def test_mixed_fields_rejected(self):
        with pytest.raises(MixedFieldError):
            Polynomial.parse("sqrt(2),sqrt(3)")

    def test_rational_parts(self):
        A, B, D, d = Polynomial.parse("1/2,sqrt(2)/3").rational_parts()
        assert (A, B, D, d) == ([3, 0], [0, 2], 6, 2)

    def test_display(self):
        assert str(Polynomial.parse("1,0,2")) == "1 + 2*n^2"
        assert str(Polynomial.zero()) == "0"


class TestSplitTopLevel:
    """Tests for comma splitting outside parentheses."""

    def test_nested(self):
        assert split_top_level("1,sqrt(2),(1+2)*3") == ["1", "sqrt(2)", "(1+2)*3"]

    def test_comma_inside_call(self):
        assert split_top_level("pow1m(x,2),x") == ["pow1m(x,2)", "x"]

    @pytest.mark.parametrize("text", ["", "1,,2", "(1,2", "1)"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            split_top_level(text)


class TestShiftDifference:
    """Tests for Q(n+h) - Q(n)."""

    def test_square(self):
        assert shift_difference_poly(Polynomial.parse("0,0,1"), 1).to_text() == "1,2"

    def test_constant_gives_zero(self):
        assert shift_difference_poly(Polynomial.parse("5"), 3).is_zero()

    def test_matches_pointwise_difference(self):
        q = Polynomial.parse("1/3,-2,sqrt(5),1/7")
        for h in (1, 2, 5):
            delta = shift_difference_poly(q, h)
            assert delta.degree == q.degree - 1
            for n in range(-3, 8):
                assert delta(n) == q(n + h) - q(n)


class TestResidues:
    """Tests for certified fractional parts."""

    def test_floor_divmod_matches_divmod(self):
        for a in (-17, -1, 0, 1, 5, 2**70 + 3):
            for b in (1, 2, 3, 8, 12, 2**40):
                assert floor_divmod(a, b) == divmod(a, b)

    @pytest.mark.parametrize(
        "num,den,expected",
        [(7, 4, 0.75), (-1, 4, 0.75), (-1, 3, 2 / 3), (6, 3, 0.0)],
    )
    def test_rational_residue_is_exact(self, num, den, expected):
        residue = residue_mod_one(num, den, 0, 0, 1, 68)
        assert residue.is_exact
        assert residue.to_float() == expected
        assert residue.error() == 0

    def test_surd_residue(self):
        residue = residue_mod_one(0, 1, 1, 2, 1, 68)
        assert not residue.is_exact
        assert residue.to_float() == pytest.approx(math.sqrt(2) - 1, abs=1e-16)
        assert residue.error() <= Fraction(1, 2**68)

    def test_negative_surd_residue(self):
        residue = residue_mod_one(3, 1, -1, 2, 1, 68)
        assert residue.to_float() == pytest.approx(3 - math.sqrt(2) - 1, abs=1e-15)

    def test_poly_residue(self):
        A, B, D, d = Polynomial.parse("0,1/3").rational_parts()
        residue = poly_residue(A, B, D, d, 5, 68)
        assert residue.to_float() == pytest.approx(2 / 3)
        assert residue.is_exact
