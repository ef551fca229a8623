"""Tests for certified generation of power sequences modulo one."""

import math
from fractions import Fraction

import numpy as np
import pytest

from equidist.errors import ArgumentError, EmptyResult, PrecisionExhausted
from equidist.harness.experiments.identities import random_rational_polynomial
from equidist.harness.scan import dyadic_samples
from equidist.precision import ExactReal, parse_exact
from equidist.sequences import (
    ModOneSample,
    Polynomial,
    SequenceSpec,
    choose_path,
    generate_power_sequence,
    initial_precision,
    poly_mod_one,
    reduce_mod_one,
    to_exponential,
    vdc_difference,
)

PSI = (1 - math.sqrt(5)) / 2


class TestExactPath:
    """Tests for rational beta and rational prefactor."""

    def test_three_halves(self, three_halves, settings):
        x = generate_power_sequence(three_halves, 4, settings)
        assert x.values.tolist() == [0.5, 0.25, 0.375, 0.0625]
        assert x.certified_error == 0.0
        assert x.meta.path == "exact"
        assert not x.meta.degraded

    def test_integer_beta_is_all_zero(self, settings):
        x = generate_power_sequence(SequenceSpec("1", "2"), 100, settings)
        assert np.all(x.values == 0.0)

    def test_rational_polynomial_phase(self, settings):
        spec = SequenceSpec("1", "3/2", q="1/3")
        x = generate_power_sequence(spec, 2, settings)
        assert x.values[0] == pytest.approx(1.5 + 1 / 3 - 1)
        assert x.values[1] == pytest.approx(2.25 + 1 / 3 - 2)

    def test_surd_polynomial_phase_is_certified(self, settings):
        spec = SequenceSpec("1", "3/2", q="0,sqrt(2)")
        x = generate_power_sequence(spec, 50, settings)
        assert x.meta.path == "exact"
        assert 0 < x.certified_error <= 2.0**-60
        expected = [math.fmod(1.5**n + n * math.sqrt(2), 1.0) for n in range(1, 11)]
        np.testing.assert_allclose(x.values[:10], expected, atol=1e-9)

    def test_keep_raw(self, three_halves, settings):
        x = generate_power_sequence(three_halves, 3, settings, keep_raw=True)
        assert x.raw == (
            ExactReal(Fraction(3, 2)),
            ExactReal(Fraction(9, 4)),
            ExactReal(Fraction(27, 8)),
        )

    def test_chunking_does_not_change_output(self, three_halves, settings):
        whole = generate_power_sequence(three_halves, 200, settings)
        chunked = generate_power_sequence(three_halves, 200, settings.model_copy(update={"chunk_size": 7}))
        assert np.array_equal(whole.values, chunked.values)
        assert whole.certified_error == chunked.certified_error

    def test_workers_do_not_change_output(self, three_halves, settings):
        serial = generate_power_sequence(three_halves, 200, settings.model_copy(update={"chunk_size": 50}))
        parallel = generate_power_sequence(
            three_halves, 200, settings.model_copy(update={"chunk_size": 50, "workers": 2})
        )
        assert np.array_equal(serial.values, parallel.values)


class TestBallPath:
    """Tests for irrational beta or transcendental prefactor."""

    def test_golden_ratio_matches_conjugate(self, golden, settings):
        """phi^n + psi^n is an integer, so {phi^n} = {-psi^n}."""
        x = generate_power_sequence(golden, 60, settings)
        assert x.meta.path == "ball"
        assert x.certified_error <= 2.0**-60
        n = np.arange(1, 61)
        expected = np.mod(-(PSI**n), 1.0)
        np.testing.assert_allclose(x.values, expected, atol=1e-12)

    def test_ball_path_agrees_with_exact_path(self, three_halves, settings):
        exact = generate_power_sequence(three_halves, 200, settings)
        ball = generate_power_sequence(three_halves, 200, settings.model_copy(update={"exact_rational_path": False}))
        assert ball.meta.path == "ball"
        np.testing.assert_allclose(ball.values, exact.values, atol=2.0**-53)

    def test_exp_prefactor(self, settings):
        spec = SequenceSpec("1", "3/2", g="exp(x)")
        x = generate_power_sequence(spec, 5, settings)
        assert x.meta.path == "ball"
        expected = [math.fmod(math.exp(1.5) * 1.5**n, 1.0) for n in range(1, 6)]
        np.testing.assert_allclose(x.values, expected, atol=1e-12)

    def test_initial_precision_grows_with_n(self, golden):
        assert initial_precision(golden, 1000, 96) > initial_precision(golden, 100, 96)
        assert initial_precision(golden, 1000, 96) >= math.ceil(1000 * math.log2((1 + math.sqrt(5)) / 2)) + 96

    def test_precision_cap(self, golden, settings):
        with pytest.raises(PrecisionExhausted):
            generate_power_sequence(golden, 1000, settings.model_copy(update={"precision_cap_bits": 256}))

    def test_low_target_is_degraded(self, golden, settings):
        x = generate_power_sequence(golden, 10, settings.model_copy(update={"target_bits": 30}))
        assert x.meta.degraded

    def test_rejects_empty(self, golden, settings):
        with pytest.raises(ArgumentError):
            generate_power_sequence(golden, 0, settings)


class TestPathSelection:
    """Tests for choosing between the exact and ball paths."""

    def test_short_rational_prefix_is_exact(self, three_halves, settings):
        assert choose_path(three_halves, 100, settings) == "exact"

    def test_long_denominators_use_ball_path(self, three_halves, settings):
        assert choose_path(three_halves, 4096, settings) == "ball"

    def test_dyadic_scan_sample_uses_ball_path(self, settings):
        beta = dyadic_samples(parse_exact("1"), parse_exact("2"), 1, 128, 0)[0]
        assert choose_path(SequenceSpec("1", beta), 4096, settings) == "ball"

    def test_integer_beta_stays_exact(self, settings):
        assert choose_path(SequenceSpec("1", "2"), 100_000, settings) == "exact"

    def test_integer_terms_stay_exact(self, settings):
        """8 * (3/2)^n is an integer for n <= 3, which no ball can floor."""
        spec = SequenceSpec("8", "3/2")
        assert choose_path(spec, 4096, settings) == "exact"
        x = generate_power_sequence(spec, 600, settings)
        assert x.values[:3].tolist() == [0.0, 0.0, 0.0]
        assert x.meta.path == "exact"

    def test_cost_ratio_and_switch(self, three_halves, settings):
        forced = settings.model_copy(update={"exact_cost_ratio": math.inf})
        assert choose_path(three_halves, 4096, forced) == "exact"
        off = settings.model_copy(update={"exact_rational_path": False})
        assert choose_path(three_halves, 4, off) == "ball"
        assert choose_path(SequenceSpec("1", "3/2", g="exp(x)"), 4, settings) == "ball"

    def test_both_paths_agree_past_the_switch(self, three_halves, settings):
        ball = generate_power_sequence(three_halves, 1000, settings)
        exact = generate_power_sequence(three_halves, 1000, settings.model_copy(update={"exact_cost_ratio": math.inf}))
        assert ball.meta.path == "ball"
        assert exact.meta.path == "exact"
        np.testing.assert_allclose(ball.values, exact.values, atol=2.0**-53)

    def test_doubling_n_at_most_doubles_working_bits(self, golden, three_halves, settings):
        assert generate_power_sequence(golden, 1000, settings).meta.working_bits <= 2 * generate_power_sequence(
            golden, 500, settings
        ).meta.working_bits
        forced = settings.model_copy(update={"exact_cost_ratio": math.inf})
        short = generate_power_sequence(three_halves, 400, forced).meta.working_bits
        long = generate_power_sequence(three_halves, 800, forced).meta.working_bits
        assert short < long <= 2 * short


class TestPolynomialAndRawSequences:
    """Tests for poly_mod_one, reduce_mod_one and vdc_difference."""

    def test_poly_mod_one_rational(self, settings):
        x = poly_mod_one(Polynomial.parse("0,1/4"), 8, settings)
        assert x.values.tolist() == [0.25, 0.5, 0.75, 0.0] * 2
        assert x.certified_error == 0.0

    def test_poly_mod_one_rotation(self, settings):
        x = poly_mod_one(Polynomial.monomial("phi", 1), 100, settings)
        expected = np.mod(np.arange(1, 101) * (1 + math.sqrt(5)) / 2, 1.0)
        np.testing.assert_allclose(x.values, expected, atol=1e-12)
        assert x.certified_error <= 2.0**-60

    def test_reduce_exact_values(self, settings):
        x = reduce_mod_one([ExactReal(Fraction(7, 4)), ExactReal.sqrt(2)], settings)
        assert x.values[0] == 0.75
        assert x.values[1] == pytest.approx(math.sqrt(2) - 1)

    def test_reduce_empty(self, settings):
        with pytest.raises(EmptyResult):
            reduce_mod_one([], settings)

    def test_difference_of_raw_matches_difference_spec(self, settings):
        spec = SequenceSpec("1", "3/2", q="0,0,1/3")
        raw = generate_power_sequence(spec, 30, settings, keep_raw=True).raw
        differenced = reduce_mod_one(vdc_difference(raw, 2), settings)
        direct = generate_power_sequence(spec.with_difference(2), 28, settings)
        assert np.array_equal(differenced.values, direct.values)

    def test_difference_identity_random_rational_specs(self, rng, settings):
        exact = settings.model_copy(update={"exact_cost_ratio": math.inf})
        for _ in range(20):
            q = int(rng.integers(1, 7))
            spec = SequenceSpec(
                alpha=ExactReal(Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))),
                beta=ExactReal(Fraction(q + int(rng.integers(1, 10)), q)),
                q=random_rational_polynomial(rng, 3),
            )
            h = int(rng.integers(1, 6))
            raw = generate_power_sequence(spec, 40, exact, keep_raw=True).raw
            direct = generate_power_sequence(spec.with_difference(h), 40 - h, exact, keep_raw=True)
            assert list(vdc_difference(list(raw), h)) == list(direct.raw), (str(spec), h)
            assert np.array_equal(reduce_mod_one(vdc_difference(list(raw), h), settings).values, direct.values)

    def test_difference_arguments(self):
        with pytest.raises(ArgumentError):
            vdc_difference([1, 2, 3], 0)
        with pytest.raises(EmptyResult):
            vdc_difference([1, 2, 3], 3)
        assert vdc_difference(np.array([1.0, 4.0, 9.0]), 1).tolist() == [3.0, 5.0]


class TestSamples:
    """Tests for the ModOneSample container."""

    def test_from_floats_reduces(self):
        x = ModOneSample.from_floats([1.25, -0.25, 3.0])
        assert x.values.tolist() == [0.25, 0.75, 0.0]
        assert x.meta.path == "external"

    def test_rejects_out_of_range(self, three_halves):
        with pytest.raises(ArgumentError):
            ModOneSample(np.array([0.5, 1.0]), 0.0, generate_power_sequence(three_halves, 2).meta)

    def test_values_are_read_only(self, three_halves, settings):
        x = generate_power_sequence(three_halves, 4, settings)
        with pytest.raises(ValueError):
            x.values[0] = 0.1

    def test_prefix(self, three_halves, settings):
        x = generate_power_sequence(three_halves, 10, settings)
        assert x.prefix(3).values.tolist() == [0.5, 0.25, 0.375]
        with pytest.raises(ArgumentError):
            x.prefix(11)

    def test_exponential_of_integer_phase(self, settings):
        c = to_exponential(generate_power_sequence(SequenceSpec("1", "2"), 5, settings))
        assert np.all(c.terms == 1.0)
