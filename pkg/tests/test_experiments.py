"""Tests for the named acceptance experiments and their router."""

import json

import numpy as np
import pytest

from equidist.errors import ArgumentError, UnknownExperiment
from equidist.harness import ExperimentRouter, run_experiment
from equidist.harness.experiments.exceptional import circular_distance, conjugate_oracle
from equidist.harness.experiments.identities import shift_identity_holds
from equidist.sequences import Polynomial

EXPERIMENTS = [
    "weyl-rotation",
    "pisot-exceptional",
    "main-theorem-beta",
    "main-theorem-alpha",
    "mobius-oscillation",
    "vdc-identity",
    "koksma-gap",
    "discrepancy-oracle",
    "precision-certification",
    "main-theorem-family",
]


@pytest.fixture
def router():
    return ExperimentRouter()


class TestRouter:
    """Tests for experiment lookup and parameter handling."""

    def test_names(self, router):
        assert sorted(router.names()) == sorted(EXPERIMENTS)

    def test_unknown_experiment(self, router):
        with pytest.raises(UnknownExperiment):
            router.get("no-such-experiment")

    def test_unknown_parameter(self, router):
        with pytest.raises(ArgumentError):
            router.get("weyl-rotation").params({"gamma": 1})

    def test_bad_parameter_type(self, router):
        with pytest.raises(ArgumentError):
            router.get("weyl-rotation").params({"n": "many"})

    def test_overrides_are_coerced(self, router):
        params = router.get("pisot-exceptional").params({"integer-ns": "1,10", "n": "50", "min_d_star": "0.3"})
        assert params["integer_ns"] == [1, 10]
        assert params["n"] == 50
        assert params["min_d_star"] == 0.3

    def test_defaults_are_untouched(self, router):
        experiment = router.get("weyl-rotation")
        experiment.params({"n": 10})
        assert experiment.params()["n"] == 100_000

    def test_reports_written_only_with_out_dir(self, router, settings, tmp_path):
        result = router.run("weyl-rotation", {"n": 1000}, settings)
        assert result.files == []
        result = router.run("weyl-rotation", {"n": 1000}, settings, out_dir=str(tmp_path))
        assert result.files == [str(tmp_path / "weyl-rotation.csv"), str(tmp_path / "weyl-rotation.json")]
        assert json.loads((tmp_path / "weyl-rotation.json").read_text())["name"] == "weyl-rotation"


class TestHelpers:
    def test_conjugate_oracle_golden(self):
        values = conjugate_oracle("phi", 3)
        # phi = 1.618.., phi^2 = 2.618.., phi^3 = 4.236..
        assert values.tolist() == pytest.approx([0.6180339887, 0.6180339887, 0.2360679775], abs=1e-9)

    @pytest.mark.parametrize("beta", ["3/2", "sqrt(2)", "3+sqrt(3)"])
    def test_conjugate_oracle_rejects(self, beta):
        with pytest.raises(ArgumentError):
            conjugate_oracle(beta, 5)

    def test_circular_distance(self):
        assert circular_distance(np.array([0.99]), np.array([0.01])) == pytest.approx(0.02)

    def test_shift_identity(self):
        assert shift_identity_holds(Polynomial.parse("1/2,-3,1/5,7"), 3, range(-5, 21))


class TestExperimentsQuick:
    """Each experiment at reduced size."""

    def test_weyl_rotation(self, settings):
        result = run_experiment("weyl-rotation", {"n": 10_000}, settings)
        assert result.passed
        assert all(row["within_bound"] for row in result.rows)
        assert result.summary["certified_error"] <= 2.0**-60

    def test_pisot_exceptional(self, settings):
        result = run_experiment("pisot-exceptional", {}, settings)
        assert result.passed
        assert result.verdict == "exceptional confirmed"
        assert result.summary["integer_d_star_is_one"]
        assert result.summary["oracle_max_error"] <= 1e-9

    def test_pisot_silver(self, settings):
        assert run_experiment("pisot-exceptional", {"beta": "silver"}, settings).passed

    def test_non_pisot_beta_is_not_exceptional(self, settings):
        result = run_experiment("pisot-exceptional", {"beta": "3/2", "n": 1000}, settings)
        assert not result.passed
        assert result.summary["oracle_max_error"] is None

    def test_main_theorem_beta(self, settings):
        result = run_experiment(
            "main-theorem-beta", {"samples": 4, "n": 1024, "min_pass_fraction": 0.0}, settings
        )
        assert result.passed
        exceptions = result.summary["exceptional_d_star"]["Q=0"]
        assert exceptions["2"] == 1.0
        assert exceptions["1/2+1/2*sqrt(5)"] > 0.4
        assert set(result.summary["pass_fractions"]) == {"Q=0", "Q=0,1,sqrt(2)"}
        assert {row["variant"] for row in result.rows} == {"Q=0", "Q=0,1,sqrt(2)"}

    def test_main_theorem_alpha(self, settings):
        result = run_experiment(
            "main-theorem-alpha", {"samples": 4, "n": 1024, "min_pass_fraction": 0.0}, settings
        )
        assert result.passed
        assert result.summary["periodic_failed"]

    def test_main_theorem_family(self, settings):
        result = run_experiment(
            "main-theorem-family", {"samples": 3, "n": 512, "min_pass_fraction": 0.0}, settings
        )
        assert result.summary["family"] == ["1", "x", "exp(x)", "x^2+1"]
        assert len(result.rows) == 3

    def test_mobius_oscillation(self, settings):
        result = run_experiment(
            "mobius-oscillation",
            {
                "n": 20_000,
                "checkpoints": "5000,20000",
                "identity_limit": 1000,
                "density_tolerance": 0.01,
                "min_non_increasing": 0,
            },
            settings,
        )
        assert result.summary["divisor_sum_identity"]
        assert result.summary["density_ok"]
        assert result.summary["checkpoints"] == [5000, 20000]
        assert len(result.rows) == 9
        assert {"avg_5000", "avg_20000"} <= set(result.rows[0])

    def test_vdc_identity(self, settings):
        result = run_experiment("vdc-identity", {"n": 40, "poly_trials": 10}, settings)
        assert result.passed
        assert result.verdict == "exact match"
        assert result.summary["checks"] == 13

    def test_vdc_identity_with_prefactor(self, settings):
        result = run_experiment(
            "vdc-identity", {"n": 30, "g": "x^2+1", "hs": "2", "alpha": "-2/3", "poly_trials": 0}, settings
        )
        assert result.passed

    def test_koksma_gap(self, settings):
        result = run_experiment("koksma-gap", {"grid_points": 16}, settings)
        assert result.passed
        assert result.summary["monotone_ok"]
        assert result.summary["L_lower"] > 0
        assert result.summary["alpha_variable_L_lower"] > 0

    def test_koksma_gap_with_surd_endpoints(self, settings):
        result = run_experiment(
            "koksma-gap", {"alpha": "sqrt(3)", "a": "sqrt(2)", "eta": "1+sqrt(2)", "grid_points": 16}, settings
        )
        assert result.passed, result.verdict
        assert result.summary["interval"] == ["sqrt(2)", "1+sqrt(2)"]

    def test_discrepancy_oracle(self, settings):
        result = run_experiment("discrepancy-oracle", {"samples": 20, "max_n": 100}, settings)
        assert result.passed
        assert len(result.rows) == 20

    def test_precision_certification(self, settings):
        result = run_experiment("precision-certification", {"n": 500, "exact_check_n": 200}, settings)
        assert result.passed
        assert result.summary["agreement"] <= 2.0**-53
        assert result.summary["exact_agreement"] <= 2.0**-53


@pytest.mark.slow
class TestExperimentsFullSize:
    """Every experiment with its documented defaults."""

    @pytest.mark.parametrize("name", EXPERIMENTS)
    def test_passes(self, name, settings):
        result = run_experiment(name, None, settings)
        assert result.passed, result.verdict
