"""Self-checks of the measurement machinery: discrepancy oracle and precision certificates."""

import logging
import math

import numpy as np

from ...analysis import star_discrepancy, star_discrepancy_bruteforce
from ...config import EquidistSettings
from ...errors import PrecisionExhausted
from ...models import ExperimentResult
from ...precision import parse_exact
from ...sequences import SequenceSpec, generate_power_sequence
from ..scan import dyadic_samples
from .base import BaseExperiment
from .exceptional import circular_distance

logger = logging.getLogger(__name__)

CERTIFIED_ERROR = 2.0**-60
AGREEMENT = 2.0**-53


class DiscrepancyOracleExperiment(BaseExperiment):
    """Closed-form D* against the O(N^2) interval supremum on seeded samples.

    Every fourth sample is drawn from a 1/16 grid so ties are exercised.
    """

    name = "discrepancy-oracle"
    description = "fast star discrepancy vs brute force"
    defaults = {"samples": 200, "max_n": 512, "seed": 0, "tolerance": 1e-12}

    def run(self, params, settings: EquidistSettings) -> ExperimentResult:
        rng = np.random.default_rng(params["seed"])
        rows = []
        for trial in range(params["samples"]):
            n = int(rng.integers(1, params["max_n"] + 1))
            if trial % 4 == 3:
                x = rng.integers(0, 16, n) / 16.0
            else:
                x = rng.random(n)
            fast = star_discrepancy(x).d_star
            brute = star_discrepancy_bruteforce(x)
            rows.append({"trial": trial, "n": n, "fast": fast, "bruteforce": brute, "difference": abs(fast - brute)})

        worst = max(row["difference"] for row in rows)
        passed = worst <= params["tolerance"]
        verdict = f"max |fast - brute force| = {worst:.3g}"
        logger.info("discrepancy-oracle: %s", verdict)
        return ExperimentResult(
            name=self.name,
            passed=passed,
            verdict=verdict,
            summary={"samples": len(rows), "max_difference": worst, "tolerance": params["tolerance"]},
            rows=rows,
        )


class PrecisionCertificationExperiment(BaseExperiment):
    """Ball-path generation at two working margins must agree and stay certified.

    A run may raise PrecisionExhausted instead, which also counts as honest;
    what must never happen is an uncertified residue. The exact integer path
    serves as a reference on a shorter prefix.
    """

    name = "precision-certification"
    description = "certified error and agreement across working precisions"
    defaults = {
        "alpha": "1",
        "lo": "1",
        "hi": "2",
        "beta_bits": 300,
        "seed": 0,
        "n": 10_000,
        "margins": [96, 192],
        "exact_check_n": 2000,
    }

    def run(self, params, settings: EquidistSettings) -> ExperimentResult:
        beta = dyadic_samples(parse_exact(params["lo"]), parse_exact(params["hi"]), 1, params["beta_bits"], params["seed"])[0]
        spec = SequenceSpec(alpha=params["alpha"], beta=beta)
        n = params["n"]

        rows, runs = [], []
        for margin in params["margins"]:
            ball_settings = settings.model_copy(update={"exact_rational_path": False, "precision_margin_bits": margin})
            try:
                x = generate_power_sequence(spec, n, ball_settings)
            except PrecisionExhausted as e:
                logger.warning("precision-certification: margin %d exhausted: %s", margin, e)
                rows.append({"run": f"ball margin={margin}", "certified_error": None, "certified": True, "raised": True})
                continue
            certified = x.certified_error <= CERTIFIED_ERROR
            rows.append(
                {
                    "run": f"ball margin={margin}",
                    "certified_error": x.certified_error,
                    "working_bits": x.meta.working_bits,
                    "escalations": x.meta.escalations,
                    "certified": certified,
                    "raised": False,
                }
            )
            runs.append(x)

        agreement = None
        if len(runs) >= 2:
            agreement = float(max(np.max(circular_distance(runs[0].values, other.values)) for other in runs[1:]))

        exact_agreement = None
        if params["exact_check_n"] and runs:
            m = min(params["exact_check_n"], n)
            exact_settings = settings.model_copy(update={"exact_rational_path": True, "exact_cost_ratio": math.inf})
            exact = generate_power_sequence(spec, m, exact_settings)
            exact_agreement = float(np.max(circular_distance(runs[0].values[:m], exact.values)))
            rows.append({"run": f"exact n={m}", "certified_error": exact.certified_error, "certified": True, "raised": False})

        certified = all(row["certified"] for row in rows)
        agrees = agreement is None or agreement <= AGREEMENT
        exact_ok = exact_agreement is None or exact_agreement <= AGREEMENT
        passed = certified and agrees and exact_ok
        verdict = (
            f"certified: {certified}, agreement {agreement if agreement is not None else '-'}"
            f", exact-path agreement {exact_agreement if exact_agreement is not None else '-'}"
        )
        logger.info("precision-certification: %s", verdict)
        return ExperimentResult(
            name=self.name,
            passed=passed,
            verdict=verdict,
            summary={
                "beta": str(beta),
                "n": n,
                "agreement": agreement,
                "exact_agreement": exact_agreement,
                "certified": certified,
            },
            rows=rows,
        )
