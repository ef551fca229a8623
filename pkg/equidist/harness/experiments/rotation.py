"""Weyl sums of an irrational rotation against the geometric-sum bound."""

import logging
import math

from ...analysis import ud_test
from ...config import EquidistSettings
from ...models import ExperimentResult
from ...precision import frac_mod_one, parse_exact, refine
from ...sequences import Polynomial, poly_mod_one
from .base import BaseExperiment

logger = logging.getLogger(__name__)

# slack for the float64 summation of N unit phases
SUM_SLACK = 1e-12


class WeylRotationExperiment(BaseExperiment):
    """x_n = {n * alpha}: |S_N(h)| <= 1 / (N * |sin(pi * h * alpha)|) for every h.

    The sum of exp(2 pi i n h alpha) is a geometric series whose modulus is
    |sin(pi N h alpha)| / |sin(pi h alpha)|, which gives the bound.
    """

    name = "weyl-rotation"
    description = "Weyl sums of {n * phi} against the geometric-sum bound"
    defaults = {"alpha": "phi", "n": 100_000, "h_max": 5, "bits": 128}

    def run(self, params, settings: EquidistSettings) -> ExperimentResult:
        alpha = parse_exact(params["alpha"])
        n = params["n"]
        x = poly_mod_one(Polynomial.monomial(alpha, 1), n, settings)
        report = ud_test(x, params["h_max"], settings=settings)
        alpha_ball = refine(alpha, params["bits"])

        rows = []
        for h in range(1, params["h_max"] + 1):
            phase = float(frac_mod_one(alpha_ball * h))
            bound = 1.0 / (n * abs(math.sin(math.pi * phase)))
            magnitude = report.magnitude(h)
            rows.append(
                {
                    "h": h,
                    "magnitude": magnitude,
                    "bound": bound,
                    "within_bound": magnitude <= bound + SUM_SLACK,
                }
            )
        passed = all(row["within_bound"] for row in rows)
        verdict = "geometric bound holds for every h" if passed else "geometric bound violated"
        logger.info("weyl-rotation: %s", verdict)
        return ExperimentResult(
            name=self.name,
            passed=passed,
            verdict=verdict,
            summary={
                "alpha": str(alpha),
                "n": n,
                "h_max": params["h_max"],
                "max_magnitude": report.max_magnitude,
                "certified_error": x.certified_error,
            },
            rows=rows,
        )
