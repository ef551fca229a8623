"""Oscillation of the Mobius sequence against monomial phases."""

import logging

from ...analysis import oscillation_avg
from ...config import EquidistSettings
from ...mobius import divisor_sum_identity_holds, mobius_sequence, mobius_sieve, squarefree_density
from ...models import ExperimentResult
from ...precision import parse_exact
from ...sequences import Polynomial
from .base import BaseExperiment

logger = logging.getLogger(__name__)

# sqrt(1013211836) / 100000 = 0.3183098861..., within 1e-10 of 1/pi
INV_PI_PROXY = "sqrt(1013211836)/100000"


class MobiusOscillationExperiment(BaseExperiment):
    """mu(n) against t * n^k for the listed t and k.

    Passes when the sieve satisfies the divisor-sum identity and the
    squarefree density check, every final |average| is below threshold,
    and at least min_non_increasing averages do not grow between the
    first and the last checkpoint.
    """

    name = "mobius-oscillation"
    description = "|(1/N) sum mu(n) e(t n^k)| at N = 2.5e5 and 1e6"
    defaults = {
        "n": 1_000_000,
        "checkpoints": [250_000, 1_000_000],
        "ts": ["sqrt(2)-1", INV_PI_PROXY, "3/7"],
        "degrees": [1, 2, 3],
        "identity_limit": 10_000,
        "density_target": 0.6079,
        "density_tolerance": 0.001,
        "threshold": 0.05,
        "min_non_increasing": 8,
    }

    def run(self, params, settings: EquidistSettings) -> ExperimentResult:
        n = params["n"]
        checkpoints = [point for point in params["checkpoints"] if point <= n] or [n]
        table = mobius_sieve(n, settings)
        identity_ok = divisor_sum_identity_holds(table, params["identity_limit"])
        density = squarefree_density(table, n)
        density_ok = abs(density - params["density_target"]) <= params["density_tolerance"]
        mu = mobius_sequence(table, n)

        rows = []
        for t_text in params["ts"]:
            t = parse_exact(t_text)
            for k in params["degrees"]:
                report = oscillation_avg(mu, Polynomial.monomial(t, k), checkpoints, settings)
                row = {"t": t_text, "k": k}
                row.update({f"avg_{e.n}": e.magnitude for e in report.entries})
                row["non_increasing"] = report.non_increasing
                row["below_threshold"] = report.final_magnitude < params["threshold"]
                rows.append(row)

        non_increasing = sum(row["non_increasing"] for row in rows)
        all_small = all(row["below_threshold"] for row in rows)
        passed = identity_ok and density_ok and all_small and non_increasing >= params["min_non_increasing"]
        verdict = (
            f"{non_increasing}/{len(rows)} averages non-increasing, "
            f"all below {params['threshold']}: {all_small}, density {density:.4f}"
        )
        logger.info("mobius-oscillation: %s", verdict)
        return ExperimentResult(
            name=self.name,
            passed=passed,
            verdict=verdict,
            summary={
                "n": n,
                "checkpoints": checkpoints,
                "divisor_sum_identity": identity_ok,
                "squarefree_density": density,
                "density_ok": density_ok,
                "non_increasing": non_increasing,
                "pairs": len(rows),
            },
            rows=rows,
        )
