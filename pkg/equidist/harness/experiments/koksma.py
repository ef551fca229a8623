"""Grid diagnostic of the derivative-gap hypothesis, cross-checked by finite differences."""

import logging
from fractions import Fraction

from ...analysis import gap_grid, koksma_gap_check, koksma_gap_check_alpha, y_jet
from ...config import EquidistSettings
from ...models import ExperimentResult
from ...precision import parse_exact, parse_gexpr, refine
from .base import BaseExperiment

logger = logging.getLogger(__name__)

FD_STEP = Fraction(1, 10**6)
FD_TOLERANCE = 1e-6


def finite_difference_gap(alpha, g, exponents, grid, n: int, m: int, prec: int) -> list[float]:
    """Central-difference estimates of y'_n - y'_m at each grid ball."""
    alpha_ball = refine(alpha, prec)
    out = []
    for x in grid:
        lo = x - FD_STEP
        hi = x + FD_STEP
        y_hi = y_jet(alpha_ball, g, exponents, hi, n).value - y_jet(alpha_ball, g, exponents, hi, m).value
        y_lo = y_jet(alpha_ball, g, exponents, lo, n).value - y_jet(alpha_ball, g, exponents, lo, m).value
        out.append(float(y_hi - y_lo) / float(2 * FD_STEP))
    return out


class KoksmaGapExperiment(BaseExperiment):
    """Monotone, separated derivative gaps for y_n(x) = alpha g(x) x^n prod(x^h - 1)."""

    name = "koksma-gap"
    description = "derivative-gap diagnostic on a grid over [a, eta]"
    defaults = {
        "alpha": "1",
        "g": "x",
        "hs": [1],
        "a": "11/10",
        "eta": "2",
        "n_max": 6,
        "m_max": 5,
        "grid_points": 64,
        "prec": 128,
        "alpha_beta": "3/2",
    }

    def run(self, params, settings: EquidistSettings) -> ExperimentResult:
        alpha = parse_exact(params["alpha"])
        g = parse_gexpr(params["g"])
        exponents = tuple(params["hs"])
        a, eta = parse_exact(params["a"]), parse_exact(params["eta"])
        m_max = min(params["m_max"], params["n_max"] - 1)
        report = koksma_gap_check(
            alpha, g, exponents, (a, eta), params["n_max"], m_max, params["grid_points"], params["prec"]
        )

        # finite differences on the same grid, oriented like the ball check
        grid = gap_grid(a, eta, params["grid_points"], params["prec"])
        orientation = 1 if alpha > 0 else -1
        fd_min = None
        rows = []
        for pair in report.pairs:
            fd = [orientation * v for v in finite_difference_gap(alpha, g, exponents, grid, pair.n, pair.m, params["prec"])]
            fd_min = min(fd) if fd_min is None else min(fd_min, min(fd))
            rows.append({**pair.model_dump(), "fd_min": min(fd), "fd_max": max(fd)})

        fd_agrees = abs(fd_min - report.L_lower) <= FD_TOLERANCE * max(1.0, abs(report.L_lower))
        alpha_report = koksma_gap_check_alpha(params["alpha_beta"], g, exponents, params["n_max"], m_max)

        passed = report.monotone_ok and report.L_lower > 0 and fd_agrees
        verdict = (
            f"monotone_ok={report.monotone_ok}, L_lower={report.L_lower:.6g} ({report.certificate}), "
            f"finite differences {'agree' if fd_agrees else 'disagree'}"
        )
        logger.info("koksma-gap: %s", verdict)
        return ExperimentResult(
            name=self.name,
            passed=passed,
            verdict=verdict,
            summary={
                "interval": list(report.interval),
                "monotone_ok": report.monotone_ok,
                "strictly_increasing": report.strictly_increasing,
                "L_lower": report.L_lower,
                "fd_min": fd_min,
                "certificate": report.certificate,
                "alpha_variable_L_lower": alpha_report.L_lower,
            },
            rows=rows,
        )
