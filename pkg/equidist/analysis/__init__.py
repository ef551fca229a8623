"""Measurement engines: Weyl sums, discrepancy, oscillation and the gap diagnostic."""

from .discrepancy import star_discrepancy, star_discrepancy_bruteforce
from .koksma import gap_grid, koksma_gap_check, koksma_gap_check_alpha, product_jet, y_jet
from .oscillation import (
    OSCILLATION_THRESHOLD,
    growth_condition,
    oscillation_avg,
    oscillation_profile,
)
from .summation import CompensatedSum, compensated_sum, normalize_checkpoints, prefix_sums, two_sum
from .weyl import ud_test, weyl_sum

__all__ = [
    "CompensatedSum",
    "OSCILLATION_THRESHOLD",
    "compensated_sum",
    "gap_grid",
    "growth_condition",
    "koksma_gap_check",
    "koksma_gap_check_alpha",
    "normalize_checkpoints",
    "oscillation_avg",
    "oscillation_profile",
    "prefix_sums",
    "product_jet",
    "star_discrepancy",
    "star_discrepancy_bruteforce",
    "two_sum",
    "ud_test",
    "weyl_sum",
    "y_jet",
]
