"""Analysis pipeline orchestrator.

Runs one sequence spec through the measurement stages:
1. Generates the certified fractional parts
2. Computes the star discrepancy
3. Computes the Weyl sums for h = 1..H

Each stage after generation can be switched off. The result is a plain
dictionary so scans and the HTTP layer can pick what they need.
"""

import logging
from typing import Iterable, Optional

from ..analysis import star_discrepancy, ud_test
from ..config import EquidistSettings
from ..sequences import SequenceSpec, generate_power_sequence

logger = logging.getLogger(__name__)


class AnalysisPipeline:
    """Orchestrates generation, discrepancy and Weyl sums for one spec.

    A spec passes when D*_N is below the discrepancy threshold. The Weyl
    report is attached as a diagnostic and does not enter the verdict.
    """

    def __init__(
        self,
        settings: Optional[EquidistSettings] = None,
        threshold: float = 0.05,
        h_max: Optional[int] = None,
        checkpoints: Optional[Iterable[int]] = None,
        enable_discrepancy: bool = True,
        enable_weyl: bool = True,
    ):
        """Initialize the pipeline.

        Args:
            settings: Precision and worker settings (uses defaults if not provided)
            threshold: D* pass threshold
            h_max: Largest Weyl frequency (settings.default_h_max if not provided)
            checkpoints: Weyl checkpoints (final N only if not provided)
            enable_discrepancy: Run the D* stage
            enable_weyl: Run the Weyl stage
        """
        self.settings = settings or EquidistSettings()
        self.threshold = threshold
        self.h_max = h_max or self.settings.default_h_max
        self.checkpoints = list(checkpoints) if checkpoints is not None else None
        self.enable_discrepancy = enable_discrepancy
        self.enable_weyl = enable_weyl

    def process(self, spec: SequenceSpec, n: int) -> dict:
        """Run one spec through the pipeline.

        Args:
            spec: Sequence parameters
            n: Number of terms N

        Returns:
            Dictionary with results from each stage:
            - sample: ModOneSample with the certified residues
            - discrepancy: DiscrepancyReport (None if disabled)
            - weyl: WeylReport (None if disabled)
            - passed: D* < threshold (None if the D* stage is disabled)

        Raises:
            PrecisionExhausted: generation could not certify the residues
        """
        result = {}

        # Stage 1: certified generation
        sample = generate_power_sequence(spec, n, self.settings)
        result["sample"] = sample

        # Stage 2: star discrepancy
        if self.enable_discrepancy:
            report = star_discrepancy(sample)
            result["discrepancy"] = report
            result["passed"] = report.d_star < self.threshold
        else:
            result["discrepancy"] = None
            result["passed"] = None

        # Stage 3: Weyl sums
        if self.enable_weyl:
            result["weyl"] = ud_test(sample, self.h_max, self.checkpoints, settings=self.settings)
        else:
            result["weyl"] = None

        logger.debug(
            "Pipeline %s N=%d: D*=%s passed=%s",
            spec,
            n,
            f"{result['discrepancy'].d_star:.4f}" if result["discrepancy"] else "-",
            result["passed"],
        )
        return result
