"""Routes experiment names to their implementations."""

import logging
from typing import Any, Mapping, Optional

from ...config import EquidistSettings
from ...errors import UnknownExperiment
from ...models import ExperimentResult
from ..reports import write_report
from .base import BaseExperiment
from .certification import DiscrepancyOracleExperiment, PrecisionCertificationExperiment
from .exceptional import PisotExceptionalExperiment
from .identities import VdcIdentityExperiment
from .koksma import KoksmaGapExperiment
from .mobius import MobiusOscillationExperiment
from .rotation import WeylRotationExperiment
from .theorem import MainTheoremAlphaExperiment, MainTheoremBetaExperiment, MainTheoremFamilyExperiment

logger = logging.getLogger(__name__)


class ExperimentRouter:
    """Looks up experiments by name and runs them with overrides."""

    def __init__(self):
        experiments: list[BaseExperiment] = [
            WeylRotationExperiment(),
            PisotExceptionalExperiment(),
            MainTheoremBetaExperiment(),
            MainTheoremAlphaExperiment(),
            MobiusOscillationExperiment(),
            VdcIdentityExperiment(),
            KoksmaGapExperiment(),
            DiscrepancyOracleExperiment(),
            PrecisionCertificationExperiment(),
            MainTheoremFamilyExperiment(),
        ]
        self.experiments = {e.name: e for e in experiments}

    def names(self) -> list[str]:
        return list(self.experiments)

    def get(self, name: str) -> BaseExperiment:
        """Find an experiment.

        Raises:
            UnknownExperiment: no experiment has that name
        """
        try:
            return self.experiments[name]
        except KeyError:
            raise UnknownExperiment(f"unknown experiment {name!r} (known: {', '.join(self.names())})") from None

    def run(
        self,
        name: str,
        overrides: Optional[Mapping[str, Any]] = None,
        settings: Optional[EquidistSettings] = None,
        out_dir: Optional[str] = None,
        formats: tuple[str, ...] = ("csv", "json"),
    ) -> ExperimentResult:
        """Run an experiment and write <name>.csv / <name>.json when out_dir is given.

        Args:
            name: Registered experiment name
            overrides: Parameter overrides (keys from the experiment defaults)
            settings: Precision and worker settings (defaults if not provided)
            out_dir: Report directory; nothing is written without it
            formats: Report formats to write

        Returns:
            ExperimentResult with files filled in
        """
        experiment = self.get(name)
        settings = settings or EquidistSettings()
        params = experiment.params(overrides)
        logger.info("Running experiment %s with %s", name, params)
        result = experiment.run(params, settings)
        if out_dir is not None:
            result.files = write_report(name, result, result.rows, out_dir, formats)
        logger.info("Experiment %s: %s (%s)", name, "PASS" if result.passed else "FAIL", result.verdict)
        return result


_router: Optional[ExperimentRouter] = None


def get_router() -> ExperimentRouter:
    """Process-wide router instance."""
    global _router
    if _router is None:
        _router = ExperimentRouter()
    return _router


def run_experiment(
    name: str,
    overrides: Optional[Mapping[str, Any]] = None,
    settings: Optional[EquidistSettings] = None,
    out_dir: Optional[str] = None,
    formats: tuple[str, ...] = ("csv", "json"),
) -> ExperimentResult:
    return get_router().run(name, overrides, settings, out_dir, formats)
