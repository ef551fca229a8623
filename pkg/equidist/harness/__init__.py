"""Scans, the analysis pipeline, experiments and report emission."""

from .experiments import ExperimentRouter, get_router, run_experiment
from .pipeline import AnalysisPipeline
from .reports import write_report
from .scan import BETA_EXCEPTIONS, SURD_Q, dyadic_samples, run_scan, scan_alpha, scan_beta

__all__ = [
    "AnalysisPipeline",
    "BETA_EXCEPTIONS",
    "ExperimentRouter",
    "SURD_Q",
    "dyadic_samples",
    "get_router",
    "run_experiment",
    "run_scan",
    "scan_alpha",
    "scan_beta",
    "write_report",
]
