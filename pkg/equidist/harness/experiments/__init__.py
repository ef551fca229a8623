"""Named acceptance experiments."""

from .base import BaseExperiment
from .router import ExperimentRouter, get_router, run_experiment

__all__ = ["BaseExperiment", "ExperimentRouter", "get_router", "run_experiment"]
