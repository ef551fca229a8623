"""Discrepancy and Weyl-sum endpoints."""

import logging

from fastapi import APIRouter

from ..analysis import star_discrepancy, ud_test
from ..config import get_settings
from ..errors import EquidistError
from ..models import AnalysisRequest, DiscrepancyReport, WeylReport
from ..sequences import ModOneSample, SequenceSpec, generate_power_sequence
from .errors import http_error

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/analysis", tags=["analysis"])


def _generate(request: AnalysisRequest) -> ModOneSample:
    spec = SequenceSpec.from_mapping(request.spec.to_mapping())
    return generate_power_sequence(spec, request.n, get_settings())


@router.post("/discrepancy", response_model=DiscrepancyReport)
def discrepancy(request: AnalysisRequest):
    """Star discrepancy of the first N terms."""
    try:
        return star_discrepancy(_generate(request))
    except EquidistError as e:
        raise http_error(e) from e


@router.post("/weyl", response_model=WeylReport)
def weyl(request: AnalysisRequest):
    """Weyl sums for h = 1..H at the requested checkpoints."""
    try:
        x = _generate(request)
        return ud_test(x, request.h_max, request.checkpoints, request.threshold, get_settings())
    except EquidistError as e:
        raise http_error(e) from e
