"""Sequence generation endpoint."""

import logging

from fastapi import APIRouter

from ..config import get_settings
from ..errors import EquidistError
from ..models import GenerateRequest, GenerateResponse
from ..sequences import SequenceSpec, generate_power_sequence
from .errors import http_error

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/sequences", tags=["sequences"])


@router.post("/generate", response_model=GenerateResponse)
def generate(request: GenerateRequest):
    """Certified fractional parts of the requested family member."""
    try:
        spec = SequenceSpec.from_mapping(request.spec.to_mapping())
        sample = generate_power_sequence(spec, request.n, get_settings())
    except EquidistError as e:
        raise http_error(e) from e
    meta = sample.meta
    return GenerateResponse(
        n=request.n,
        values=sample.values.tolist() if request.keep_values else [],
        certified_error=sample.certified_error,
        path=meta.path,
        working_bits=meta.working_bits,
        escalations=meta.escalations,
        degraded=meta.degraded,
    )
