"""Experiment listing and execution endpoints."""

import logging
from typing import Optional

from fastapi import APIRouter
from pydantic import BaseModel

from ..config import get_settings
from ..errors import EquidistError
from ..harness import get_router
from ..models import ExperimentRequest, ExperimentResult
from .errors import http_error

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/experiments", tags=["experiments"])


class ExperimentInfo(BaseModel):
    name: str
    description: str
    defaults: dict


@router.get("", response_model=list[ExperimentInfo])
async def list_experiments():
    """Registered experiments with their default parameters."""
    experiments = get_router().experiments.values()
    return [ExperimentInfo(name=e.name, description=e.description, defaults=e.defaults) for e in experiments]


@router.post("/{name}", response_model=ExperimentResult)
def run(name: str, request: Optional[ExperimentRequest] = None):
    """Run an experiment; report files are written only when out_dir is set."""
    try:
        request = request or ExperimentRequest()
        return get_router().run(name, request.overrides, get_settings(), request.out_dir)
    except EquidistError as e:
        raise http_error(e) from e
