"""System information endpoint."""

import logging
from typing import Any

from fastapi import APIRouter
from pydantic import BaseModel

from .. import __version__
from ..config import get_settings
from ..harness import get_router

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/system", tags=["system"])


class SystemInfo(BaseModel):
    version: str = __version__
    settings: dict[str, Any]
    experiments: list[str]


@router.get("/info", response_model=SystemInfo)
async def get_system_info():
    """Version, active settings and registered experiments."""
    return SystemInfo(settings=get_settings().model_dump(), experiments=get_router().names())
