"""Mapping of library errors to HTTP errors."""

import logging

from fastapi import HTTPException

from ..errors import EquidistError, PrecisionExhausted, UnknownExperiment

logger = logging.getLogger(__name__)


def http_error(error: EquidistError) -> HTTPException:
    """404 for unknown experiments, 422 for exhausted precision, 400 otherwise."""
    if isinstance(error, UnknownExperiment):
        return HTTPException(status_code=404, detail=str(error.args[0]) if error.args else "unknown experiment")
    if isinstance(error, PrecisionExhausted):
        logger.warning("Request hit the precision cap: %s", error)
        return HTTPException(status_code=422, detail=str(error))
    return HTTPException(status_code=400, detail=str(error))
