import logging

from .config import get_settings

logging.basicConfig(
    level=getattr(logging, get_settings().log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)

# Imports after logging configuration
from fastapi import FastAPI  # noqa: E402

from . import __version__  # noqa: E402
from .routers import analysis, experiments, sequences, system  # noqa: E402

logger = logging.getLogger(__name__)

app = FastAPI(title="equidist", version=__version__)

# Register routers
app.include_router(system.router)
app.include_router(sequences.router)
app.include_router(analysis.router)
app.include_router(experiments.router)


@app.get("/api/health")
async def health_check():
    return {"status": "ok", "version": __version__}
