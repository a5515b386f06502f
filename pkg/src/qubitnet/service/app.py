"""FastAPI application exposing the simulator operations."""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..snapshots import SnapshotVersionError
from . import handlers
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    DetectRequest,
    DetectResponse,
    EvolveRequest,
    EvolveResponse,
    HealthResponse,
    PrepareRequest,
    PrepareResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="qubitnet", version=__version__)

    @app.exception_handler(ValueError)
    async def domain_error(request: Request, error: ValueError) -> JSONResponse:
        # Snapshot version skew gets its own code so clients can tell a
        # stale file from a bad configuration.
        code = "version" if isinstance(error, SnapshotVersionError) else "config"
        return JSONResponse(
            status_code=400, content={"detail": {"code": code, "message": str(error)}}
        )

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/v1/evolve", response_model=EvolveResponse)
    async def evolve(request: EvolveRequest) -> EvolveResponse:
        return handlers.handle_evolve(request)

    @app.post("/v1/analyze", response_model=AnalyzeResponse)
    async def analyze(request: AnalyzeRequest) -> AnalyzeResponse:
        return handlers.handle_analyze(request)

    @app.post("/v1/prepare", response_model=PrepareResponse)
    async def prepare(request: PrepareRequest) -> PrepareResponse:
        return handlers.handle_prepare(request)

    @app.post("/v1/detect", response_model=DetectResponse)
    async def detect(request: DetectRequest) -> DetectResponse:
        return handlers.handle_detect(request)

    return app
