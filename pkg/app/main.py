import uuid
from contextlib import asynccontextmanager

import uvicorn
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from loguru import logger
from prometheus_client import make_asgi_app
from starlette.middleware.base import BaseHTTPMiddleware
from starlette.middleware.gzip import GZipMiddleware
from starlette.requests import Request
from starlette.responses import Response

from app.exceptions import ArgumentError, CollinearException, InputError, NumericalError
from app.fixtures import FIXTURES
from app.middleware.logging_middleware import JSONLoggingMiddleware
from app.routes import analysis as analysis_routes
from app.utils import configure_logging
from config.settings import get_settings

settings = get_settings()


class RequestIDMiddleware(BaseHTTPMiddleware):
    async def dispatch(self, request: Request, call_next):
        request_id = request.headers.get("X-Request-ID", str(uuid.uuid4()))
        request.state.request_id = request_id
        response = await call_next(request)
        response.headers["X-Request-ID"] = request_id
        return response


class RequestSizeLimitMiddleware(BaseHTTPMiddleware):
    """Reject oversized inline datasets before parsing"""
    def __init__(self, app, max_size: int = 10_000_000):
        super().__init__(app)
        self.max_size = max_size

    async def dispatch(self, request: Request, call_next):
        if request.headers.get("content-length"):
            size = int(request.headers["content-length"])
            if size > self.max_size:
                return Response(status_code=413, content="Request too large")
        return await call_next(request)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application lifecycle"""
    configure_logging(settings.log_level, settings.log_json, settings.log_file)
    logger.info(f"Starting {settings.app_name} {settings.app_version}")
    yield
    logger.info(f"Shutting down {settings.app_name}")


app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Regression analysis for strongly correlated predictors",
    docs_url=("/docs" if settings.docs_enabled else None),
    redoc_url=("/redoc" if settings.docs_enabled else None),
    lifespan=lifespan,
)

# First added = innermost
app.add_middleware(GZipMiddleware, minimum_size=1000)
app.add_middleware(RequestSizeLimitMiddleware)
app.add_middleware(JSONLoggingMiddleware)
app.add_middleware(RequestIDMiddleware)

app.include_router(analysis_routes.router, prefix=settings.api_prefix, tags=["Analysis"])

if settings.metrics_enabled:
    metrics_app = make_asgi_app()
    app.mount("/metrics", metrics_app)


def _status_for(exc: CollinearException) -> int:
    if isinstance(exc, InputError):
        return 400
    if isinstance(exc, ArgumentError):
        return 422
    if isinstance(exc, NumericalError):
        return 409
    return 500


@app.exception_handler(CollinearException)
async def collinear_exception_handler(request: Request, exc: CollinearException):
    status = _status_for(exc)
    logger.error(f"{request.method} {request.url.path} failed ({status}): {exc}")
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "detail": str(exc), "exit_code": exc.exit_code},
    )


@app.get("/")
async def root():
    """Root endpoint"""
    return {
        "message": settings.app_name,
        "version": settings.app_version,
        "docs": "/docs" if settings.docs_enabled else "disabled",
        "health": "/health",
        "fixtures": sorted(FIXTURES),
    }


@app.get("/health")
async def health_check():
    """Liveness check; the service has no external dependencies"""
    return {"status": "ok", "version": settings.app_version}


if __name__ == "__main__":
    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=8000,
        reload=settings.debug,
        log_level=settings.log_level.lower(),
    )
