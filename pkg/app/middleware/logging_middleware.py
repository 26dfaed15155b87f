import time

from loguru import logger
from starlette.middleware.base import BaseHTTPMiddleware
from starlette.requests import Request
from starlette.responses import Response


class JSONLoggingMiddleware(BaseHTTPMiddleware):
    """One structured http_request record per request"""

    async def dispatch(self, request: Request, call_next):
        start = time.perf_counter()
        status_code = 500
        try:
            response: Response = await call_next(request)
            status_code = response.status_code
            return response
        finally:
            elapsed = time.perf_counter() - start
            # Route template keeps cardinality low
            route = request.scope.get("route")
            path = getattr(route, "path", None) or request.url.path
            logger.bind(
                method=request.method,
                path=path,
                status=status_code,
                duration_ms=round(elapsed * 1000, 2),
                request_id=getattr(request.state, "request_id", None),
            ).info("http_request")
