"""Main FastAPI application."""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.api import api_router
from src.config import get_settings
from src.exceptions import BellFdbError
from src.services.fdb import get_fdb_service

# Configure logging
settings = get_settings()
logging.basicConfig(
    level=getattr(logging, settings.log_level),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

VERSION = "0.1.0"


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    logger.info("Starting Bell-FdB Lab...")
    logger.info(
        f"Bell cache: {'on' if settings.bell_cache_enabled else 'off'}, "
        f"fdb workers: {settings.fdb_workers}"
    )
    yield
    logger.info("Shutting down Bell-FdB Lab...")


app = FastAPI(
    title="Bell-FdB Lab",
    description="Multivariate Bell polynomials and the Faa di Bruno formula in exact arithmetic",
    version=VERSION,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(api_router, prefix="/api")


@app.exception_handler(BellFdbError)
async def bell_fdb_error_handler(request: Request, exc: BellFdbError) -> JSONResponse:
    """Domain and contract errors become 422 with the message as detail."""
    logger.info(f"{request.method} {request.url.path} rejected: {exc}")
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    cache = get_fdb_service().cache
    return JSONResponse(
        content={
            "status": "healthy",
            "version": VERSION,
            "bell_cache_enabled": cache.enabled,
            "bell_cache_entries": len(cache),
        }
    )


@app.get("/")
async def root():
    return JSONResponse(
        content={
            "message": "Welcome to Bell-FdB Lab",
            "docs": "/docs",
            "health": "/health",
        }
    )


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "src.main:app",
        host=settings.host,
        port=settings.port,
        reload=True,
    )
