"""FastAPI API routes for Bell-FdB Lab."""

from fastapi import APIRouter

from src.api.bell import router as bell_router
from src.api.compose import router as compose_router
from src.api.verify import router as verify_router

api_router = APIRouter()

api_router.include_router(bell_router, prefix="/bell", tags=["bell"])
api_router.include_router(compose_router, prefix="/compose", tags=["compose"])
api_router.include_router(verify_router, prefix="/verify", tags=["verify"])

__all__ = ["api_router"]
