"""Computation services for Bell-FdB Lab."""

from src.services.bell import BellCache, render_bell_table
from src.services.fdb import FaaDiBrunoService, get_fdb_service
from src.services.tracing import TracingService
from src.services.verification import VerificationService

__all__ = [
    "BellCache",
    "render_bell_table",
    "FaaDiBrunoService",
    "get_fdb_service",
    "TracingService",
    "VerificationService",
]
