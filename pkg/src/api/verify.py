"""Verification suite endpoint."""

import logging

from fastapi import APIRouter

from src.schemas.verify import VerifyReport, VerifyRequest
from src.services.verification import VerificationService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("", response_model=VerifyReport)
async def run_verification(request: VerifyRequest) -> VerifyReport:
    """Run a suite synchronously and return its report."""
    service = VerificationService()
    report = await service.run_suite(request.suite, request.seed, request.trials)
    if not report.passed:
        logger.warning(f"Suite {request.suite} reported {report.failures} failures")
    return report
