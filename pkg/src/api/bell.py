"""Bell polynomial endpoints."""

import logging
from typing import Optional

from fastapi import APIRouter, Query

from src.exceptions import ContractError
from src.models.multiindex import MultiIndex
from src.schemas.polynomial import PolynomialResponse, TableResponse
from src.services.bell import bell_complete_mv, bell_partial_mv, render_bell_table

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("", response_model=PolynomialResponse)
def get_bell_polynomial(
    n: str = Query(..., description="Multi-index, e.g. 2,1"),
    k: Optional[str] = Query(None, description="Part count; omit for the complete polynomial"),
    d2: Optional[int] = Query(None, ge=1),
) -> PolynomialResponse:
    """Partial polynomial B_{n,k}, or the complete B_n when k is absent."""
    n_index = MultiIndex.parse(n)
    if k is None:
        return PolynomialResponse.from_poly(bell_complete_mv(n_index, d2 or 1), n_index)
    k_index = MultiIndex.parse(k)
    if d2 is not None and d2 != k_index.dim:
        raise ContractError(f"d2={d2} disagrees with k={k_index}", "d2 = dim(k)")
    return PolynomialResponse.from_poly(bell_partial_mv(n_index, k_index), n_index, k_index)


@router.get("/table", response_model=TableResponse)
def get_bell_table(max_n: int = Query(4, ge=1, le=8)) -> TableResponse:
    """The one-dimensional table, one column per part count."""
    return TableResponse(max_n=max_n, text=render_bell_table(max_n))
