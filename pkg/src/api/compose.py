"""Composition derivative endpoint."""

import logging
from typing import Union

from fastapi import APIRouter

from src.models.multiindex import MultiIndex
from src.schemas.fdb import ComposeRequest, DerivativeEntry, DerivTensorResponse
from src.services.fdb import get_fdb_service

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("", response_model=Union[DerivativeEntry, DerivTensorResponse])
def compose(request: ComposeRequest) -> Union[DerivativeEntry, DerivTensorResponse]:
    """Derivatives of f(g(x)) at g's center, for one multi-index or a whole order."""
    f = request.f.to_series()
    g = request.g.to_series()
    engine = get_fdb_service()
    if request.n is not None:
        n = MultiIndex.from_json(request.n)
        return DerivativeEntry.of(n, engine.derivative(f, g, n))
    tensor = engine.all(f, g, request.all)
    logger.info(f"Computed {len(tensor)} composition derivatives up to order {request.all}")
    return DerivTensorResponse.from_tensor(tensor)
