from fastapi import APIRouter, HTTPException

from api.routers.codec import request_config, request_words
from models.bench_model import BenchReport
from models.codec_api_model import BenchRequest
from services.bench_service import run_bench
from services.errors import RoundTripError

router = APIRouter()


@router.post("/bench", response_model=BenchReport)
def bench(req: BenchRequest):
    """Compress, decompress and verify the posted values with each scheme."""
    try:
        return run_bench(request_words(req), req.schemes, request_config(req), source="request")
    except RoundTripError as e:
        raise HTTPException(status_code=500, detail=str(e))
