"""
Codec router - compress, decompress and trace value streams over HTTP.
"""

import base64
import binascii
import logging
import math
from typing import List, Optional

from fastapi import APIRouter, HTTPException

from models.codec_api_model import (
    MAX_ANALYZE_VALUES,
    AnalyzeRequest,
    AnalyzeResponse,
    CompressRequest,
    CompressResponse,
    DecompressRequest,
    DecompressResponse,
    TraceRow,
    ValuesInput,
)
from services.bench_service import SCHEME_MODES
from services.config import CodecConfig, StreamMode
from services.converter import bits_to_float
from services.errors import ConfigError, ContractError, DecodeError, FormatError
from services.stream_codec import (
    compress_stream_with_stats,
    decompress_stream,
    floats_to_bits,
    read_header,
    trace_stream,
)


router = APIRouter()
logger = logging.getLogger(__name__)


# -----------------------------
# Helpers
# -----------------------------
def request_config(req, mode: StreamMode = StreamMode.FULL) -> CodecConfig:
    try:
        return CodecConfig(tolerance=req.tolerance, rho=req.rho, mode=mode)
    except ConfigError as e:
        raise HTTPException(status_code=400, detail=str(e))


def request_words(req: ValuesInput) -> List[int]:
    if req.bits is not None:
        return [int(w, 16) for w in req.bits]
    return floats_to_bits(req.values)


def json_float(raw: int) -> Optional[float]:
    v = bits_to_float(raw)
    return v if math.isfinite(v) else None


def hex_word(raw: int) -> str:
    return f"{raw:016x}"


# -----------------------------
# Endpoints
# -----------------------------
@router.post("/compress", response_model=CompressResponse)
def compress(req: CompressRequest):
    config = request_config(req, SCHEME_MODES[req.scheme])
    try:
        container, stats = compress_stream_with_stats(request_words(req), config)
    except ContractError as e:
        raise HTTPException(status_code=400, detail=str(e))

    return CompressResponse(
        container=base64.b64encode(container).decode("ascii"),
        container_bytes=len(container),
        stats=stats,
        acb=stats.acb,
    )


@router.post("/decompress", response_model=DecompressResponse)
def decompress(req: DecompressRequest):
    config = request_config(req)
    try:
        data = base64.b64decode(req.container, validate=True)
    except (binascii.Error, ValueError) as e:
        raise HTTPException(status_code=400, detail=f"container is not valid base64: {e}")

    try:
        header = read_header(data)
        words = decompress_stream(data, config)
    except FormatError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except DecodeError as e:
        logger.warning("rejected container: %s", e)
        raise HTTPException(
            status_code=422,
            detail={"error": str(e), "byte_offset": e.byte_offset},
        )

    return DecompressResponse(
        mode=header.mode.label,
        count=header.count,
        values=[json_float(w) for w in words],
        bits=[hex_word(w) for w in words],
    )


@router.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: AnalyzeRequest):
    """
    Per-value trace of the full pipeline: coordinates, prefix, suffix,
    case code and bit cost. Limited to short lists.
    """
    words = request_words(req)
    if len(words) > MAX_ANALYZE_VALUES:
        raise HTTPException(
            status_code=400,
            detail=f"analyze accepts at most {MAX_ANALYZE_VALUES} values, got {len(words)}",
        )

    entries = trace_stream(words, request_config(req))
    rows = [
        TraceRow(
            index=e.index,
            value=json_float(e.raw),
            bits=hex_word(e.raw),
            path=e.path,
            cost_bits=e.bits,
            q=e.q,
            o=e.o,
            delta=None if e.q is None else e.o - e.q,
            alpha=e.alpha,
            beta=e.beta,
            reason=e.reason,
        )
        for e in entries
    ]
    return AnalyzeResponse(rows=rows, total_bits=sum(e.bits for e in entries))
