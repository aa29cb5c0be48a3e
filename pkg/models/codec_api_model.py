from pydantic import BaseModel, Field, field_validator, model_validator
from typing import List, Optional

from models.bench_model import SCHEMES
from models.stats_model import StreamStats


MAX_ANALYZE_VALUES = 1000


def _check_hex_words(v: Optional[List[str]]) -> Optional[List[str]]:
    if v is None:
        return v
    for word in v:
        try:
            n = int(word, 16)
        except ValueError:
            raise ValueError(f"not a hex word: {word!r}")
        if not (0 <= n < 1 << 64):
            raise ValueError(f"not a 64-bit word: {word!r}")
    return v


class ValuesInput(BaseModel):
    """Values as floats, or as 64-bit patterns in hex (for NaN payloads, -0.0, ...)."""
    values: Optional[List[float]] = None
    bits: Optional[List[str]] = None
    tolerance: float = 1e-6
    rho: int = 8

    @field_validator("bits")
    @classmethod
    def validate_bits(cls, v):
        return _check_hex_words(v)

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.values is None) == (self.bits is None):
            raise ValueError("provide exactly one of 'values' or 'bits'")
        return self


class CompressRequest(ValuesInput):
    scheme: str = "dexor"

    @field_validator("scheme")
    @classmethod
    def validate_scheme(cls, v):
        if v not in SCHEMES:
            raise ValueError(f"scheme must be one of {', '.join(SCHEMES)}")
        return v


class CompressResponse(BaseModel):
    container: str  # base64
    container_bytes: int
    stats: StreamStats
    acb: Optional[float] = None


class DecompressRequest(BaseModel):
    container: str  # base64
    tolerance: float = 1e-6
    rho: int = 8


class DecompressResponse(BaseModel):
    mode: str
    count: int
    values: List[Optional[float]]  # None for NaN/Inf, see bits
    bits: List[str]


class AnalyzeRequest(ValuesInput):
    pass


class TraceRow(BaseModel):
    index: int
    value: Optional[float] = None
    bits: str
    path: str
    cost_bits: int
    q: Optional[int] = None
    o: Optional[int] = None
    delta: Optional[int] = None
    alpha: Optional[float] = None
    beta: Optional[int] = None
    reason: str = ""


class AnalyzeResponse(BaseModel):
    rows: List[TraceRow] = Field(default_factory=list)
    total_bits: int = 0


class BenchRequest(ValuesInput):
    schemes: List[str] = list(SCHEMES)

    @field_validator("schemes")
    @classmethod
    def validate_schemes(cls, v):
        unknown = [s for s in v if s not in SCHEMES]
        if unknown:
            raise ValueError(f"unknown schemes: {', '.join(unknown)}")
        if not v:
            raise ValueError("at least one scheme is required")
        return v
