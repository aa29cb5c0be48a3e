from pydantic import BaseModel, Field
from typing import Dict, List, Optional


SCHEMES = ("dexor", "dexor-exception-only", "gorilla")


class SchemeResult(BaseModel):
    """One scheme's row in a comparative benchmark."""
    scheme: str
    value_count: int
    payload_bits: int
    container_bytes: int
    acb: Optional[float] = None
    compression_ratio: Optional[float] = None
    compress_mb_s: Optional[float] = None
    decompress_mb_s: Optional[float] = None
    round_trip_ok: bool = True
    case_histogram: Dict[str, int] = Field(default_factory=dict)
    exception_overflows: int = 0

    def as_flat(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "scheme": self.scheme,
            "value_count": self.value_count,
            "payload_bits": self.payload_bits,
            "container_bytes": self.container_bytes,
            "acb": None if self.acb is None else round(self.acb, 4),
            "compression_ratio": None if self.compression_ratio is None else round(self.compression_ratio, 4),
            "compress_mb_s": None if self.compress_mb_s is None else round(self.compress_mb_s, 3),
            "decompress_mb_s": None if self.decompress_mb_s is None else round(self.decompress_mb_s, 3),
            "round_trip": "pass" if self.round_trip_ok else "fail",
            "exception_overflows": self.exception_overflows,
        }
        for label, count in self.case_histogram.items():
            out[f"case_{label}"] = count
        return out


class BenchReport(BaseModel):
    source: str = "values"
    value_count: int = 0
    input_bytes: int = 0
    tolerance: float = 1e-6
    rho: int = 8
    timestamp: str
    results: List[SchemeResult] = []

    def result(self, scheme: str) -> Optional[SchemeResult]:
        for r in self.results:
            if r.scheme == scheme:
                return r
        return None
