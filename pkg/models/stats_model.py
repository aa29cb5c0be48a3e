"""
Stream accounting models.

ACB (average compression bits) = payload bits / value count; the 22-byte
container header is never counted.
"""

from pydantic import BaseModel, Field
from typing import Dict, Optional


CASE_LABELS = ("10", "01", "00", "11")


def empty_histogram() -> Dict[str, int]:
    return {label: 0 for label in CASE_LABELS}


class StreamStats(BaseModel):
    scheme: str = "full"
    value_count: int = 0
    total_payload_bits: int = 0
    bootstrap_bits: int = 0

    # Full mode only: bootstrap value carries no case code
    case_histogram: Dict[str, int] = Field(default_factory=empty_histogram)
    exception_overflows: int = 0

    @property
    def acb(self) -> Optional[float]:
        if self.value_count == 0:
            return None
        return self.total_payload_bits / self.value_count

    @property
    def compression_ratio(self) -> Optional[float]:
        acb = self.acb
        return None if acb is None else acb / 64

    def as_flat(self) -> Dict[str, object]:
        """Flat key/value view used by reports."""
        out: Dict[str, object] = {
            "scheme": self.scheme,
            "value_count": self.value_count,
            "total_payload_bits": self.total_payload_bits,
            "acb": None if self.acb is None else round(self.acb, 4),
            "compression_ratio": None if self.compression_ratio is None else round(self.compression_ratio, 4),
            "exception_overflows": self.exception_overflows,
        }
        for label in CASE_LABELS:
            out[f"case_{label}"] = self.case_histogram.get(label, 0)
        return out
