"""
Analysis utilities: center bit length (CBL), average compression bits,
the smoothness metric S and the fixed-vs-variable suffix allocation check.
"""

import logging
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from models.stats_model import StreamStats
from services.config import CodecConfig, StreamMode
from services.converter import WORD_MASK, FloatBits, get_tail, scale
from services.errors import AnalysisError
from services.stream_codec import trace_stream
from services.suffix_codec import FIXED_LEN, variable_suffix_cost


logger = logging.getLogger(__name__)


def cbl(word: int) -> int:
    """Bits between the highest and the lowest set bit, both included."""
    word &= WORD_MASK
    if word == 0:
        return 0
    lowest = (word & -word).bit_length()
    return word.bit_length() - lowest + 1


def acb(stats: StreamStats) -> float:
    if stats.value_count == 0:
        raise AnalysisError("ACB is undefined for an empty stream")
    return stats.total_payload_bits / stats.value_count


def _tail_for_metric(v: float, tol: float) -> Optional[int]:
    if not math.isfinite(v):
        raise AnalysisError(f"no tail coordinate for non-finite value {v!r}")
    if v == 0.0:
        return None
    q = get_tail(v, 0, tol)
    if q is None:
        raise AnalysisError(f"no tail coordinate in range for {v!r}")
    return q


def smoothness_S(vx: float, vy: float, tol: float = 1e-6) -> int:
    """
    CBL of |vx - vy| scaled to the finer of the two tail coordinates.
    A zero argument has no tail and defers to the other value.
    """
    tails = [q for q in (_tail_for_metric(vx, tol), _tail_for_metric(vy, tol)) if q is not None]
    if not tails:
        return 0
    q_hat = min(tails)
    diff = round(abs(scale(vx, -q_hat) - scale(vy, -q_hat)))
    if diff > WORD_MASK:
        raise AnalysisError(f"scaled difference of {vx!r} and {vy!r} exceeds 64 bits")
    return cbl(diff)


def smoothness_loss(v: float, v_prev: float, alpha: float, tol: float = 1e-6) -> int:
    """S after removing the shared prefix minus S before; zero on the decimal pipeline."""
    return smoothness_S(v - alpha, v_prev - alpha, tol) - smoothness_S(v, v_prev, tol)


# -----------------------------
# Converter comparison
# -----------------------------
@dataclass(frozen=True)
class CblReport:
    value_count: int
    raw_cbl: float
    xor_cbl: float
    decimal_xor_cbl: float
    normal_share: float

    def as_flat(self) -> dict:
        return {
            "value_count": self.value_count,
            "raw_cbl": round(self.raw_cbl, 4),
            "xor_cbl": round(self.xor_cbl, 4),
            "decimal_xor_cbl": round(self.decimal_xor_cbl, 4),
            "normal_share": round(self.normal_share, 4),
        }


def converter_cbl_report(values: Sequence[int], config: Optional[CodecConfig] = None) -> CblReport:
    """
    Average CBL each converter leaves for the coder: the raw word, the XOR
    with the previous word, and the decimal-XOR suffix. Values the decimal
    pipeline rejects are counted with their raw CBL.
    """
    if not values:
        raise AnalysisError("CBL report needs at least one value")

    cfg = (config or CodecConfig()).with_mode(StreamMode.FULL)
    entries = trace_stream(values, cfg)

    raw_total = 0
    xor_total = 0
    dxor_total = 0
    normal = 0
    prev = 0
    for entry in entries:
        raw_total += cbl(entry.raw)
        xor_total += cbl(entry.raw ^ prev)
        if entry.beta is not None:
            dxor_total += cbl(abs(entry.beta))
            normal += 1
        else:
            dxor_total += cbl(entry.raw)
        prev = entry.raw

    n = len(entries)
    return CblReport(
        value_count=n,
        raw_cbl=raw_total / n,
        xor_cbl=xor_total / n,
        decimal_xor_cbl=dxor_total / n,
        normal_share=normal / n,
    )


# -----------------------------
# Fixed vs variable suffix allocation
# -----------------------------
@dataclass(frozen=True)
class AllocationGap:
    samples: int
    fixed_mean: float
    variable_mean: float

    @property
    def gap(self) -> float:
        return self.fixed_mean - self.variable_mean


def fixed_vs_variable_gap(samples: int, rng: Optional[random.Random] = None) -> AllocationGap:
    """
    Monte-Carlo over delta uniform in 1..15 and beta uniform in
    [10^(delta-1), 10^delta): mean cost of 4 delta bits + fixed suffix
    against a 6-bit length field + unpadded suffix.
    """
    if samples <= 0:
        raise AnalysisError("sample count must be positive")
    rng = rng or random.Random(0)

    fixed_total = 0
    variable_total = 0
    for _ in range(samples):
        delta = rng.randint(1, len(FIXED_LEN) - 1)
        beta = rng.randrange(10 ** (delta - 1), 10 ** delta)
        fixed_total += 4 + FIXED_LEN[delta]
        variable_total += variable_suffix_cost(beta, signed=False)

    result = AllocationGap(samples, fixed_total / samples, variable_total / samples)
    logger.debug("allocation gap over %d samples: %.4f", samples, result.gap)
    return result


def float_cbl(value: float) -> int:
    return cbl(FloatBits.from_float(value).raw)
