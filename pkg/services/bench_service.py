"""
Comparative benchmark over the three schemes plus the synthetic streams
used by tests and demos.

Throughput is input megabytes (8 bytes per value, 10^6 bytes per MB) over
wall time. Schemes run one after another on the same input.
"""

import datetime
import logging
import random
import time
from typing import Iterable, List, Optional, Sequence

from models.bench_model import SCHEMES, BenchReport, SchemeResult
from services.config import CodecConfig, StreamMode
from services.converter import BIAS, FRACTION_BITS, FRACTION_MASK, float_to_bits
from services.errors import ConfigError, RoundTripError
from services.stream_codec import compress_stream_with_stats, decompress_stream


logger = logging.getLogger(__name__)

SCHEME_MODES = {
    "dexor": StreamMode.FULL,
    "dexor-exception-only": StreamMode.EXCEPTION_ONLY,
    "gorilla": StreamMode.GORILLA,
}


def throughput_mb_s(value_count: int, seconds: float) -> Optional[float]:
    if value_count == 0 or seconds <= 0:
        return None
    return (8 * value_count) / 1e6 / seconds


def verify_round_trip(scheme: str, expected: Sequence[int], actual: Sequence[int]) -> None:
    """Raise RoundTripError on the first mismatching index."""
    for i, want in enumerate(expected):
        got = actual[i] if i < len(actual) else None
        if got != want:
            raise RoundTripError(scheme, i, want, got)
    if len(actual) > len(expected):
        raise RoundTripError(scheme, len(expected), 0, actual[len(expected)])


def run_scheme(values: Sequence[int], scheme: str, base: Optional[CodecConfig] = None) -> SchemeResult:
    if scheme not in SCHEME_MODES:
        raise ConfigError(f"unknown scheme '{scheme}' (expected one of {', '.join(SCHEMES)})")
    config = (base or CodecConfig()).with_mode(SCHEME_MODES[scheme])

    t0 = time.perf_counter()
    container, stats = compress_stream_with_stats(values, config)
    t1 = time.perf_counter()
    decoded = decompress_stream(container, config)
    t2 = time.perf_counter()

    try:
        verify_round_trip(scheme, values, decoded)
    except RoundTripError as e:
        logger.error("round trip failed: %s", e)
        raise

    return SchemeResult(
        scheme=scheme,
        value_count=stats.value_count,
        payload_bits=stats.total_payload_bits,
        container_bytes=len(container),
        acb=stats.acb,
        compression_ratio=stats.compression_ratio,
        compress_mb_s=throughput_mb_s(len(values), t1 - t0),
        decompress_mb_s=throughput_mb_s(len(values), t2 - t1),
        round_trip_ok=True,
        case_histogram=dict(stats.case_histogram) if config.mode is StreamMode.FULL else {},
        exception_overflows=stats.exception_overflows,
    )


def run_bench(
    values: Sequence[int],
    schemes: Iterable[str] = SCHEMES,
    config: Optional[CodecConfig] = None,
    source: str = "values",
) -> BenchReport:
    cfg = config or CodecConfig()
    schemes = list(schemes)
    if not schemes:
        raise ConfigError("at least one scheme is required")

    results = [run_scheme(values, s, cfg) for s in schemes]
    logger.info("bench over %d values from %s: %s", len(values), source, ", ".join(schemes))
    return BenchReport(
        source=source,
        value_count=len(values),
        input_bytes=8 * len(values),
        tolerance=cfg.tolerance,
        rho=cfg.rho,
        timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        results=results,
    )


# -----------------------------
# Synthetic streams
# -----------------------------
def random_walk(
    n: int,
    decimals: int = 4,
    lo: float = 0.0,
    hi: float = 100.0,
    sigma: float = 0.05,
    seed: int = 0,
) -> List[int]:
    """Gaussian random walk reflected into [lo, hi], rounded to `decimals` places."""
    rng = random.Random(seed)
    v = (lo + hi) / 2
    out: List[int] = []
    for _ in range(n):
        v += rng.gauss(0.0, sigma)
        if v < lo:
            v = 2 * lo - v
        elif v > hi:
            v = 2 * hi - v
        out.append(float_to_bits(round(v, decimals)))
    return out


def high_precision_stream(n: int, exponent: int = 980, seed: int = 0) -> List[int]:
    """Positive doubles sharing one biased exponent with random fractions."""
    if not (1 <= exponent <= 2 * BIAS):
        raise ConfigError(f"exponent must be a normal biased exponent, got {exponent}")
    rng = random.Random(seed)
    return [(exponent << FRACTION_BITS) | (rng.getrandbits(FRACTION_BITS) & FRACTION_MASK) for _ in range(n)]


def piecewise_exponent_stream(n: int, segment: int = 200, seed: int = 0) -> List[int]:
    """
    Random-fraction doubles whose exponent holds for `segment` values and
    then jumps by a few binades. Exception-heavy by construction.
    """
    if segment <= 0:
        raise ConfigError(f"segment must be positive, got {segment}")
    rng = random.Random(seed)
    exp = BIAS
    out: List[int] = []
    for i in range(n):
        if i and i % segment == 0:
            exp = min(max(exp + rng.choice((-40, -9, -3, 3, 9, 40)), 900), 1100)
        out.append((exp << FRACTION_BITS) | rng.getrandbits(FRACTION_BITS))
    return out
