"""
Stream codec: per-value dispatch between the decimal pipeline and the
exception handler, first-value bootstrap, and the container format.

Container (little-endian header, 22 bytes):

  magic "DXOR" | version 0x01 | mode | count (u64) | payload_bits (u64)

followed by the MSB-first bit payload, zero-padded to a byte boundary.
Mode 0x00 is the full pipeline, 0x01 exception-only, 0x02 the Gorilla
baseline.
"""

import logging
import struct
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from models.stats_model import StreamStats, empty_histogram
from services.bitio import BitReader, BitWriter
from services.config import CodecConfig, StreamMode
from services.converter import (
    LCP_CAP,
    Q_MAX,
    Q_OFFSET,
    CaseCode,
    ConvertOutcome,
    FloatBits,
    canonical_reconstruct,
    float_to_bits,
    get_prefix_and_suffix,
    prefix_value,
)
from services.errors import ContractError, DecodeError, FormatError
from services.exception_handler import AdaptiveState, decode_exception, encode_exception
from services.gorilla import GorillaState, gorilla_compress_value, gorilla_decompress_value
from services.suffix_codec import SuffixPlan, decode_suffix, encode_suffix


logger = logging.getLogger(__name__)

MAGIC = b"DXOR"
VERSION = 0x01
HEADER = struct.Struct("<4sBBQQ")
HEADER_SIZE = HEADER.size  # 22
BOOTSTRAP_BITS = 64


# -----------------------------
# State
# -----------------------------
@dataclass
class CodecState:
    tol: float = 1e-6
    mode: StreamMode = StreamMode.FULL
    adaptive: AdaptiveState = field(default_factory=AdaptiveState)
    prev_bits: Optional[FloatBits] = None
    prev_value: float = 0.0
    prev_q: int = 0
    prev_o: int = 0
    # alpha of the previous value when it went through the decimal pipeline
    prev_alpha: Optional[float] = None

    @classmethod
    def from_config(cls, config: CodecConfig) -> "CodecState":
        return cls(
            tol=config.tolerance,
            mode=config.mode,
            adaptive=AdaptiveState(rho=config.rho),
        )

    def snapshot(self) -> tuple:
        """Comparable view of the state (NaN-safe: floats as bit patterns)."""
        return (
            None if self.prev_bits is None else self.prev_bits.raw,
            float_to_bits(self.prev_value),
            self.prev_q,
            self.prev_o,
            None if self.prev_alpha is None else float_to_bits(self.prev_alpha),
            self.adaptive.el,
            self.adaptive.shrink_count,
            self.adaptive.prev_exp,
        )

    def _advance(self, omega: FloatBits) -> None:
        self.prev_bits = omega
        self.prev_value = omega.to_float()
        self.adaptive.prev_exp = omega.exp


@dataclass(frozen=True)
class ValueRecord:
    """What the encoder did with one value."""

    path: str                 # "bootstrap", a case label, "exception-only" or "gorilla"
    bits: int
    overflowed: bool = False
    outcome: Optional[ConvertOutcome] = None


# -----------------------------
# Per-value codec
# -----------------------------
def compress_value(omega: FloatBits, state: CodecState, writer: BitWriter) -> ValueRecord:
    start = writer.bit_cursor

    if state.prev_bits is None:
        writer.write_bits(omega.raw, BOOTSTRAP_BITS)
        state.prev_q = 0
        state.prev_o = 0
        state._advance(omega)
        return ValueRecord("bootstrap", BOOTSTRAP_BITS)

    if state.mode is StreamMode.EXCEPTION_ONLY:
        overflowed = encode_exception(omega, state.adaptive, writer)
        state._advance(omega)
        return ValueRecord("exception-only", writer.bit_cursor - start, overflowed)

    outcome = get_prefix_and_suffix(omega, state, state.tol)
    if outcome.is_exception:
        writer.write_bits(CaseCode.EXCEPTION, 2)
        overflowed = encode_exception(omega, state.adaptive, writer)
        state.prev_alpha = None
        state._advance(omega)
        return ValueRecord(CaseCode.EXCEPTION.label, writer.bit_cursor - start, overflowed, outcome)

    case = outcome.case
    writer.write_bits(case.code, 2)
    for value, width in case.fields:
        writer.write_bits(value, width)
    encode_suffix(outcome.beta, SuffixPlan.for_prefix(outcome.coords.delta, outcome.alpha), writer)

    state.prev_q = outcome.coords.q
    state.prev_o = outcome.coords.o
    state.prev_alpha = outcome.alpha
    state._advance(omega)
    return ValueRecord(case.code.label, writer.bit_cursor - start, False, outcome)


def decompress_value(state: CodecState, reader: BitReader) -> FloatBits:
    if state.prev_bits is None:
        omega = FloatBits.from_raw(reader.read_bits(BOOTSTRAP_BITS))
        state.prev_q = 0
        state.prev_o = 0
        state._advance(omega)
        return omega

    if state.mode is StreamMode.EXCEPTION_ONLY:
        omega = decode_exception(state.adaptive, reader)
        state._advance(omega)
        return omega

    offset = reader.bit_cursor
    code = reader.read_bits(2)
    if code == CaseCode.EXCEPTION:
        omega = decode_exception(state.adaptive, reader)
        state.prev_alpha = None
        state._advance(omega)
        return omega

    if code == CaseCode.REUSE:
        q, o = state.prev_q, state.prev_o
        alpha = state.prev_alpha
        if alpha is None:
            alpha = prefix_value(state.prev_value, o, state.tol)
    else:
        if code == CaseCode.NEW_LCP:
            q = state.prev_q
        else:
            q = reader.read_bits(5) - Q_OFFSET
        o = q + reader.read_bits(4)
        if q > Q_MAX or o > LCP_CAP:
            raise DecodeError(f"coordinates q={q}, o={o} out of range", bit_offset=offset)
        alpha = prefix_value(state.prev_value, o, state.tol)

    plan = SuffixPlan.for_prefix(o - q, alpha)
    beta = decode_suffix(plan, -1 if alpha < 0 else 1, reader)
    try:
        omega = FloatBits.from_float(canonical_reconstruct(alpha, beta, q))
    except ContractError as e:
        raise DecodeError(str(e), bit_offset=offset)

    state.prev_q = q
    state.prev_o = o
    state.prev_alpha = alpha
    state._advance(omega)
    return omega


# -----------------------------
# Container
# -----------------------------
@dataclass(frozen=True)
class StreamHeader:
    mode: StreamMode
    count: int
    payload_bits: int
    version: int = VERSION

    def pack(self) -> bytes:
        return HEADER.pack(MAGIC, self.version, int(self.mode), self.count, self.payload_bits)


def read_header(data: bytes) -> StreamHeader:
    if len(data) < HEADER_SIZE:
        raise FormatError(f"container too short for header: {len(data)} < {HEADER_SIZE} bytes")
    magic, version, mode, count, payload_bits = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version 0x{version:02x}")
    try:
        stream_mode = StreamMode(mode)
    except ValueError:
        raise FormatError(f"unknown mode byte 0x{mode:02x}")
    return StreamHeader(stream_mode, count, payload_bits, version)


def floats_to_bits(values: Iterable[float]) -> List[int]:
    return [float_to_bits(float(v)) for v in values]


class StreamEncoder:
    """
    Incremental encoder for one stream. Feed 64-bit patterns with `push`,
    then `finish` to obtain the container.
    """

    def __init__(self, config: Optional[CodecConfig] = None):
        self.config = config or CodecConfig()
        self.writer = BitWriter()
        self.stats = StreamStats(scheme=self.config.mode.label, case_histogram=empty_histogram())
        if self.config.mode is StreamMode.GORILLA:
            self._gorilla: Optional[GorillaState] = GorillaState()
            self.state: Optional[CodecState] = None
        else:
            self._gorilla = None
            self.state = CodecState.from_config(self.config)

    def push(self, raw: int) -> ValueRecord:
        if self._gorilla is not None:
            bits = gorilla_compress_value(raw, self._gorilla, self.writer)
            record = ValueRecord("bootstrap" if self.stats.value_count == 0 else "gorilla", bits)
        else:
            record = compress_value(FloatBits.from_raw(raw), self.state, self.writer)

        self.stats.value_count += 1
        if record.path == "bootstrap":
            self.stats.bootstrap_bits = record.bits
        elif record.path in self.stats.case_histogram:
            self.stats.case_histogram[record.path] += 1
        if record.overflowed:
            self.stats.exception_overflows += 1
        return record

    def finish(self) -> bytes:
        payload, bit_length = self.writer.finalize()
        self.stats.total_payload_bits = bit_length
        header = StreamHeader(self.config.mode, self.stats.value_count, bit_length)
        return header.pack() + payload


def compress_stream_with_stats(
    values: Sequence[int], config: Optional[CodecConfig] = None
) -> Tuple[bytes, StreamStats]:
    encoder = StreamEncoder(config)
    for raw in values:
        encoder.push(raw)
    container = encoder.finish()
    if encoder.stats.value_count == 0:
        logger.warning("compressed an empty stream (%s)", encoder.config.mode.label)
    else:
        logger.info(
            "compressed %d values (%s): %d payload bits, acb=%.3f",
            encoder.stats.value_count,
            encoder.config.mode.label,
            encoder.stats.total_payload_bits,
            encoder.stats.acb,
        )
    return container, encoder.stats


def compress_stream(values: Sequence[int], config: Optional[CodecConfig] = None) -> bytes:
    return compress_stream_with_stats(values, config)[0]


def decompress_stream(data: bytes, config: Optional[CodecConfig] = None) -> List[int]:
    """
    Decode a container into 64-bit patterns. `config` supplies tolerance and
    rho (they are not stored in the header); the mode comes from the header.
    """
    header = read_header(data)
    payload = data[HEADER_SIZE:]
    if not (header.payload_bits <= 8 * len(payload) < header.payload_bits + 8):
        raise DecodeError(
            f"payload_bits={header.payload_bits} does not match {len(payload)} payload bytes",
            bit_offset=0,
        )

    reader = BitReader(payload, header.payload_bits)
    out: List[int] = []

    if header.mode is StreamMode.GORILLA:
        gstate = GorillaState()
        for _ in range(header.count):
            out.append(gorilla_decompress_value(gstate, reader))
    else:
        base = config or CodecConfig()
        state = CodecState.from_config(base.with_mode(header.mode))
        for _ in range(header.count):
            out.append(decompress_value(state, reader).raw)

    if reader.remaining:
        raise DecodeError(
            f"{reader.remaining} payload bits left after {header.count} values",
            bit_offset=reader.bit_cursor,
        )
    return out


# -----------------------------
# Trace (analysis)
# -----------------------------
@dataclass(frozen=True)
class TraceEntry:
    index: int
    raw: int
    value: float
    path: str
    bits: int
    q: Optional[int] = None
    o: Optional[int] = None
    alpha: Optional[float] = None
    beta: Optional[int] = None
    reason: str = ""


def trace_stream(values: Sequence[int], config: Optional[CodecConfig] = None) -> List[TraceEntry]:
    """Run the real encoder and report, per value, the path taken and its bit cost."""
    encoder = StreamEncoder(config)
    entries: List[TraceEntry] = []
    for i, raw in enumerate(values):
        record = encoder.push(raw)
        outcome = record.outcome
        normal = outcome is not None and not outcome.is_exception
        entries.append(
            TraceEntry(
                index=i,
                raw=raw,
                value=FloatBits.from_raw(raw).to_float(),
                path=record.path,
                bits=record.bits,
                q=outcome.coords.q if normal else None,
                o=outcome.coords.o if normal else None,
                alpha=outcome.alpha if normal else None,
                beta=outcome.beta if normal else None,
                reason=outcome.reason if outcome is not None else "",
            )
        )
    return entries
