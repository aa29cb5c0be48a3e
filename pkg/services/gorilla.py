"""
Gorilla XOR codec, kept as the comparison baseline.

  first value     raw 64 bits
  xor == 0        '0'
  block reused    '1' '0' + meaningful bits of the previous window
  new block       '1' '1' + 5-bit leading zeros (clamped to 31)
                          + 6-bit meaningful length (0 encodes 64) + bits
"""

from dataclasses import dataclass
from typing import Optional

from services.bitio import BitReader, BitWriter
from services.errors import DecodeError


LEADING_BITS = 5
LENGTH_BITS = 6
MAX_LEADING = (1 << LEADING_BITS) - 1


@dataclass
class GorillaState:
    prev_bits: Optional[int] = None
    # 64/0 means "no window yet": nothing can fit inside it
    prev_leading: int = 64
    prev_meaningful: int = 0

    @property
    def prev_trailing(self) -> int:
        return 64 - self.prev_leading - self.prev_meaningful


def gorilla_compress_value(raw: int, state: GorillaState, writer: BitWriter) -> int:
    """Emit one value; return the number of bits written."""
    start = writer.bit_cursor
    if state.prev_bits is None:
        writer.write_bits(raw, 64)
        state.prev_bits = raw
        return 64

    x = raw ^ state.prev_bits
    if x == 0:
        writer.write_bit(0)
    else:
        leading = min(64 - x.bit_length(), MAX_LEADING)
        trailing = (x & -x).bit_length() - 1
        if leading >= state.prev_leading and trailing >= state.prev_trailing:
            writer.write_bit(1)
            writer.write_bit(0)
            writer.write_bits(x >> state.prev_trailing, state.prev_meaningful)
        else:
            meaningful = 64 - leading - trailing
            writer.write_bit(1)
            writer.write_bit(1)
            writer.write_bits(leading, LEADING_BITS)
            writer.write_bits(meaningful & 0x3F, LENGTH_BITS)
            writer.write_bits(x >> trailing, meaningful)
            state.prev_leading = leading
            state.prev_meaningful = meaningful

    state.prev_bits = raw
    return writer.bit_cursor - start


def gorilla_decompress_value(state: GorillaState, reader: BitReader) -> int:
    if state.prev_bits is None:
        state.prev_bits = reader.read_bits(64)
        return state.prev_bits

    if reader.read_bit() == 0:
        return state.prev_bits

    offset = reader.bit_cursor
    if reader.read_bit() == 0:
        if state.prev_meaningful == 0:
            raise DecodeError("window reuse before any window was defined", bit_offset=offset)
        x = reader.read_bits(state.prev_meaningful) << state.prev_trailing
    else:
        leading = reader.read_bits(LEADING_BITS)
        meaningful = reader.read_bits(LENGTH_BITS) or 64
        if leading + meaningful > 64:
            raise DecodeError(
                f"window of {leading} leading + {meaningful} meaningful bits exceeds 64",
                bit_offset=offset,
            )
        trailing = 64 - leading - meaningful
        x = reader.read_bits(meaningful) << trailing
        state.prev_leading = leading
        state.prev_meaningful = meaningful

    state.prev_bits ^= x
    return state.prev_bits
