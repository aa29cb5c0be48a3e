"""
Bit-granular writer and reader over byte buffers.

Bits are packed most-significant-bit first, so a hexdump of a payload reads
left to right in the same order the codec emits fields.
"""

from typing import Optional, Tuple

from services.errors import ContractError, DecodeError


class BitWriter:
    """Append-only MSB-first bit buffer."""

    __slots__ = ("_buf", "_acc", "_acc_bits", "bit_cursor")

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0        # pending bits not yet flushed to _buf
        self._acc_bits = 0
        self.bit_cursor = 0

    def write_bits(self, value: int, n: int) -> None:
        if n < 0 or n > 64:
            raise ContractError(f"bit count must be in 0..64, got {n}")
        if n == 0:
            return
        if value < 0 or value >> n:
            raise ContractError(f"value {value} does not fit in {n} bits")

        self._acc = (self._acc << n) | value
        self._acc_bits += n
        self.bit_cursor += n

        if self._acc_bits >= 8:
            whole = self._acc_bits >> 3
            rest = self._acc_bits & 7
            self._buf += (self._acc >> rest).to_bytes(whole, "big")
            self._acc &= (1 << rest) - 1
            self._acc_bits = rest

    def write_bit(self, bit: int) -> None:
        self.write_bits(1 if bit else 0, 1)

    def finalize(self) -> Tuple[bytes, int]:
        """
        Return (payload, bit_length).

        The payload is zero-padded to a byte boundary; bit_length is the exact
        number of bits written and excludes the pad.
        """
        out = bytearray(self._buf)
        if self._acc_bits:
            out.append((self._acc << (8 - self._acc_bits)) & 0xFF)
        return bytes(out), self.bit_cursor


class BitReader:
    """MSB-first reader bounded by a declared payload bit length."""

    __slots__ = ("_buf", "_limit", "bit_cursor")

    def __init__(self, buf: bytes, bit_length: Optional[int] = None):
        self._buf = bytes(buf)
        total = len(self._buf) * 8
        if bit_length is None:
            bit_length = total
        if bit_length < 0 or bit_length > total:
            raise DecodeError(
                f"declared bit length {bit_length} exceeds buffer of {total} bits"
            )
        self._limit = bit_length
        self.bit_cursor = 0

    @property
    def remaining(self) -> int:
        return self._limit - self.bit_cursor

    def read_bits(self, n: int) -> int:
        if n < 0 or n > 64:
            raise ContractError(f"bit count must be in 0..64, got {n}")
        if n == 0:
            return 0
        start = self.bit_cursor
        end = start + n
        if end > self._limit:
            raise DecodeError(
                f"bit underrun: need {n} bits at offset {start}, {self._limit - start} left",
                bit_offset=start,
            )

        first = start >> 3
        last = (end + 7) >> 3
        chunk = int.from_bytes(self._buf[first:last], "big")
        chunk >>= (last << 3) - end
        self.bit_cursor = end
        return chunk & ((1 << n) - 1)

    def read_bit(self) -> int:
        return self.read_bits(1)
