import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.bitio import BitReader, BitWriter
from services.errors import ContractError, DecodeError


def bits_of(payload: bytes, bit_length: int) -> str:
    return "".join(format(b, "08b") for b in payload)[:bit_length]


class TestBitWriter:
    """Tests for MSB-first bit packing."""

    def setup_method(self):
        self.writer = BitWriter()

    def test_case_code_then_delta(self):
        """A 2-bit code followed by a 4-bit field reads left to right."""
        self.writer.write_bits(0b01, 2)
        self.writer.write_bits(0b0011, 4)
        payload, n = self.writer.finalize()
        assert n == 6
        assert bits_of(payload, n) == "010011"

    def test_ten_bit_field(self):
        self.writer.write_bits(479, 10)
        payload, n = self.writer.finalize()
        assert bits_of(payload, n) == "0111011111"

    def test_zero_width_write_is_noop(self):
        self.writer.write_bits(12345, 0)
        assert self.writer.bit_cursor == 0
        assert self.writer.finalize() == (b"", 0)

    def test_padding(self):
        """6 bits pad to one byte with zeros; 16 bits need no pad."""
        self.writer.write_bits(0b111111, 6)
        assert self.writer.finalize() == (bytes([0b11111100]), 6)

        other = BitWriter()
        other.write_bits(0xABCD, 16)
        assert other.finalize() == (b"\xab\xcd", 16)

    def test_value_too_wide_rejected(self):
        with pytest.raises(ContractError):
            self.writer.write_bits(4, 2)
        with pytest.raises(ContractError):
            self.writer.write_bits(-1, 8)
        with pytest.raises(ContractError):
            self.writer.write_bits(0, 65)
        assert self.writer.bit_cursor == 0

    def test_full_word(self):
        self.writer.write_bits(0xFFFF_FFFF_FFFF_FFFF, 64)
        self.writer.write_bit(1)
        payload, n = self.writer.finalize()
        assert n == 65
        assert payload == b"\xff" * 8 + b"\x80"


class TestBitReader:
    """Tests for bounded reads."""

    def test_reads_back_fields(self):
        writer = BitWriter()
        writer.write_bits(0b10, 2)
        writer.write_bits(479, 10)
        reader = BitReader(*writer.finalize())
        assert reader.read_bits(2) == 0b10
        assert reader.read_bits(10) == 479
        assert reader.remaining == 0

    def test_random_words(self):
        rng = random.Random(7)
        words = [rng.getrandbits(64) for _ in range(100)]
        writer = BitWriter()
        writer.write_bit(1)
        for w in words:
            writer.write_bits(w, 64)
        reader = BitReader(*writer.finalize())
        assert reader.read_bit() == 1
        assert [reader.read_bits(64) for _ in words] == words

    def test_underrun_reports_offset(self):
        """Pad bits are not readable: the limit is the declared bit length."""
        reader = BitReader(b"\xff", 5)
        reader.read_bits(3)
        with pytest.raises(DecodeError) as exc:
            reader.read_bits(3)
        assert exc.value.bit_offset == 3
        assert exc.value.byte_offset == 0

    def test_declared_length_beyond_buffer(self):
        with pytest.raises(DecodeError):
            BitReader(b"\x00", 9)


@given(st.lists(st.integers(0, 64).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1)))))
def test_write_plan_replays(plan):
    writer = BitWriter()
    for n, value in plan:
        writer.write_bits(value, n)
    payload, bit_length = writer.finalize()

    assert bit_length == sum(n for n, _ in plan)
    assert len(payload) == (bit_length + 7) // 8

    reader = BitReader(payload, bit_length)
    assert [reader.read_bits(n) for n, _ in plan] == [v for _, v in plan]
