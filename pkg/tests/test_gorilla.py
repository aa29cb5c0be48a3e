import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.bitio import BitReader, BitWriter
from services.config import CodecConfig, StreamMode
from services.converter import float_to_bits
from services.errors import DecodeError
from services.gorilla import GorillaState, gorilla_compress_value, gorilla_decompress_value
from services.stream_codec import compress_stream_with_stats, decompress_stream

GORILLA = CodecConfig(mode=StreamMode.GORILLA)


def encode_all(words):
    state = GorillaState()
    writer = BitWriter()
    costs = [gorilla_compress_value(w, state, writer) for w in words]
    return writer, costs


def decode_all(writer, count):
    state = GorillaState()
    reader = BitReader(*writer.finalize())
    out = [gorilla_decompress_value(state, reader) for _ in range(count)]
    assert reader.remaining == 0
    return out


class TestGorillaCompress:
    def test_repeats_cost_one_bit(self):
        words = [float_to_bits(42.5)] * 10
        writer, costs = encode_all(words)
        assert costs == [64] + [1] * 9
        assert decode_all(writer, 10) == words

    def test_repeats_acb(self):
        n = 200
        _, stats = compress_stream_with_stats([float_to_bits(3.14)] * n, GORILLA)
        assert stats.total_payload_bits == 64 + (n - 1)
        assert stats.acb == pytest.approx(1 + 63 / n)

    def test_worked_pair(self):
        """The XOR block of the pair spans 39 bits, framed by 2 + 5 + 6 control bits."""
        words = [float_to_bits(88.1537), float_to_bits(88.1479)]
        writer, costs = encode_all(words)
        assert costs == [64, 2 + 5 + 6 + 39]
        assert decode_all(writer, 2) == words

    def test_window_reuse(self):
        base = float_to_bits(1.0)
        words = [base, base ^ 0b1100, base ^ 0b0100]
        writer, costs = encode_all(words)
        # leading zeros clamp at 31, so the reused window is 31 bits wide
        assert costs[2] == 2 + 31
        assert decode_all(writer, 3) == words

    def test_control_bits(self):
        base = float_to_bits(1.0)
        words = [base, base ^ 0b1100, base ^ 0b0100, base ^ 0b0100]
        writer, _ = encode_all(words)
        payload, n = writer.finalize()
        bits = "".join(format(b, "08b") for b in payload)[64:n]
        new_block = "11" + "11111" + "011111" + "0" * 29 + "11"
        reuse = "10" + "0" * 29 + "10"
        assert bits == new_block + reuse + "0"
        assert decode_all(writer, 4) == words

    def test_full_width_block(self):
        words = [0, (1 << 64) - 1, 1]
        writer, _ = encode_all(words)
        assert decode_all(writer, 3) == words

    def test_stream_round_trip(self):
        rng = random.Random(4)
        words = [rng.getrandbits(64) for _ in range(2000)]
        container, _ = compress_stream_with_stats(words, GORILLA)
        assert decompress_stream(container) == words


class TestGorillaDecompress:
    def test_tampered_length(self):
        writer = BitWriter()
        writer.write_bits(0, 64)
        writer.write_bits(0b11, 2)
        writer.write_bits(31, 5)
        writer.write_bits(40, 6)
        writer.write_bits(0, 40)
        state = GorillaState()
        reader = BitReader(*writer.finalize())
        gorilla_decompress_value(state, reader)
        with pytest.raises(DecodeError):
            gorilla_decompress_value(state, reader)

    def test_reuse_without_window(self):
        writer = BitWriter()
        writer.write_bits(0, 64)
        writer.write_bits(0b10, 2)
        state = GorillaState()
        reader = BitReader(*writer.finalize())
        gorilla_decompress_value(state, reader)
        with pytest.raises(DecodeError):
            gorilla_decompress_value(state, reader)

    def test_underrun(self):
        with pytest.raises(DecodeError):
            gorilla_decompress_value(GorillaState(), BitReader(b"\x00" * 4))


@given(st.lists(st.integers(0, (1 << 64) - 1), max_size=50))
def test_round_trip(words):
    writer, _ = encode_all(words)
    assert decode_all(writer, len(words)) == words
