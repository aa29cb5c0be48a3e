import random

import pytest

from models.stats_model import StreamStats
from services.bench_service import random_walk
from services.config import CodecConfig, env_true
from services.converter import FloatBits, get_prefix_and_suffix
from services.errors import AnalysisError
from services.metrics import (
    acb,
    cbl,
    converter_cbl_report,
    fixed_vs_variable_gap,
    float_cbl,
    smoothness_loss,
    smoothness_S,
)
from services.stream_codec import CodecState

slow = pytest.mark.skipif(not env_true("DEXOR_SLOW_TESTS"), reason="set DEXOR_SLOW_TESTS=1")


class TestCbl:
    def test_raw_word(self):
        assert float_cbl(88.1479) == 63

    def test_xor_word(self):
        x = FloatBits.from_float(88.1479).raw ^ FloatBits.from_float(88.1537).raw
        assert cbl(x) == 39

    def test_edges(self):
        assert cbl(0) == 0
        assert cbl(1 << 63) == 1
        assert cbl((1 << 64) - 1) == 64
        assert cbl(0b111010) == 5

    def test_self_xor(self):
        w = FloatBits.from_float(-3.5).raw
        assert cbl(w ^ w) == 0


class TestSmoothness:
    def test_worked_pair(self):
        # |881479 - 881537| = 58 = 0b111010
        assert smoothness_S(88.1479, 88.1537) == 5

    def test_identical(self):
        assert smoothness_S(12.75, 12.75) == 0

    def test_zero_defers_to_other_value(self):
        assert smoothness_S(0.0, 1.5) == cbl(15)
        assert smoothness_S(0.0, 0.0) == 0

    def test_undefined(self):
        with pytest.raises(AnalysisError):
            smoothness_S(1.2345e-25, 1.0)
        with pytest.raises(AnalysisError):
            smoothness_S(float("inf"), 1.0)

    def test_zero_loss_on_decimal_pipeline(self):
        """Removing the shared prefix never changes S."""
        rng = random.Random(21)
        tol = 1e-6
        checked = 0
        while checked < 10_000:
            d = rng.randint(1, 7)
            prev = round(rng.uniform(1, 10), d)
            v = round(prev + rng.gauss(0, 10 ** (1 - d)), d)
            state = CodecState(tol=tol)
            state.prev_value = prev
            out = get_prefix_and_suffix(FloatBits.from_float(v), state, tol)
            if out.is_exception:
                continue
            assert smoothness_loss(v, prev, out.alpha, tol) == 0
            checked += 1


class TestAcb:
    def test_exception_example(self):
        stats = StreamStats(value_count=3, total_payload_bits=175)
        assert acb(stats) == pytest.approx(58.3333, abs=1e-4)

    def test_single_value(self):
        assert acb(StreamStats(value_count=1, total_payload_bits=64)) == 64

    def test_empty(self):
        with pytest.raises(AnalysisError):
            acb(StreamStats())
        assert StreamStats().acb is None


class TestAllocationGap:
    """Fixed suffix allocation beats a length-prefixed layout on average."""

    def test_fixed_allocation_wins(self):
        result = fixed_vs_variable_gap(200_000, random.Random(2024))
        assert -1.5 < result.gap < -0.159

    @slow
    def test_fixed_allocation_wins_full_size(self):
        result = fixed_vs_variable_gap(1_000_000, random.Random(2024))
        assert -1.5 < result.gap < -0.159

    def test_requires_samples(self):
        with pytest.raises(AnalysisError):
            fixed_vs_variable_gap(0)


class TestConverterCblReport:
    def test_decimal_xor_leaves_fewest_bits(self):
        report = converter_cbl_report(random_walk(2000, seed=8), CodecConfig())
        assert report.value_count == 2000
        assert report.decimal_xor_cbl < report.xor_cbl < report.raw_cbl
        assert report.normal_share > 0.9

    def test_empty(self):
        with pytest.raises(AnalysisError):
            converter_cbl_report([])
