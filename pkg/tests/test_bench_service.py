import random

import pytest

from models.bench_model import SCHEMES, BenchReport
from services.bench_service import (
    high_precision_stream,
    piecewise_exponent_stream,
    random_walk,
    run_bench,
    run_scheme,
    throughput_mb_s,
    verify_round_trip,
)
from services.config import CodecConfig, env_true
from services.converter import bits_to_float, float_to_bits
from services.errors import ConfigError, RoundTripError

slow = pytest.mark.skipif(not env_true("DEXOR_SLOW_TESTS"), reason="set DEXOR_SLOW_TESTS=1")


class TestRunBench:
    """Comparative runs over the three schemes."""

    def test_low_precision_walk(self):
        report = run_bench(random_walk(20_000, seed=11), source="walk")
        dexor = report.result("dexor")
        gorilla = report.result("gorilla")
        assert dexor.acb <= 20
        assert dexor.acb < gorilla.acb - 10
        assert all(r.round_trip_ok for r in report.results)

    @slow
    def test_low_precision_walk_full_size(self):
        report = run_bench(random_walk(100_000, seed=11), schemes=["dexor", "gorilla"])
        assert report.result("dexor").acb <= 20
        assert report.result("dexor").acb < report.result("gorilla").acb - 10

    def test_full_precision_values(self):
        """17-significant-digit data falls back to the exception path."""
        rng = random.Random(12)
        words = [float_to_bits(rng.random()) for _ in range(5000)]
        report = run_bench(words, schemes=["dexor", "dexor-exception-only"])
        dexor = report.result("dexor")
        exc_only = report.result("dexor-exception-only")
        assert dexor.acb <= 78
        assert exc_only.acb <= dexor.acb
        assert dexor.case_histogram["11"] > 0

    def test_report_fields(self):
        words = random_walk(100, seed=1)
        report = run_bench(words, config=CodecConfig(rho=4), source="unit")
        assert isinstance(report, BenchReport)
        assert [r.scheme for r in report.results] == list(SCHEMES)
        assert report.input_bytes == 800
        assert report.rho == 4
        assert report.result("gorilla").case_histogram == {}
        assert report.result("nope") is None

    def test_empty_input(self):
        report = run_bench([])
        for r in report.results:
            assert r.value_count == 0
            assert r.acb is None
            assert r.compress_mb_s is None

    def test_no_schemes(self):
        with pytest.raises(ConfigError):
            run_bench([1], schemes=[])

    def test_unknown_scheme(self):
        with pytest.raises(ConfigError):
            run_scheme([1], "chimp")


def test_throughput_mb_s():
    assert throughput_mb_s(1_000_000, 2.0) == pytest.approx(4.0)
    assert throughput_mb_s(0, 1.0) is None
    assert throughput_mb_s(10, 0.0) is None


class TestVerifyRoundTrip:
    def test_equal(self):
        verify_round_trip("dexor", [1, 2], [1, 2])

    def test_mismatch(self):
        with pytest.raises(RoundTripError) as exc:
            verify_round_trip("dexor", [1, 2, 3], [1, 5, 3])
        assert exc.value.index == 1
        assert exc.value.actual == 5

    def test_short_output(self):
        with pytest.raises(RoundTripError) as exc:
            verify_round_trip("gorilla", [1, 2], [1])
        assert exc.value.actual is None
        assert "<missing>" in str(exc.value)

    def test_long_output(self):
        with pytest.raises(RoundTripError):
            verify_round_trip("gorilla", [1], [1, 2])


class TestSyntheticStreams:
    def test_random_walk_is_deterministic_and_bounded(self):
        a = random_walk(500, lo=0, hi=1, sigma=0.2, seed=3)
        assert a == random_walk(500, lo=0, hi=1, sigma=0.2, seed=3)
        assert all(0.0 <= bits_to_float(w) <= 1.0 for w in a)

    def test_high_precision_exponent(self):
        words = high_precision_stream(100, exponent=1000)
        assert {w >> 52 for w in words} == {1000}

    def test_high_precision_rejects_special_exponent(self):
        with pytest.raises(ConfigError):
            high_precision_stream(1, exponent=2047)

    def test_piecewise_segments(self):
        words = piecewise_exponent_stream(1000, segment=100, seed=4)
        exps = [w >> 52 for w in words]
        for start in range(0, 1000, 100):
            assert len(set(exps[start:start + 100])) == 1
        assert all(900 <= e <= 1100 for e in exps)

    def test_piecewise_rejects_bad_segment(self):
        with pytest.raises(ConfigError):
            piecewise_exponent_stream(10, segment=0)
