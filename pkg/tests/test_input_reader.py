import struct

import pytest

from services.converter import float_to_bits
from services.errors import ConfigError, InputParseError
from services.input_reader import (
    InputSpec,
    format_raw64le,
    format_text,
    parse_csv,
    parse_raw64le,
    parse_text,
    read_values,
    write_values,
)


class TestInputSpec:
    def test_unknown_format(self, tmp_path):
        with pytest.raises(ConfigError):
            InputSpec(tmp_path / "x", format="parquet")

    def test_csv_requires_column(self, tmp_path):
        with pytest.raises(ConfigError):
            InputSpec(tmp_path / "x.csv", format="csv")

    def test_negative_limit(self, tmp_path):
        with pytest.raises(ConfigError):
            InputSpec(tmp_path / "x", limit=-1)


class TestParse:
    def test_raw64le(self):
        data = struct.pack("<2d", 88.1537, -0.0)
        assert parse_raw64le(data) == [float_to_bits(88.1537), 1 << 63]
        assert parse_raw64le(data, limit=1) == [float_to_bits(88.1537)]

    def test_raw64le_partial_word(self):
        with pytest.raises(InputParseError) as exc:
            parse_raw64le(b"\x00" * 12)
        assert exc.value.line == 2

    def test_text_skips_blank_lines(self):
        values = parse_text("1.5\n\n  \n-2.25\nnan\n")
        assert values[:2] == [float_to_bits(1.5), float_to_bits(-2.25)]
        assert len(values) == 3

    def test_text_reports_line(self):
        """Line numbers count blank lines too."""
        with pytest.raises(InputParseError) as exc:
            parse_text("1.0\n\n2.0\nabc\n")
        assert exc.value.line == 4
        assert "line 4" in str(exc.value)

    def test_text_limit(self):
        assert len(parse_text("1\n2\n3\n4\n", limit=2)) == 2

    def test_csv_column(self):
        text = "88.1537,88.1479\n1.0,2.0\n"
        assert parse_csv(text, 1) == [float_to_bits(88.1479), float_to_bits(2.0)]

    def test_csv_matches_raw_encoding(self):
        text = "88.1537,88.1479\n"
        assert parse_csv(text, 0) + parse_csv(text, 1) == parse_raw64le(
            struct.pack("<2d", 88.1537, 88.1479)
        )

    def test_csv_short_row(self):
        with pytest.raises(InputParseError) as exc:
            parse_csv("1,2\n3\n", 1)
        assert exc.value.line == 2

    def test_csv_bad_cell(self):
        with pytest.raises(InputParseError):
            parse_csv("1,x\n", 1)


class TestReadWrite:
    def test_read_text_file(self, tmp_path):
        path = tmp_path / "values.txt"
        path.write_text("0.1\n0.2\n0.3\n")
        assert read_values(InputSpec(path, format="text", limit=2)) == [
            float_to_bits(0.1), float_to_bits(0.2)
        ]

    def test_read_csv_file(self, tmp_path):
        path = tmp_path / "values.csv"
        path.write_text("ts,value\n")
        with pytest.raises(InputParseError) as exc:
            read_values(InputSpec(path, format="csv", column=1))
        assert exc.value.line == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_values(InputSpec(tmp_path / "nope.bin"))

    def test_write_raw_and_text(self, tmp_path):
        words = [float_to_bits(v) for v in (0.1, -3.0, 1e300)]
        write_values(tmp_path / "out.bin", words)
        assert (tmp_path / "out.bin").read_bytes() == format_raw64le(words)

        write_values(tmp_path / "out.txt", words, fmt="text")
        assert (tmp_path / "out.txt").read_text() == "0.1\n-3.0\n1e+300\n"
        assert parse_text((tmp_path / "out.txt").read_text()) == words

    def test_write_unknown_format(self, tmp_path):
        with pytest.raises(ConfigError):
            write_values(tmp_path / "out.csv", [], fmt="csv")

    def test_empty_text(self):
        assert format_text([]) == ""
