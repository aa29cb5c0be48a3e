"""
Input/output plumbing for value files.

Formats:
  raw64le  consecutive little-endian 64-bit IEEE754 words
  text     one decimal float per line (blank lines skipped)
  csv      one float per row, taken from a 0-based column
"""

import csv
import io
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional

from services.converter import float_to_bits, bits_to_float
from services.errors import ConfigError, InputParseError


logger = logging.getLogger(__name__)

FORMATS = ("raw64le", "text", "csv")
OUTPUT_FORMATS = ("raw64le", "text")

_WORD = struct.Struct("<Q")


@dataclass(frozen=True)
class InputSpec:
    path: Path
    format: str = "raw64le"
    column: Optional[int] = None
    limit: Optional[int] = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigError(f"unknown input format '{self.format}' (expected one of {', '.join(FORMATS)})")
        if self.format == "csv" and self.column is None:
            raise ConfigError("csv input requires a column index")
        if self.column is not None and self.column < 0:
            raise ConfigError(f"column index must be >= 0, got {self.column}")
        if self.limit is not None and self.limit < 0:
            raise ConfigError(f"limit must be >= 0, got {self.limit}")


def _parse_float(text: str, line: int) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise InputParseError(f"not a floating-point number: {text.strip()!r}", line)


def parse_raw64le(data: bytes, limit: Optional[int] = None) -> List[int]:
    if len(data) % 8:
        # the offending word is the one after the last complete word
        raise InputParseError(f"raw64le input is {len(data)} bytes, not a multiple of 8", len(data) // 8 + 1)
    count = len(data) // 8
    if limit is not None:
        count = min(count, limit)
    return [_WORD.unpack_from(data, 8 * i)[0] for i in range(count)]


def parse_text(text: str, limit: Optional[int] = None) -> List[int]:
    out: List[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if limit is not None and len(out) >= limit:
            break
        if not line.strip():
            continue
        out.append(float_to_bits(_parse_float(line, lineno)))
    return out


def parse_csv(text: str, column: int, limit: Optional[int] = None) -> List[int]:
    out: List[int] = []
    for rowno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if limit is not None and len(out) >= limit:
            break
        if not row or not any(cell.strip() for cell in row):
            continue
        if column >= len(row):
            raise InputParseError(f"row has {len(row)} columns, column {column} requested", rowno)
        out.append(float_to_bits(_parse_float(row[column], rowno)))
    return out


def read_values(spec: InputSpec) -> List[int]:
    """Load the 64-bit patterns described by `spec`. OSError propagates."""
    if spec.format == "raw64le":
        values = parse_raw64le(spec.path.read_bytes(), spec.limit)
    else:
        text = spec.path.read_text(encoding="utf-8")
        if spec.format == "text":
            values = parse_text(text, spec.limit)
        else:
            values = parse_csv(text, spec.column, spec.limit)

    logger.info("read %d values from %s (%s)", len(values), spec.path, spec.format)
    return values


# -----------------------------
# Output
# -----------------------------
def format_raw64le(values: Iterable[int]) -> bytes:
    return b"".join(_WORD.pack(v) for v in values)


def format_text(values: Iterable[int]) -> str:
    """repr() is the shortest decimal string that round-trips to the same double."""
    lines = [repr(bits_to_float(v)) for v in values]
    return "\n".join(lines) + ("\n" if lines else "")


def write_values(path: Path, values: List[int], fmt: str = "raw64le") -> None:
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError(f"unknown output format '{fmt}' (expected one of {', '.join(OUTPUT_FORMATS)})")
    if fmt == "raw64le":
        path.write_bytes(format_raw64le(values))
    else:
        path.write_text(format_text(values), encoding="utf-8")
    logger.info("wrote %d values to %s (%s)", len(values), path, fmt)
