from typing import Optional


class CodecError(Exception):
    """Base exception for codec errors."""
    pass


class ContractError(CodecError, ValueError):
    """Caller passed arguments outside an operation's contract."""
    pass


class ConfigError(CodecError, ValueError):
    """Invalid codec configuration (tolerance, rho, mode)."""
    pass


class FormatError(CodecError):
    """Container header is missing, short, or carries unknown magic/version/mode."""
    pass


class DecodeError(CodecError):
    """Payload cannot be decoded: bit underrun, tampered fields, length mismatch."""

    def __init__(self, message: str, bit_offset: Optional[int] = None):
        super().__init__(message)
        self.bit_offset = bit_offset

    @property
    def byte_offset(self) -> Optional[int]:
        if self.bit_offset is None:
            return None
        return self.bit_offset // 8


class AnalysisError(CodecError):
    """A metric is undefined for the given input."""
    pass


class InputParseError(CodecError):
    """An input record could not be parsed as a double."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RoundTripError(CodecError):
    """Decoded stream differs from the input."""

    def __init__(self, scheme: str, index: int, expected: int, actual: Optional[int]):
        actual_str = "<missing>" if actual is None else f"0x{actual:016x}"
        super().__init__(
            f"{scheme}: mismatch at index {index}: expected 0x{expected:016x}, got {actual_str}"
        )
        self.scheme = scheme
        self.index = index
        self.expected = expected
        self.actual = actual
