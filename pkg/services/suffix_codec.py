"""
Suffix codec: the scaled suffix beta is stored as its magnitude in a fixed
number of bits derived from delta = o - q. The sign is implied by the prefix
alpha, except when alpha is zero and one explicit sign bit is written.
"""

from dataclasses import dataclass

from services.bitio import BitReader, BitWriter
from services.converter import DELTA_MAX
from services.errors import ContractError, DecodeError


# ceil(log2(10^d)) == bit length of (10^d - 1), exact for every d.
FIXED_LEN = tuple((10 ** d - 1).bit_length() for d in range(DELTA_MAX + 1))

VARIABLE_LENGTH_FIELD_BITS = 6


def suffix_bit_length(delta: int) -> int:
    if not (0 <= delta <= DELTA_MAX):
        raise ContractError(f"delta must be in 0..{DELTA_MAX}, got {delta}")
    return FIXED_LEN[delta]


@dataclass(frozen=True)
class SuffixPlan:
    delta: int
    needs_sign_bit: bool = False

    def __post_init__(self):
        suffix_bit_length(self.delta)

    @property
    def fixed_len(self) -> int:
        return FIXED_LEN[self.delta]

    @property
    def bit_length(self) -> int:
        return int(self.needs_sign_bit) + self.fixed_len

    @classmethod
    def for_prefix(cls, delta: int, alpha: float) -> "SuffixPlan":
        return cls(delta, alpha == 0.0)


def encode_suffix(beta: int, plan: SuffixPlan, writer: BitWriter) -> None:
    magnitude = abs(beta)
    if magnitude >= 10 ** plan.delta:
        raise ContractError(f"|beta|={magnitude} does not fit delta={plan.delta}")
    if plan.needs_sign_bit:
        writer.write_bits(1 if beta < 0 else 0, 1)
    writer.write_bits(magnitude, plan.fixed_len)


def decode_suffix(plan: SuffixPlan, prefix_sign: int, reader: BitReader) -> int:
    if plan.needs_sign_bit:
        prefix_sign = -1 if reader.read_bits(1) else 1

    offset = reader.bit_cursor
    magnitude = reader.read_bits(plan.fixed_len)
    if magnitude >= 10 ** plan.delta:
        raise DecodeError(f"suffix {magnitude} does not fit delta={plan.delta}", bit_offset=offset)
    return -magnitude if prefix_sign < 0 else magnitude


def variable_suffix_cost(beta: int, signed: bool = True) -> int:
    """Bits of the vanilla layout: [sign] + 6-bit length + unpadded magnitude."""
    return int(signed) + VARIABLE_LENGTH_FIELD_BITS + abs(beta).bit_length()
