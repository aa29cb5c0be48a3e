"""
Exception handler: binary-domain path for values the decimal pipeline cannot
serve (zero, subnormal, non-finite, high precision, unverifiable).

Layout of one record, EL being the current adaptive length:

  fit:       ES + 2^(EL-1) - 1 in EL bits | sign (1) | fraction (52)
  overflow:  EL one-bits                  | raw IEEE754 word (64)

EL expands by one after an overflow and contracts by one after more than rho
consecutive differences that fit the half range. Encoder and decoder run the
same state machine, so EL is never transmitted.
"""

from dataclasses import dataclass
from typing import Optional

from services.bitio import BitReader, BitWriter
from services.converter import EXP_SPECIAL, FRACTION_BITS, FloatBits
from services.errors import ContractError, DecodeError


EL_MIN = 1
EL_MAX = 12
PASS_THROUGH_BITS = 1 + FRACTION_BITS
RAW_BITS = 64


@dataclass
class AdaptiveState:
    el: int = EL_MIN
    shrink_count: int = 0
    rho: int = 8
    prev_exp: Optional[int] = None
    overflows: int = 0


def _check_el(el: int) -> None:
    if not (EL_MIN <= el <= EL_MAX):
        raise ContractError(f"EL must be in {EL_MIN}..{EL_MAX}, got {el}")


def es_bias(el: int) -> int:
    return (1 << (el - 1)) - 1


def es_fits(es: int, el: int) -> bool:
    half = es_bias(el)
    return -half <= es <= half


def es_fits_half(es: int, el: int) -> bool:
    """Whether es would still fit with EL - 1 bits."""
    if el <= EL_MIN:
        return False
    half = (1 << (el - 2)) - 1
    return -half <= es <= half


def es_store_value(es: int, el: int) -> Optional[int]:
    """Biased stored value, or None on overflow."""
    _check_el(el)
    if not es_fits(es, el):
        return None
    return es + es_bias(el)


def update_el(state: AdaptiveState, es: int, overflowed: bool) -> None:
    if overflowed:
        state.el = min(state.el + 1, EL_MAX)
        state.shrink_count = 0
        return

    if es_fits_half(es, state.el):
        state.shrink_count += 1
        if state.shrink_count > state.rho:
            state.el -= 1
            state.shrink_count = 0
    else:
        state.shrink_count = 0


def encode_exception(omega: FloatBits, state: AdaptiveState, writer: BitWriter) -> bool:
    """Write one exception record; return True when it overflowed to a raw word."""
    if state.prev_exp is None:
        raise ContractError("exception record needs the previous exponent")

    es = omega.exp - state.prev_exp
    stored = es_store_value(es, state.el)
    if stored is None:
        writer.write_bits((1 << state.el) - 1, state.el)
        writer.write_bits(omega.raw, RAW_BITS)
        state.overflows += 1
        overflowed = True
    else:
        writer.write_bits(stored, state.el)
        writer.write_bits(omega.sign, 1)
        writer.write_bits(omega.fraction, FRACTION_BITS)
        overflowed = False

    update_el(state, es, overflowed)
    state.prev_exp = omega.exp
    return overflowed


def decode_exception(state: AdaptiveState, reader: BitReader) -> FloatBits:
    if state.prev_exp is None:
        raise ContractError("exception record needs the previous exponent")

    el = state.el
    offset = reader.bit_cursor
    stored = reader.read_bits(el)
    if stored == (1 << el) - 1:
        omega = FloatBits.from_raw(reader.read_bits(RAW_BITS))
        es = omega.exp - state.prev_exp
        state.overflows += 1
        overflowed = True
    else:
        es = stored - es_bias(el)
        exp = state.prev_exp + es
        if not (0 <= exp <= EXP_SPECIAL):
            raise DecodeError(f"exponent {exp} out of range in exception record", bit_offset=offset)
        sign = reader.read_bits(1)
        fraction = reader.read_bits(FRACTION_BITS)
        omega = FloatBits.from_fields(sign, exp, fraction)
        overflowed = False

    update_el(state, es, overflowed)
    state.prev_exp = omega.exp
    return omega


def record_bit_length(el: int, overflowed: bool) -> int:
    return el + (RAW_BITS if overflowed else PASS_THROUGH_BITS)
