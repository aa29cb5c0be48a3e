"""
Decimal-XOR converter.

For the current value v and the previous value v_prev this module finds

  q  tail coordinate: the lowest decimal place of v that is nonzero,
  o  LCP coordinate: the lowest decimal place of the longest decimal prefix
     v shares with v_prev,

and splits v into the shared prefix alpha and the integer suffix
beta = (v - alpha) * 10^-q. Anything the main pipeline cannot reproduce
bit-for-bit collapses into an exception outcome.

All decimal scaling goes through `scale()` and the POW10 table; the decoder
uses the very same expressions, which is what makes `verify_reconstruction`
a sound lossless gate.
"""

import math
import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Protocol, Tuple

from services.errors import ContractError


BIAS = 1023
EXP_SPECIAL = 0x7FF
FRACTION_BITS = 52
FRACTION_MASK = (1 << FRACTION_BITS) - 1
WORD_MASK = (1 << 64) - 1

Q_MIN = -20
Q_MAX = 11
Q_OFFSET = 20        # q + 20 is stored in 5 bits
LCP_CAP = Q_MAX + 1  # o == LCP_CAP means "no common prefix", alpha = 0
DELTA_MAX = 15

# Nearest doubles to 10^m, m in [0, 25]. int -> float conversion is correctly rounded.
POW10 = tuple(float(10 ** m) for m in range(26))

_U64 = struct.Struct("<Q")
_F64 = struct.Struct("<d")


# -----------------------------
# IEEE754 decomposition
# -----------------------------
@dataclass(frozen=True)
class FloatBits:
    raw: int
    sign: int
    exp: int
    fraction: int

    @classmethod
    def from_raw(cls, raw: int) -> "FloatBits":
        if raw < 0 or raw > WORD_MASK:
            raise ContractError(f"not a 64-bit pattern: {raw}")
        return cls(raw, raw >> 63, (raw >> FRACTION_BITS) & EXP_SPECIAL, raw & FRACTION_MASK)

    @classmethod
    def from_fields(cls, sign: int, exp: int, fraction: int) -> "FloatBits":
        raw = (sign << 63) | (exp << FRACTION_BITS) | fraction
        return cls(raw, sign, exp, fraction)

    @classmethod
    def from_float(cls, value: float) -> "FloatBits":
        return cls.from_raw(float_to_bits(value))

    def to_float(self) -> float:
        return bits_to_float(self.raw)

    @property
    def is_special(self) -> bool:
        """Zero, subnormal, infinity or NaN: no decimal coordinates."""
        return self.exp == 0 or self.exp == EXP_SPECIAL


def float_to_bits(value: float) -> int:
    return _U64.unpack(_F64.pack(value))[0]


def bits_to_float(raw: int) -> float:
    return _F64.unpack(_U64.pack(raw))[0]


# -----------------------------
# Canonical decimal arithmetic
# -----------------------------
def scale(v: float, k: int) -> float:
    """v * 10^k, evaluated the one canonical way."""
    if k >= 0:
        return v * POW10[k]
    return v / POW10[-k]


def tolerant_trunc(x: float, tol: float) -> int:
    r = round(x)
    if abs(x - r) < tol:
        return r
    return math.trunc(x)


def is_tolerantly_integral(x: float, tol: float) -> bool:
    if not math.isfinite(x):
        return False
    return abs(x - round(x)) < tol


def prefix_value(v: float, o: int, tol: float) -> float:
    """alpha: v truncated at decimal place o (0.0 when o is the no-prefix cap)."""
    if o >= LCP_CAP:
        return 0.0
    x = scale(v, -o)
    if not math.isfinite(x):
        return 0.0
    k = tolerant_trunc(x, tol)
    if k == 0:
        return 0.0
    return scale(float(k), o)


def canonical_reconstruct(alpha: float, beta: int, q: int) -> float:
    """
    alpha + beta * 10^q, composed as one integer at the tail coordinate and
    scaled once: round(alpha * 10^-q) + beta, then * 10^q.
    """
    head = scale(alpha, -q)
    if not math.isfinite(head):
        raise ContractError(f"prefix {alpha!r} overflows at q={q}")
    try:
        return scale(float(round(head) + beta), q)
    except OverflowError:
        raise ContractError(f"suffix {beta} overflows at q={q}")


# -----------------------------
# Coordinates
# -----------------------------
@dataclass(frozen=True)
class DecimalCoords:
    q: int
    o: int

    @property
    def delta(self) -> int:
        return self.o - self.q


def _has_digits_to(v: float, q: int, tol: float) -> bool:
    # v * 10^-q must be integral and nonzero: a place above the leading digit is no tail
    x = scale(v, -q)
    return is_tolerantly_integral(x, tol) and round(x) != 0


def get_tail(v: float, q_prev: int, tol: float) -> Optional[int]:
    """
    Tail coordinate of v, searched from q_prev. None when no coordinate in
    [Q_MIN, Q_MAX] qualifies.
    """
    q = min(max(q_prev, Q_MIN), Q_MAX)
    if _has_digits_to(v, q, tol):
        while q < Q_MAX and _has_digits_to(v, q + 1, tol):
            q += 1
        return q

    while q > Q_MIN:
        q -= 1
        if _has_digits_to(v, q, tol):
            return q
    return None


def get_lcp(v: float, v_prev: float, q: int, tol: float) -> int:
    """
    Smallest l >= q such that v and v_prev truncate to the same integer at l
    and at every coarser coordinate; LCP_CAP if they differ at LCP_CAP - 1.

    Scanned from the top: tolerant snapping can make a finer coordinate
    match while a coarser one does not (999.9999 against 999.5).
    """
    o = LCP_CAP
    for l in range(LCP_CAP - 1, q - 1, -1):
        a = scale(v, -l)
        b = scale(v_prev, -l)
        if not (math.isfinite(a) and math.isfinite(b)):
            break
        if tolerant_trunc(a, tol) != tolerant_trunc(b, tol):
            break
        o = l
    return o


# -----------------------------
# Case codes
# -----------------------------
class CaseCode(IntEnum):
    NEW_TAIL = 0b00     # q changed: 5-bit (q+20) + 4-bit delta follow
    NEW_LCP = 0b01      # q reused, o changed: 4-bit delta follows
    REUSE = 0b10        # q and o reused
    EXCEPTION = 0b11    # exception record follows

    @property
    def label(self) -> str:
        return format(int(self), "02b")


@dataclass(frozen=True)
class CaseEmission:
    code: CaseCode
    fields: Tuple[Tuple[int, int], ...] = ()   # (value, bit width) after the code

    @property
    def bit_length(self) -> int:
        return 2 + sum(n for _, n in self.fields)


def classify_case(coords: DecimalCoords, prev_q: int, prev_o: int) -> CaseEmission:
    q_field = coords.q + Q_OFFSET
    delta = coords.delta
    if not (0 <= q_field <= 31) or not (0 <= delta <= DELTA_MAX):
        return CaseEmission(CaseCode.EXCEPTION)

    if coords.q == prev_q:
        if coords.o == prev_o:
            return CaseEmission(CaseCode.REUSE)
        return CaseEmission(CaseCode.NEW_LCP, ((delta, 4),))
    return CaseEmission(CaseCode.NEW_TAIL, ((q_field, 5), (delta, 4)))


# -----------------------------
# Prefix / suffix split
# -----------------------------
class ConverterHistory(Protocol):
    prev_value: float
    prev_q: int
    prev_o: int


@dataclass(frozen=True)
class ConvertOutcome:
    is_exception: bool
    coords: Optional[DecimalCoords] = None
    alpha: float = 0.0
    beta: int = 0
    case: CaseEmission = CaseEmission(CaseCode.EXCEPTION)
    reason: str = ""

    @property
    def alpha_is_zero(self) -> bool:
        return self.alpha == 0.0

    @property
    def case_code(self) -> CaseCode:
        return self.case.code

    @classmethod
    def exception(cls, reason: str) -> "ConvertOutcome":
        return cls(is_exception=True, reason=reason)


def verify_reconstruction(omega: FloatBits, alpha: float, beta: int, q: int) -> bool:
    try:
        rebuilt = canonical_reconstruct(alpha, beta, q)
    except ContractError:
        return False
    return float_to_bits(rebuilt) == omega.raw


def get_prefix_and_suffix(omega: FloatBits, state: ConverterHistory, tol: float) -> ConvertOutcome:
    if omega.is_special:
        return ConvertOutcome.exception("special")

    v = omega.to_float()
    q = get_tail(v, state.prev_q, tol)
    if q is None:
        return ConvertOutcome.exception("tail-not-found")

    o = get_lcp(v, state.prev_value, q, tol)
    coords = DecimalCoords(q, o)
    if coords.delta > DELTA_MAX:
        return ConvertOutcome.exception("delta-overflow")

    alpha = prefix_value(v, o, tol)
    scaled = scale(v - alpha, -q)
    if not math.isfinite(scaled):
        return ConvertOutcome.exception("suffix-range")
    beta = round(scaled)

    if abs(beta) >= 10 ** coords.delta:
        return ConvertOutcome.exception("suffix-range")
    if alpha != 0.0 and beta != 0 and (beta < 0) != (alpha < 0):
        return ConvertOutcome.exception("sign-mismatch")
    if not verify_reconstruction(omega, alpha, beta, q):
        return ConvertOutcome.exception("reconstruction-mismatch")

    case = classify_case(coords, state.prev_q, state.prev_o)
    if case.code is CaseCode.EXCEPTION:
        return ConvertOutcome.exception("coordinate-range")

    return ConvertOutcome(
        is_exception=False,
        coords=coords,
        alpha=alpha,
        beta=beta,
        case=case,
    )
