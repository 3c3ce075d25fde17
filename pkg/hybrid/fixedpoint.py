"""Bit-exact model of the backend's classical arithmetic.

Two number kinds live in 18-bit registers:

  Int18      plain two's-complement integers, raw in [-2**17, 2**17 - 1]
  FixedQ216  Q2.16 reals, value = raw * 2**-16, range [-2, 2 - 2**-16]

Every run-time result wraps silently into 18 bits. Range errors are only
raised when a constant is encoded (fx_encode, int18_encode), which is the
program-load check. Angles held in fixed registers are in units of pi, so the
representable range covers two full periods.
"""
import math
from dataclasses import dataclass

from hybrid.exceptions import DivideByZero, OutOfRange

WORD_BITS = 18
FRAC_BITS = 16
RAW_MIN = -(1 << (WORD_BITS - 1))
RAW_MAX = (1 << (WORD_BITS - 1)) - 1
ONE = 1 << FRAC_BITS

FIXED_MIN = RAW_MIN / ONE
FIXED_MAX = RAW_MAX / ONE

# Reciprocal table: 64 linear segments over the normalized mantissa [1, 2),
#  entries held with RECIP_PRECISION fractional bits.
RECIP_SEGMENTS = 64
RECIP_SEGMENT_BITS = 6
RECIP_PRECISION = 30


def wrap18(n):
    """Wrap an arbitrary integer into the 18-bit two's-complement range."""
    return ((n - RAW_MIN) & ((1 << WORD_BITS) - 1)) + RAW_MIN


def _check_raw(raw):
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise TypeError("raw value must be an int, got %r" % (raw,))
    if not RAW_MIN <= raw <= RAW_MAX:
        raise OutOfRange("raw value %d does not fit in %d bits" % (raw, WORD_BITS))


@dataclass(frozen=True, order=True)
class FixedQ216:
    """Q2.16 fixed-point register value."""
    raw: int

    def __post_init__(self):
        _check_raw(self.raw)

    @property
    def value(self):
        return self.raw / ONE

    def __float__(self):
        return self.value

    def __add__(self, other):
        return fx_add(self, other)

    def __sub__(self, other):
        return fx_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, Int18):
            return fx_mul_int(self, other)
        return fx_mul(self, other)

    def __neg__(self):
        return fx_neg(self)

    def __repr__(self):
        return "FixedQ216(%r raw=%d)" % (self.value, self.raw)


@dataclass(frozen=True, order=True)
class Int18:
    """18-bit signed integer register value."""
    raw: int

    def __post_init__(self):
        _check_raw(self.raw)

    @property
    def value(self):
        return self.raw

    def __int__(self):
        return self.raw

    def __add__(self, other):
        return int_add(self, other)

    def __sub__(self, other):
        return int_sub(self, other)

    def __mul__(self, other):
        return int_mul(self, other)

    def __neg__(self):
        return int_neg(self)


# --- Encoding ---

def fx_encode(x):
    """Convert a real constant to Q2.16, rounding half to even."""
    if not FIXED_MIN <= x <= FIXED_MAX:
        raise OutOfRange("%r is outside the Q2.16 range [%r, %r]" % (x, FIXED_MIN, FIXED_MAX))
    return FixedQ216(int(round(x * ONE)))


def fx_decode(a):
    return a.raw / ONE


def int18_encode(n):
    if isinstance(n, float):
        if not n.is_integer():
            raise OutOfRange("%r is not an integer" % n)
        n = int(n)
    if not RAW_MIN <= n <= RAW_MAX:
        raise OutOfRange("%r is outside the int18 range [%d, %d]" % (n, RAW_MIN, RAW_MAX))
    return Int18(n)


# --- Q2.16 arithmetic ---

def fx_add(a, b):
    return FixedQ216(wrap18(a.raw + b.raw))


def fx_sub(a, b):
    return FixedQ216(wrap18(a.raw - b.raw))


def fx_neg(a):
    return FixedQ216(wrap18(-a.raw))


def _trunc_shift(n, bits):
    """n / 2**bits, truncated toward zero."""
    if n >= 0:
        return n >> bits
    return -((-n) >> bits)


def fx_mul(a, b):
    """Full-width product, rescaled with truncation toward zero, then wrapped."""
    return FixedQ216(wrap18(_trunc_shift(a.raw * b.raw, FRAC_BITS)))


def fx_mul_int(a, n):
    """Scale a fixed value by an Int18; exact before the wrap."""
    return FixedQ216(wrap18(a.raw * n.raw))


def _build_recip_table():
    scale = 1 << RECIP_PRECISION
    table = []
    for i in range(RECIP_SEGMENTS + 1):
        # round(2**P / (1 + i/64)) in integers
        den = RECIP_SEGMENTS + i
        table.append((scale * RECIP_SEGMENTS + den // 2) // den)
    return tuple(table)


RECIP_TABLE = _build_recip_table()


def fx_recip_unwrapped(a):
    """Raw reciprocal of a before the 18-bit wrap, as an unbounded int.

    The magnitude is normalized to a mantissa in [1, 2), a first guess is
    interpolated from RECIP_TABLE and refined with one Newton step.
    """
    if a.raw == 0:
        raise DivideByZero("reciprocal of zero")
    negative = a.raw < 0
    m = -a.raw if negative else a.raw

    # Normalize: mantissa = m * 2**k lies in [2**16, 2**17).
    k = FRAC_BITS - (m.bit_length() - 1)
    mantissa = m << k if k >= 0 else m >> -k

    offset = mantissa - ONE
    index = offset >> (FRAC_BITS - RECIP_SEGMENT_BITS)
    frac_mask = (1 << (FRAC_BITS - RECIP_SEGMENT_BITS)) - 1
    frac = offset & frac_mask
    lo, hi = RECIP_TABLE[index], RECIP_TABLE[index + 1]
    guess = lo + _trunc_shift((hi - lo) * frac, FRAC_BITS - RECIP_SEGMENT_BITS)

    # Newton: y <- y * (2 - x*y)
    p = RECIP_PRECISION
    x = mantissa << (p - FRAC_BITS)
    error_term = (2 << p) - ((x * guess) >> p)
    refined = (guess * error_term) >> p

    # 1/a = refined * 2**k, rescaled to 16 fractional bits with rounding.
    shift = k + FRAC_BITS - p
    if shift >= 0:
        raw = refined << shift
    else:
        raw = (refined + (1 << (-shift - 1))) >> -shift
    return -raw if negative else raw


def fx_recip(a):
    """Approximate 1/a; results outside the range wrap."""
    return FixedQ216(wrap18(fx_recip_unwrapped(a)))


def fx_to_radians(a):
    return a.raw / ONE * math.pi


# --- Int18 arithmetic ---

def int_add(a, b):
    return Int18(wrap18(a.raw + b.raw))


def int_sub(a, b):
    return Int18(wrap18(a.raw - b.raw))


def int_mul(a, b):
    return Int18(wrap18(a.raw * b.raw))


def int_neg(a):
    return Int18(wrap18(-a.raw))
