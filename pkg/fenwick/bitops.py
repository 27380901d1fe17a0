"""
Word-level bit primitives.

Words are Python ints in [0, 2^64). Two implementations exist for the
sideways sum and for in-word selection: a fast path backed by CPython's
``int.bit_count`` (a single POPCNT on most targets) and a portable
broadword path that needs nothing but shifts, masks and multiplications.
The choice is made once at import time by a capability check; setting
``FENWICK_PORTABLE_BITOPS=1`` in the environment forces the portable path.
"""

import os

from .errors import DomainError, OutOfRangeError

W = 64
WORD_MASK = (1 << W) - 1

ONES_STEP_4 = 0x1111111111111111
ONES_STEP_8 = 0x0101010101010101
MSBS_STEP_8 = 0x80 * ONES_STEP_8


def rho(x: int) -> int:
    """Index of the lowest set bit (ruler function); rho(0) is W."""
    if x == 0:
        return W
    return (x & -x).bit_length() - 1


def lambda_(x: int) -> int:
    """Index of the highest set bit, i.e. floor(lg x), for x > 0."""
    if x <= 0:
        raise DomainError(f"lambda is undefined for {x}")
    return x.bit_length() - 1


def nu_fast(x: int) -> int:
    return x.bit_count()


def nu_portable(x: int) -> int:
    """Sideways sum by SWAR reduction of a 64-bit word."""
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return ((x * ONES_STEP_8) & WORD_MASK) >> 56


def _build_select_in_byte() -> list:
    # entry (r << 8) | b is the position of the r-th one of byte b
    table = [8] * (256 * 8)
    for b in range(256):
        r = 0
        for i in range(8):
            if b >> i & 1:
                table[(r << 8) | b] = i
                r += 1
    return table


SELECT_IN_BYTE = _build_select_in_byte()


def _check_rank(x: int, k: int, count: int) -> None:
    if not 0 <= k < count:
        raise OutOfRangeError(
            f"rank {k} out of range for word {x:#x} ({count} candidates)"
        )


def select_in_word_fast(x: int, k: int) -> int:
    """Position of the (k+1)-th one, bisecting with builtin popcounts."""
    _check_rank(x, k, x.bit_count())
    pos = 0
    for width in (32, 16, 8, 4, 2, 1):
        c = (x & ((1 << width) - 1)).bit_count()
        if k >= c:
            k -= c
            x >>= width
            pos += width
    return pos


def select_in_word_portable(x: int, k: int) -> int:
    """Position of the (k+1)-th one using byte-wise broadword ranking."""
    _check_rank(x, k, nu_portable(x))
    s = x - ((x >> 1) & 0x5555555555555555)
    s = (s & 0x3333333333333333) + ((s >> 2) & 0x3333333333333333)
    s = (s + (s >> 4)) & 0x0F0F0F0F0F0F0F0F
    # byte i of byte_sums holds the number of ones in bytes 0..i
    byte_sums = (s * ONES_STEP_8) & WORD_MASK
    k_step_8 = k * ONES_STEP_8
    geq_k_step_8 = ((k_step_8 | MSBS_STEP_8) - byte_sums) & MSBS_STEP_8
    place = nu_portable(geq_k_step_8) * 8
    byte_rank = k - (((byte_sums << 8) >> place) & 0xFF)
    return place + SELECT_IN_BYTE[((x >> place) & 0xFF) | (byte_rank << 8)]


def _capability() -> bool:
    forced = os.getenv("FENWICK_PORTABLE_BITOPS", "").strip().lower()
    if forced in ("1", "true", "yes", "on"):
        return False
    return hasattr(int, "bit_count")


FAST_PATH = _capability()

if FAST_PATH:
    nu = nu_fast
    select_in_word = select_in_word_fast
else:
    nu = nu_portable
    select_in_word = select_in_word_portable


def select_zero_in_word(x: int, k: int) -> int:
    """Position of the (k+1)-th zero of a 64-bit word."""
    return select_in_word(~x & WORD_MASK, k)


def isolate_lowest(x: int) -> int:
    return x & -x


def clear_lowest(x: int) -> int:
    return x & (x - 1)
