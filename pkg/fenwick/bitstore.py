"""Bit-addressable growable storage over 64-bit words."""

import numpy as np
from loguru import logger

from .bitops import W, WORD_MASK
from .errors import ContractError, OutOfRangeError, RangeError


def words_for(len_bits: int) -> int:
    return (len_bits + W - 1) // W


class BitStore:
    """
    A growable sequence of bits backed by a ``numpy.uint64`` array.

    Bit i of the store is bit ``i % 64`` of word ``i // 64`` (little-endian
    bit order). Every word past the last used one is kept at zero, so growth
    always exposes zero bits. Fields are at most one word wide and may
    straddle two consecutive words.
    """

    __slots__ = ("_words", "_len_bits")

    def __init__(self, len_bits: int = 0):
        if len_bits < 0:
            raise ContractError(f"negative length {len_bits}")
        self._words = np.zeros(max(1, words_for(len_bits)), dtype=np.uint64)
        self._len_bits = len_bits

    @property
    def len_bits(self) -> int:
        return self._len_bits

    @property
    def num_words(self) -> int:
        """Words touched by the addressable bits"""
        return words_for(self._len_bits)

    @property
    def capacity_words(self) -> int:
        return len(self._words)

    @property
    def words(self) -> np.ndarray:
        """Read-only view of the used words"""
        view = self._words[: self.num_words]
        view.flags.writeable = False
        return view

    def _check_field(self, offset: int, width: int) -> None:
        if not 1 <= width <= W:
            raise ContractError(f"field width {width} not in [1, {W}]")
        if offset < 0 or offset + width > self._len_bits:
            raise OutOfRangeError(
                f"field [{offset}, {offset + width}) outside store of "
                f"{self._len_bits} bits"
            )

    def read_bits(self, offset: int, width: int) -> int:
        """Read the width-bit field starting at bit offset."""
        self._check_field(offset, width)
        q, r = divmod(offset, W)
        value = int(self._words[q]) >> r
        if r + width > W:
            value |= int(self._words[q + 1]) << (W - r)
        return value & ((1 << width) - 1)

    def read_bits_aligned(self, offset: int, width: int) -> int:
        """Read a field known to lie within a single aligned word."""
        q, r = divmod(offset, W)
        if __debug__:
            self._check_field(offset, width)
            if r + width > W:
                raise ContractError(
                    f"field [{offset}, {offset + width}) crosses word boundary"
                )
        return (int(self._words[q]) >> r) & ((1 << width) - 1)

    def write_bits(self, offset: int, width: int, value: int) -> None:
        """Store value in the width-bit field starting at bit offset."""
        self._check_field(offset, width)
        if value < 0 or value >> width:
            raise RangeError(f"value {value} does not fit in {width} bits")
        q, r = divmod(offset, W)
        mask = (1 << width) - 1
        lo = int(self._words[q])
        self._words[q] = (lo & ~(mask << r) & WORD_MASK) | ((value << r) & WORD_MASK)
        if r + width > W:
            shift = W - r
            hi = int(self._words[q + 1])
            self._words[q + 1] = (hi & ~(mask >> shift)) | (value >> shift)

    def read_word(self, index: int) -> int:
        if not 0 <= index < self.num_words:
            raise OutOfRangeError(f"word {index} outside store of {self.num_words}")
        return int(self._words[index])

    def write_word(self, index: int, value: int) -> None:
        if not 0 <= index < self.num_words:
            raise OutOfRangeError(f"word {index} outside store of {self.num_words}")
        if value < 0 or value > WORD_MASK:
            raise RangeError(f"value {value} does not fit in a word")
        if (index + 1) * W > self._len_bits and value >> (self._len_bits - index * W):
            raise RangeError(f"value {value:#x} sets bits past the end of the store")
        self._words[index] = value

    def grow(self, new_len_bits: int) -> None:
        """Extend the store; new bits read as zero."""
        if new_len_bits < self._len_bits:
            raise ContractError(
                f"grow cannot shrink store from {self._len_bits} to {new_len_bits}"
            )
        needed = words_for(new_len_bits)
        if needed > len(self._words):
            capacity = max(needed, 2 * len(self._words))
            words = np.zeros(capacity, dtype=np.uint64)
            words[: len(self._words)] = self._words
            self._words = words
            logger.trace(f"BitStore capacity grown to {capacity} words")
        self._len_bits = new_len_bits

    def truncate(self, new_len_bits: int) -> None:
        """Shrink the store, zeroing the released bits."""
        if not 0 <= new_len_bits <= self._len_bits:
            raise ContractError(
                f"truncate cannot extend store from {self._len_bits} to {new_len_bits}"
            )
        q, r = divmod(new_len_bits, W)
        used = self.num_words
        if r:
            self._words[q] = int(self._words[q]) & ((1 << r) - 1)
            q += 1
        self._words[q:used] = 0
        self._len_bits = new_len_bits
        capacity = len(self._words)
        if capacity > 4 * max(1, words_for(new_len_bits)) and capacity > 64:
            self._words = self._words[: max(1, 2 * words_for(new_len_bits))].copy()

    def resize(self, new_len_bits: int) -> None:
        if new_len_bits >= self._len_bits:
            self.grow(new_len_bits)
        else:
            self.truncate(new_len_bits)

    @classmethod
    def from_words(cls, words, len_bits: int) -> "BitStore":
        """Wrap a copy of words holding len_bits addressable bits."""
        array = np.asarray(words, dtype=np.uint64).ravel()
        needed = words_for(len_bits)
        if needed > len(array):
            raise ContractError(f"{len(array)} words cannot hold {len_bits} bits")
        store = cls(len_bits)
        store._words[:needed] = array[:needed]
        r = len_bits % W
        if r:
            store._words[needed - 1] = int(store._words[needed - 1]) & ((1 << r) - 1)
        return store

    def __len__(self) -> int:
        return self._len_bits

    def __repr__(self) -> str:
        return f"BitStore(len_bits={self._len_bits}, words={self.num_words})"
