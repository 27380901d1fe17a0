"""
Dynamic bit vector with rank and select over a Fenwick tree of block counts.

The payload is split into blocks of q = 64 * block_words bits; leaf m of the
tree holds the number of ones in block m, with bound B = q. rank adds the
prefix over whole blocks to an in-block popcount, select finds the block
with the tree and finishes with a linear scan over its words.
"""

import struct
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import numpy as np
from loguru import logger

from .bitops import W, WORD_MASK, nu, select_in_word
from .bitstore import BitStore, words_for
from .classical import HOLE_LOG
from .core import FenwickContract
from .errors import (
    ContractError,
    FormatError,
    OutOfRangeError,
    UnderflowError,
    UsageError,
)
from .registry import (
    make_tree,
    normalize_tag,
    storage_bits,
    tree_from_values,
    tree_zeros,
)

DEFAULT_BLOCK_WORDS = 16

MAGIC = b"FWBV"
FORMAT_VERSION = 1
# magic, version, block words, length in bits, payload words, backend tag
HEADER = struct.Struct("<4sHHQQ16s")


def _blocks(len_bits: int, block_bits: int) -> int:
    return (len_bits + block_bits - 1) // block_bits


class DynBitVector:
    """
    Growable bit vector supporting rank/select on ones and zeros.

    Args:
        block_words: Words per block (W); blocks hold 64 * W bits
        variant: Tag of the Fenwick backend counting ones per block
        hole_log: Hole interval exponent for classical backends
    """

    def __init__(
        self,
        block_words: int = DEFAULT_BLOCK_WORDS,
        variant: str = "byte[l]",
        hole_log: Optional[int] = HOLE_LOG,
    ):
        if block_words < 1:
            raise ContractError(f"block_words must be positive, got {block_words}")
        self.block_words = block_words
        self.block_bits = W * block_words
        self.variant = normalize_tag(variant)
        self.hole_log = hole_log
        self._len = 0
        self._bits = BitStore()
        self._tree: FenwickContract = make_tree(self.variant, self.block_bits, hole_log)

    # Construction

    @classmethod
    def from_words(
        cls,
        words,
        len_bits: int,
        block_words: int = DEFAULT_BLOCK_WORDS,
        variant: str = "byte[l]",
        hole_log: Optional[int] = HOLE_LOG,
    ) -> "DynBitVector":
        """Wrap len_bits bits given as little-endian 64-bit words."""
        bv = cls(block_words, variant, hole_log)
        nblocks = _blocks(len_bits, bv.block_bits)
        store = BitStore.from_words(words, len_bits)
        store.grow(nblocks * bv.block_bits)
        counts = np.bitwise_count(store.words).reshape(nblocks, block_words).sum(axis=1)
        bv._bits = store
        bv._len = len_bits
        bv._tree = tree_from_values(
            bv.variant, (int(c) for c in counts), bv.block_bits, hole_log
        )
        logger.debug(f"Built {bv!r} from {len_bits} bits")
        return bv

    @classmethod
    def from_bits(cls, bits: Iterable[int], **options) -> "DynBitVector":
        """Build from a sequence of 0/1 values."""
        array = np.fromiter((1 if b else 0 for b in bits), dtype=np.uint8)
        packed = np.packbits(array, bitorder="little")
        padded = np.zeros(words_for(len(array)) * 8, dtype=np.uint8)
        padded[: len(packed)] = packed
        return cls.from_words(padded.view("<u8"), len(array), **options)

    @classmethod
    def zeros(cls, n: int, **options) -> "DynBitVector":
        bv = cls(**options)
        nblocks = _blocks(n, bv.block_bits)
        bv._bits = BitStore(nblocks * bv.block_bits)
        bv._len = n
        bv._tree = tree_zeros(bv.variant, nblocks, bv.block_bits, bv.hole_log)
        return bv

    @classmethod
    def ones(cls, n: int, **options) -> "DynBitVector":
        words = np.full(words_for(n), WORD_MASK, dtype=np.uint64)
        return cls.from_words(words, n, **options)

    # Queries

    def __len__(self) -> int:
        return self._len

    @property
    def tree(self) -> FenwickContract:
        return self._tree

    def count_ones(self) -> int:
        return self._tree.total()

    def count_zeros(self) -> int:
        return self._len - self._tree.total()

    def _check_position(self, i: int) -> None:
        if not 0 <= i < self._len:
            raise OutOfRangeError(f"bit {i} outside [0, {self._len})")

    def get_bit(self, i: int) -> int:
        self._check_position(i)
        return self._bits.read_bits(i, 1)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self._len
        return self.get_bit(i)

    def __iter__(self) -> Iterator[int]:
        raw = np.ascontiguousarray(self._bits.words, dtype="<u8").view(np.uint8)
        for bit in np.unpackbits(raw, bitorder="little")[: self._len]:
            yield int(bit)

    def rank(self, p: int) -> int:
        """Number of ones in positions [0, p)."""
        if not 0 <= p <= self._len:
            raise OutOfRangeError(f"rank position {p} outside [0, {self._len}]")
        block, offset = divmod(p, self.block_bits)
        count = self._tree.prefix(block)
        whole, rest = divmod(offset, W)
        if whole or rest:
            words = self._bits.words
            start = block * self.block_words
            if whole:
                count += int(np.bitwise_count(words[start : start + whole]).sum())
            if rest:
                count += nu(int(words[start + whole]) & ((1 << rest) - 1))
        return count

    def rank0(self, p: int) -> int:
        return p - self.rank(p)

    def select(self, k: int) -> int:
        """Position of the (k+1)-th one."""
        if not 0 <= k < self.count_ones():
            raise OutOfRangeError(f"select rank {k} outside [0, {self.count_ones()})")
        block, residual = self._tree.find(k)
        words = self._bits.words
        index = block * self.block_words
        while True:
            word = int(words[index])
            ones = nu(word)
            if residual < ones:
                return W * index + select_in_word(word, residual)
            residual -= ones
            index += 1

    def select0(self, k: int) -> int:
        """Position of the (k+1)-th zero."""
        if not 0 <= k < self.count_zeros():
            raise OutOfRangeError(f"select0 rank {k} outside [0, {self.count_zeros()})")
        block, residual = self._tree.find_complement(k)
        words = self._bits.words
        index = block * self.block_words
        while True:
            word = ~int(words[index]) & WORD_MASK
            zeros = nu(word)
            if residual < zeros:
                return W * index + select_in_word(word, residual)
            residual -= zeros
            index += 1

    # Updates

    def _write(self, i: int, bit: int) -> int:
        self._check_position(i)
        old = self._bits.read_bits(i, 1)
        if old != bit:
            self._bits.write_bits(i, 1, bit)
            self._tree.add(i // self.block_bits + 1, 1 if bit else -1)
        return old

    def set(self, i: int) -> None:
        self._write(i, 1)

    def clear(self, i: int) -> None:
        self._write(i, 0)

    def flip(self, i: int) -> int:
        """Invert bit i and return its previous value."""
        self._check_position(i)
        return self._write(i, 1 - self._bits.read_bits(i, 1))

    def set_bit(self, i: int, value: int) -> int:
        return self._write(i, 1 if value else 0)

    def push_bit(self, bit: int) -> None:
        i = self._len
        if i % self.block_bits == 0:
            self._bits.grow(self._bits.len_bits + self.block_bits)
            self._tree.push(0)
        self._len += 1
        if bit:
            self._bits.write_bits(i, 1, 1)
            self._tree.add(i // self.block_bits + 1, 1)

    def pop_bit(self) -> int:
        if self._len == 0:
            raise UnderflowError("pop from an empty bit vector")
        i = self._len - 1
        bit = self._bits.read_bits(i, 1)
        if bit:
            self._bits.write_bits(i, 1, 0)
            self._tree.add(i // self.block_bits + 1, -1)
        self._len = i
        if i % self.block_bits == 0:
            self._tree.pop()
            self._bits.truncate(self._bits.len_bits - self.block_bits)
        return bit

    def extend(self, bits: Iterable[int]) -> None:
        for bit in bits:
            self.push_bit(bit)

    # Accounting

    def check_leaves(self) -> None:
        """Recount every block and compare with the tree leaves."""
        nblocks = _blocks(self._len, self.block_bits)
        if len(self._tree) != nblocks:
            raise ContractError(
                f"tree holds {len(self._tree)} leaves for {nblocks} blocks"
            )
        words = self._bits.words.reshape(-1, self.block_words)
        counts = np.bitwise_count(words).sum(axis=1)
        for m, count in enumerate(counts[:nblocks], start=1):
            leaf = self._tree.get(m)
            if leaf != int(count):
                raise ContractError(
                    f"leaf {m} holds {leaf} but block has {int(count)} ones"
                )

    def payload_bits(self) -> int:
        return self._bits.len_bits

    def size_bits(self) -> int:
        """Payload (padded to whole blocks) plus the tree's storage."""
        return self._bits.len_bits + self._tree.size_bits()

    @staticmethod
    def storage_bits_for(
        n: int,
        block_words: int = DEFAULT_BLOCK_WORDS,
        variant: str = "byte[l]",
        hole_log: Optional[int] = HOLE_LOG,
    ) -> int:
        """size_bits() of an n-bit vector, computed without building it."""
        block_bits = W * block_words
        nblocks = _blocks(n, block_bits)
        tree_bits = storage_bits(variant, nblocks, block_bits, hole_log)
        return nblocks * block_bits + tree_bits

    # Persistence

    def save(self, path: Union[str, Path]) -> None:
        """Write a fixed header followed by the payload as little-endian words."""
        path = Path(path)
        words = np.ascontiguousarray(self._bits.words, dtype="<u8")
        header = HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            self.block_words,
            self._len,
            len(words),
            self.variant.encode("utf-8"),
        )
        with open(path, "wb") as f:
            f.write(header)
            f.write(words.tobytes())
        logger.debug(f"Saved {self!r} to {path}")

    @classmethod
    def load(
        cls, path: Union[str, Path], hole_log: Optional[int] = HOLE_LOG
    ) -> "DynBitVector":
        path = Path(path)
        data = path.read_bytes()
        if len(data) < HEADER.size:
            raise FormatError(f"{path}: truncated header")
        fields = HEADER.unpack_from(data)
        magic, version, block_words, len_bits, nwords, raw_tag = fields
        if magic != MAGIC:
            raise FormatError(f"{path}: bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise FormatError(f"{path}: unsupported format version {version}")
        if block_words < 1:
            raise FormatError(f"{path}: invalid block size {block_words}")
        expected = _blocks(len_bits, W * block_words) * block_words
        if nwords != expected:
            raise FormatError(f"{path}: {nwords} payload words, expected {expected}")
        payload = data[HEADER.size :]
        if len(payload) != 8 * nwords:
            raise FormatError(
                f"{path}: payload has {len(payload)} bytes, expected {8 * nwords}"
            )
        try:
            variant = normalize_tag(raw_tag.rstrip(b"\0").decode("utf-8"))
        except (UnicodeDecodeError, UsageError) as e:
            raise FormatError(f"{path}: bad backend tag: {e}") from e
        words = np.frombuffer(payload, dtype="<u8").astype(np.uint64)
        bv = cls.from_words(words, len_bits, block_words, variant, hole_log)
        logger.debug(f"Loaded {bv!r} from {path}")
        return bv

    def __repr__(self) -> str:
        return (
            f"DynBitVector(len={self._len}, block_words={self.block_words}, "
            f"variant={self.variant})"
        )
