"""
Fenwick trees in classical (Fenwick) order.

Node j is stored at a position computed from j alone: word j for the
fixed-width tree, a byte offset from a three-size scheme for the
byte-compressed tree, and a bit offset of j(S+1) - nu(j) - (S + rho(j)) + 1
for the bit-compressed tree. Every 2^hole_log nodes a 64-bit hole is
inserted so that frequently accessed nodes do not all map to the same
cache set.

Deployment note: on Linux large trees benefit from transparent huge pages
(``echo always > /sys/kernel/mm/transparent_hugepage/enabled``), which cut
TLB misses on the long strides of the update and search trees.
"""

from typing import Optional, Tuple

from loguru import logger

from .bitops import W, nu, rho
from .bitstore import BitStore
from .core import FenwickTree, bound_width
from .errors import ContractError

HOLE_LOG = 14

# A bit-compressed field must be readable with one unaligned word access.
MAX_BIT_WIDTH = W - 9


def holes_before(j: int, hole_log: Optional[int]) -> int:
    """Number of holes preceding node j; hole_log None disables holes."""
    if hole_log is None:
        return 0
    return j >> hole_log


def bit_field(
    j: int, width: int, hole_log: Optional[int] = HOLE_LOG
) -> Tuple[int, int]:
    """Start bit and width of node j in a bit-compressed tree with leaf width S."""
    size = width + rho(j)
    start = j * (width + 1) - nu(j) - size + 1 + W * holes_before(j, hole_log)
    return start, size


def bit_storage(n: int, width: int, hole_log: Optional[int] = HOLE_LOG) -> int:
    """Bits used by n bit-compressed nodes, before word rounding."""
    if n == 0:
        return 0
    return n * (width + 1) - nu(n) + 1 + W * holes_before(n, hole_log)


def byte_tiers(width: int) -> Tuple[int, int, int, int]:
    """(s0, s1, s2, d): the three node sizes in bytes and the slack d = 8b - S."""
    b = (width + 7) // 8
    d = 8 * b - width
    return min(b, W // 8), min(b + 1, W // 8), W // 8, d


def byte_field(
    j: int, width: int, hole_log: Optional[int] = HOLE_LOG
) -> Tuple[int, int]:
    """Byte offset and byte size of node j in a byte-compressed tree."""
    s0, s1, s2, d = byte_tiers(width)
    r = rho(j)
    if r <= d:
        size = s0
    elif r <= d + 8:
        size = s1
    else:
        size = s2
    m = j - 1
    offset = (
        m * s0
        + (m >> (d + 1)) * (s1 - s0)
        + (m >> (d + 9)) * (s2 - s1)
        + (W // 8) * holes_before(m, hole_log)
    )
    return offset, size


def byte_storage(n: int, width: int, hole_log: Optional[int] = HOLE_LOG) -> int:
    """Bytes used by n byte-compressed nodes."""
    if n == 0:
        return 0
    offset, _ = byte_field(n + 1, width, hole_log)
    return offset


def fixed_storage(n: int, hole_log: Optional[int] = HOLE_LOG) -> int:
    """Words used by n fixed-width nodes, including the unused word 0."""
    if n == 0:
        return 0
    return n + 1 + holes_before(n, hole_log)


class ClassicalTree(FenwickTree):
    """Classical-layout tree over a single BitStore"""

    def __init__(self, bound: int, hole_log: Optional[int] = HOLE_LOG):
        super().__init__(bound)
        if hole_log is not None and hole_log < 1:
            raise ContractError(f"hole interval exponent {hole_log} must be positive")
        self.hole_log = hole_log
        self._store = BitStore()

    def size_bits(self) -> int:
        return self._store.len_bits

    def _resize_store(self, len_bits: int) -> None:
        before = self._store.capacity_words
        self._store.resize(len_bits)
        if self._store.capacity_words != before:
            logger.debug(f"{type(self).__name__} storage now {self._store!r}")


class FixedFenwickTree(ClassicalTree):
    """One 64-bit word per node; node j lives in word j + (j >> hole_log)."""

    tag = "fixed[F]"

    def _node(self, j: int) -> int:
        return self._store.read_word(j + holes_before(j, self.hole_log))

    def _set_node(self, j: int, value: int) -> None:
        if __debug__ and value >> W:
            raise ContractError(f"partial sum {value} at node {j} exceeds a word")
        self._store.write_word(j + holes_before(j, self.hole_log), value)

    def _resize(self, n: int) -> None:
        self._check_growth(n)
        self._resize_store(W * fixed_storage(n, self.hole_log))

    @staticmethod
    def storage_bits_for(n: int, bound: int, hole_log: Optional[int] = HOLE_LOG) -> int:
        return W * fixed_storage(n, hole_log)


class ByteFenwickTree(ClassicalTree):
    """
    Byte-compressed tree with three node sizes: b bytes when S + rho(j) fits,
    b + 1 bytes for the next eight levels, a full word above.
    """

    tag = "byte[F]"

    def __init__(self, bound: int, hole_log: Optional[int] = HOLE_LOG):
        super().__init__(bound, hole_log)
        self.s0, self.s1, self.s2, self.slack = byte_tiers(self.width)

    def byte_field(self, j: int) -> Tuple[int, int]:
        return byte_field(j, self.width, self.hole_log)

    def _node(self, j: int) -> int:
        offset, size = byte_field(j, self.width, self.hole_log)
        return self._store.read_bits(8 * offset, 8 * size)

    def _set_node(self, j: int, value: int) -> None:
        offset, size = byte_field(j, self.width, self.hole_log)
        if __debug__ and value >> (8 * size):
            raise ContractError(f"partial sum {value} at node {j} exceeds {size} bytes")
        self._store.write_bits(8 * offset, 8 * size, value)

    def _resize(self, n: int) -> None:
        self._check_growth(n)
        self._resize_store(8 * byte_storage(n, self.width, self.hole_log))

    @staticmethod
    def storage_bits_for(n: int, bound: int, hole_log: Optional[int] = HOLE_LOG) -> int:
        return 8 * byte_storage(n, bound_width(bound), hole_log)


class BitFenwickTree(ClassicalTree):
    """
    Bit-compressed tree: node j takes S + rho(j) bits, laid out consecutively
    after one unused bit. The unused bit makes node j word-aligned-readable
    whenever j(S+1) is a multiple of 64.
    """

    tag = "bit[F]"

    def __init__(self, bound: int, hole_log: Optional[int] = HOLE_LOG):
        if bound >= (1 << MAX_BIT_WIDTH) - 1:
            raise ContractError(
                f"bit-compressed trees need S <= {MAX_BIT_WIDTH}; "
                f"bound {bound} is too large"
            )
        super().__init__(bound, hole_log)

    def bit_field(self, j: int) -> Tuple[int, int]:
        return bit_field(j, self.width, self.hole_log)

    def _node(self, j: int) -> int:
        start, size = bit_field(j, self.width, self.hole_log)
        if j * (self.width + 1) % W == 0:
            return self._store.read_bits_aligned(start, size)
        return self._store.read_bits(start, size)

    def _set_node(self, j: int, value: int) -> None:
        start, size = bit_field(j, self.width, self.hole_log)
        if __debug__ and value >> size:
            raise ContractError(f"partial sum {value} at node {j} exceeds {size} bits")
        self._store.write_bits(start, size, value)

    def _resize(self, n: int) -> None:
        self._check_growth(n)
        self._resize_store(bit_storage(n, self.width, self.hole_log))

    @staticmethod
    def storage_bits_for(n: int, bound: int, hole_log: Optional[int] = HOLE_LOG) -> int:
        return bit_storage(n, bound_width(bound), hole_log)
