"""
Fenwick trees in level order.

Node j sits on level rho(j) at position j >> (1 + rho(j)); each level is a
separate array. Searches then move from one level to the next while
roughly doubling the in-level index, so consecutive reads land close to
each other and the low levels, which hold half the nodes, are touched
last.
"""

from abc import abstractmethod
from typing import List, NamedTuple, Optional

from loguru import logger

from .bitops import W, rho
from .bitstore import BitStore
from .core import FenwickTree, bound_width
from .errors import ContractError, OutOfRangeError


class LevelPos(NamedTuple):
    level: int
    index: int


def to_level(j: int) -> LevelPos:
    if j < 1:
        raise OutOfRangeError(f"node {j} must be positive")
    r = rho(j)
    return LevelPos(r, j >> (1 + r))


def from_level(level: int, index: int) -> int:
    return ((index << 1) | 1) << level


def level_count(n: int) -> int:
    """Number of nonempty levels in a tree of n nodes."""
    return n.bit_length()


def level_size(n: int, level: int) -> int:
    """Nodes of a tree of n nodes living on the given level."""
    return ((n >> level) + 1) >> 1


def level_parent_interrogation(pos: LevelPos) -> Optional[LevelPos]:
    """Interrogation parent of a level position; None when it is the root 0."""
    level, k = pos
    if k == 0:
        return None
    r = rho(k)
    return LevelPos(level + 1 + r, k >> (1 + r))


def level_parent_update(pos: LevelPos, n: Optional[int] = None) -> Optional[LevelPos]:
    """Update parent of a level position; None when it falls beyond n."""
    level, k = pos
    r = rho(~k)
    parent = LevelPos(level + 1 + r, k >> (1 + r))
    if n is not None and from_level(*parent) > n:
        return None
    return parent


def level_children(pos: LevelPos) -> Optional[tuple]:
    """Search-tree children; None on level 0."""
    level, k = pos
    if level == 0:
        return None
    return LevelPos(level - 1, 2 * k), LevelPos(level - 1, 2 * k + 1)


class LevelTree(FenwickTree):
    """Level-ordered tree: one BitStore per level, nodes of a level share a width"""

    def __init__(self, bound: int):
        super().__init__(bound)
        self._levels: List[BitStore] = []

    @staticmethod
    @abstractmethod
    def level_width(width: int, level: int) -> int:
        """Bits of a node on the given level for leaf width S."""

    def node_width(self, level: int) -> int:
        return self.level_width(self.width, level)

    def _node(self, j: int) -> int:
        r = rho(j)
        width = self.node_width(r)
        return self._levels[r].read_bits((j >> (1 + r)) * width, width)

    def _set_node(self, j: int, value: int) -> None:
        r = rho(j)
        width = self.node_width(r)
        if __debug__ and value >> width:
            raise ContractError(f"partial sum {value} at node {j} exceeds {width} bits")
        self._levels[r].write_bits((j >> (1 + r)) * width, width, value)

    def _resize(self, n: int) -> None:
        self._check_growth(n)
        levels = level_count(n)
        while len(self._levels) < levels:
            self._levels.append(BitStore())
            logger.trace(f"{type(self).__name__} opened level {len(self._levels) - 1}")
        del self._levels[levels:]
        for level, store in enumerate(self._levels):
            store.resize(level_size(n, level) * self.node_width(level))

    def level_sizes(self) -> List[int]:
        return [level_size(self._n, level) for level in range(len(self._levels))]

    def size_bits(self) -> int:
        return sum(store.len_bits for store in self._levels)

    @classmethod
    def storage_bits_for(
        cls, n: int, bound: int, hole_log: Optional[int] = None
    ) -> int:
        width = bound_width(bound)
        return sum(
            level_size(n, level) * cls.level_width(width, level)
            for level in range(level_count(n))
        )


class FixedLevelTree(LevelTree):
    tag = "fixed[l]"

    @staticmethod
    def level_width(width: int, level: int) -> int:
        return W


class ByteLevelTree(LevelTree):
    """Level l nodes take ceil((S + l) / 8) bytes, capped at a word."""

    tag = "byte[l]"

    @staticmethod
    def level_width(width: int, level: int) -> int:
        return 8 * min((width + level + 7) // 8, W // 8)


class BitLevelTree(LevelTree):
    """Level l nodes take exactly S + l bits."""

    tag = "bit[l]"

    @staticmethod
    def level_width(width: int, level: int) -> int:
        return width + level


def level_trace(tree: FenwickTree, x: int) -> List[LevelPos]:
    """Level positions visited by tree.find(x), root first."""
    return [to_level(j) for j in tree.find_path(x)]
