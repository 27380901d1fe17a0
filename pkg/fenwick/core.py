"""
Layout-independent Fenwick machinery.

A Fenwick tree represents a list v_1..v_n of naturals bounded by B through
partial sums f_j = v_(j - 2^rho(j)) + 1 + ... + v_j. Three implicit trees
share those nodes: the search tree (a sideways heap) drives ``find``, the
interrogation tree (parent ``j & (j - 1)``) drives ``prefix`` and the
update tree (parent ``j + (j & -j)``) drives ``add``.
"""

import math
from abc import ABC, abstractmethod
from typing import ClassVar, Iterable, List, NamedTuple, Optional

from loguru import logger

from .bitops import W, lambda_
from .errors import ContractError, OutOfRangeError, RangeError, UnderflowError


class FindResult(NamedTuple):
    """Longest prefix length p satisfying a find, and the residual excess"""

    p: int
    excess: int


# Implicit tree relations


def interrogation_parent(j: int) -> int:
    return j & (j - 1)


def update_parent(j: int) -> int:
    return j + (j & -j)


def search_parent(j: int) -> int:
    """Parent of j in the sideways heap."""
    return (j & (j - 1)) | ((j & -j) << 1)


def search_children(j: int) -> Optional[tuple]:
    """Left and right children of j in the sideways heap; None for leaves."""
    half = (j & -j) >> 1
    if half == 0:
        return None
    return j - half, j + half


def interrogation_path(j: int) -> List[int]:
    """Nodes visited bottom-up by prefix(j), excluding the root 0."""
    nodes = []
    while j:
        nodes.append(j)
        j &= j - 1
    return nodes


def update_path(j: int, n: int) -> List[int]:
    """Nodes visited bottom-up by add(j, .) on a tree of n nodes."""
    if not 1 <= j <= n:
        raise OutOfRangeError(f"node {j} outside [1, {n}]")
    nodes = []
    while j <= n:
        nodes.append(j)
        j += j & -j
    return nodes


def interrogation_path_topdown(p: int) -> List[int]:
    """Interrogation path from the root towards p: adds p's bits high to low."""
    if p < 1:
        raise OutOfRangeError(f"node {p} must be positive")
    nodes = []
    j = 0
    while j != p:
        j |= 1 << lambda_(j ^ p)
        nodes.append(j)
    return nodes


def update_path_topdown(p: int, n: int) -> List[int]:
    """
    Update path from its topmost node down to p.

    The scan runs on negated indices, where the update tree becomes the
    interrogation tree; each step clears the highest differing bit.
    """
    if not 1 <= p <= n:
        raise OutOfRangeError(f"node {p} outside [1, {n}]")
    diff = n ^ (p & (p - 1))
    j = n & (-1 << lambda_(diff)) if diff else p
    nodes = [j]
    while j != p:
        j = -(-j ^ (1 << lambda_(-j ^ -p)))
        nodes.append(j)
    return nodes


class FenwickContract(ABC):
    """Operations every Fenwick representation provides"""

    tag: ClassVar[str] = ""

    bound: int

    @abstractmethod
    def __len__(self) -> int: ...

    @abstractmethod
    def prefix(self, p: int) -> int: ...

    @abstractmethod
    def find(self, x: int) -> FindResult: ...

    @abstractmethod
    def find_complement(self, x: int) -> FindResult: ...

    @abstractmethod
    def add(self, j: int, delta: int) -> None: ...

    @abstractmethod
    def get(self, j: int) -> int: ...

    @abstractmethod
    def push(self, value: int) -> None: ...

    @abstractmethod
    def pop(self) -> None: ...

    @abstractmethod
    def size_bits(self) -> int:
        """Bits of storage the representation occupies"""

    def total(self) -> int:
        return self.prefix(len(self))

    def set(self, j: int, value: int) -> None:
        self.add(j, value - self.get(j))

    def values(self) -> List[int]:
        return [self.get(j) for j in range(1, len(self) + 1)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self)}, bound={self.bound})"


def bound_width(bound: int) -> int:
    """S = ceil(lg(B + 1)), the bits needed by a leaf."""
    return bound.bit_length()


def info_bound_bits(n: int, bound: int) -> int:
    """ceil(n * lg(B + 1)), the information-theoretic size of n values in [0, B]."""
    return math.ceil(n * math.log2(bound + 1))


class FenwickTree(FenwickContract):
    """
    Fenwick algorithms written against abstract node storage.

    Subclasses choose where node j lives (``_node``/``_set_node``) and how
    storage tracks the node count (``_resize``); every query and update is
    shared.
    """

    def __init__(self, bound: int):
        if not 1 <= bound <= (1 << W) - 1:
            raise ContractError(f"bound {bound} outside [1, 2^{W})")
        self.bound = bound
        self.width = bound_width(bound)
        self._n = 0

    @abstractmethod
    def _node(self, j: int) -> int:
        """Partial sum stored at node j."""

    @abstractmethod
    def _set_node(self, j: int, value: int) -> None:
        """Overwrite the partial sum of node j."""

    @abstractmethod
    def _resize(self, n: int) -> None:
        """Make storage hold exactly nodes 1..n."""

    @classmethod
    def from_values(cls, values: Iterable[int], bound: int, **options) -> "FenwickTree":
        """Build a tree over values in linear time."""
        tree = cls(bound, **options)
        sums = list(values)
        for i, v in enumerate(sums):
            if not 0 <= v <= bound:
                raise ContractError(f"value {v} at {i + 1} outside [0, {bound}]")
        n = len(sums)
        for j in range(1, n + 1):
            parent = j + (j & -j)
            if parent <= n:
                sums[parent - 1] += sums[j - 1]
        tree._resize(n)
        tree._n = n
        for j in range(1, n + 1):
            tree._set_node(j, sums[j - 1])
        logger.debug(f"Built {tree!r} from values")
        return tree

    @classmethod
    def zeros(cls, n: int, bound: int, **options) -> "FenwickTree":
        """A tree of n zero values; storage is allocated but never written."""
        tree = cls(bound, **options)
        tree._resize(n)
        tree._n = n
        return tree

    def __len__(self) -> int:
        return self._n

    def _check_node(self, j: int) -> None:
        if not 1 <= j <= self._n:
            raise OutOfRangeError(f"index {j} outside [1, {self._n}]")

    def prefix(self, p: int) -> int:
        if not 0 <= p <= self._n:
            raise OutOfRangeError(f"prefix length {p} outside [0, {self._n}]")
        total = 0
        while p:
            total += self._node(p)
            p &= p - 1
        return total

    def find(self, x: int) -> FindResult:
        if x < 0:
            raise RangeError(f"find argument {x} is negative")
        n = self._n
        p = 0
        if n == 0:
            return FindResult(0, x)
        q = 1 << lambda_(n)
        while q:
            if p + q <= n:
                m = self._node(p + q)
                if x >= m:
                    p += q
                    x -= m
            q >>= 1
        return FindResult(p, x)

    def find_complement(self, x: int) -> FindResult:
        if x < 0:
            raise RangeError(f"find argument {x} is negative")
        n = self._n
        bound = self.bound
        p = 0
        if n == 0:
            return FindResult(0, x)
        q = 1 << lambda_(n)
        while q:
            if p + q <= n:
                # rho(p + q) == lg q because p is a multiple of 2q
                m = bound * q - self._node(p + q)
                if x >= m:
                    p += q
                    x -= m
            q >>= 1
        return FindResult(p, x)

    def find_path(self, x: int) -> List[int]:
        """Nodes visited by find(x), root first."""
        n = self._n
        p = 0
        visited = []
        if n == 0:
            return visited
        q = 1 << lambda_(n)
        while q:
            if p + q <= n:
                visited.append(p + q)
                m = self._node(p + q)
                if x >= m:
                    p += q
                    x -= m
            q >>= 1
        return visited

    def add(self, j: int, delta: int) -> None:
        self._check_node(j)
        if __debug__:
            value = self.get(j) + delta
            if not 0 <= value <= self.bound:
                raise ContractError(
                    f"add({j}, {delta}) would set value {value} "
                    f"outside [0, {self.bound}]"
                )
        n = self._n
        while j <= n:
            self._set_node(j, self._node(j) + delta)
            j += j & -j

    def get(self, j: int) -> int:
        self._check_node(j)
        value = self._node(j)
        stop = j & (j - 1)
        j -= 1
        while j != stop:
            value -= self._node(j)
            j &= j - 1
        return value

    def push(self, value: int) -> None:
        if not 0 <= value <= self.bound:
            raise ContractError(f"pushed value {value} outside [0, {self.bound}]")
        n = self._n + 1
        self._resize(n)
        self._n = n
        total = value
        m = n - 1
        stop = n & (n - 1)
        while m > stop:
            total += self._node(m)
            m &= m - 1
        self._set_node(n, total)

    def pop(self) -> None:
        if self._n == 0:
            raise UnderflowError("pop from an empty tree")
        # parents in the update tree are larger, so no stored sum changes
        self._n -= 1
        self._resize(self._n)

    def check_capacity(self, n: int, field_width: int) -> None:
        if field_width > W:
            raise ContractError(
                f"{type(self).__name__} with bound {self.bound} cannot hold {n} "
                f"nodes: partial sums need {field_width} > {W} bits"
            )

    def _check_growth(self, n: int) -> None:
        """Partial sums of n nodes reach S + lambda(n) bits; refuse wider ones."""
        if n:
            self.check_capacity(n, self.width + lambda_(n))
