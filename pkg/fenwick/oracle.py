"""Naive list-backed reference for the Fenwick contract."""

from typing import Iterable, List

from .core import FenwickContract, FindResult
from .errors import ContractError, OutOfRangeError, RangeError, UnderflowError


class NaiveFenwick(FenwickContract):
    """
    Stores the plain value list and answers every query by scanning.

    Always checks bounds; it is the source of truth for property tests.
    """

    tag = "naive"

    def __init__(self, bound: int, values: Iterable[int] = ()):
        if bound < 1:
            raise ContractError(f"bound {bound} must be positive")
        self.bound = bound
        self._values: List[int] = []
        for v in values:
            self.push(v)

    @classmethod
    def from_values(
        cls, values: Iterable[int], bound: int, **options
    ) -> "NaiveFenwick":
        return cls(bound, values)

    @classmethod
    def zeros(cls, n: int, bound: int, **options) -> "NaiveFenwick":
        return cls(bound, [0] * n)

    def __len__(self) -> int:
        return len(self._values)

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= len(self._values):
            raise OutOfRangeError(f"index {j} outside [1, {len(self._values)}]")

    def prefix(self, p: int) -> int:
        if not 0 <= p <= len(self._values):
            raise OutOfRangeError(f"prefix length {p} outside [0, {len(self._values)}]")
        return sum(self._values[:p])

    def find(self, x: int) -> FindResult:
        if x < 0:
            raise RangeError(f"find argument {x} is negative")
        p, s = 0, 0
        for v in self._values:
            if s + v > x:
                break
            s += v
            p += 1
        return FindResult(p, x - s)

    def find_complement(self, x: int) -> FindResult:
        if x < 0:
            raise RangeError(f"find argument {x} is negative")
        p, s = 0, 0
        for v in self._values:
            if s + self.bound - v > x:
                break
            s += self.bound - v
            p += 1
        return FindResult(p, x - s)

    def add(self, j: int, delta: int) -> None:
        self._check_index(j)
        value = self._values[j - 1] + delta
        if not 0 <= value <= self.bound:
            raise ContractError(
                f"add({j}, {delta}) would set value {value} outside [0, {self.bound}]"
            )
        self._values[j - 1] = value

    def get(self, j: int) -> int:
        self._check_index(j)
        return self._values[j - 1]

    def push(self, value: int) -> None:
        if not 0 <= value <= self.bound:
            raise ContractError(f"pushed value {value} outside [0, {self.bound}]")
        self._values.append(value)

    def pop(self) -> None:
        if not self._values:
            raise UnderflowError("pop from an empty list")
        self._values.pop()

    def values(self) -> List[int]:
        return list(self._values)

    def size_bits(self) -> int:
        return 64 * len(self._values)
