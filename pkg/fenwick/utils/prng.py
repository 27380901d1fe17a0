"""SplitMix64, the seeded generator behind every randomized command."""

from typing import List, MutableSequence

WORD_MASK = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """
    Deterministic 64-bit generator; identical seeds give identical streams on
    every platform.

    Args:
        seed: Initial state, reduced modulo 2^64
    """

    def __init__(self, seed: int = 0):
        self.state = seed & WORD_MASK

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & WORD_MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & WORD_MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & WORD_MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw in [0, bound) by 128-bit multiply-shift."""
        if bound < 1:
            raise ValueError(f"bound must be positive, got {bound}")
        return (self.next() * bound) >> 64

    def bit(self) -> int:
        return self.next() >> 63

    def words(self, count: int) -> List[int]:
        return [self.next() for _ in range(count)]

    def shuffle(self, items: MutableSequence) -> None:
        """Fisher-Yates shuffle in place, from the top down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
