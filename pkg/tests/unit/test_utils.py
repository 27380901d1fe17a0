#!/usr/bin/env python3
"""
Common helpers for the unit tests: a random operation driver for Fenwick
trees and a naive bit-vector oracle.
"""

import random

import numpy as np

from fenwick.core import FenwickContract
from fenwick.oracle import NaiveFenwick

TREE_OPS = ("prefix", "find", "find_complement", "add", "get", "set", "push", "pop")


def random_values(rng: random.Random, n: int, bound: int):
    """n values in [0, bound], biased towards the extremes."""
    values = []
    for _ in range(n):
        r = rng.random()
        if r < 0.2:
            values.append(0)
        elif r < 0.35:
            values.append(bound)
        else:
            values.append(rng.randint(0, bound))
    return values


def random_size(rng: random.Random, limit: int = 2048) -> int:
    r = rng.random()
    if r < 0.1:
        return rng.randint(0, 3)
    if r < 0.9:
        return rng.randint(0, 64)
    return rng.randint(0, limit)


def run_random_ops(
    tree: FenwickContract, oracle: NaiveFenwick, rng: random.Random, steps: int
) -> None:
    """Apply the same random operations to tree and oracle, comparing results."""
    bound = oracle.bound
    for _ in range(steps):
        op = rng.choice(TREE_OPS)
        n = len(oracle)
        if op == "prefix":
            p = rng.randint(0, n)
            assert tree.prefix(p) == oracle.prefix(p), (op, p)
        elif op == "find":
            x = rng.randint(0, oracle.total() + bound)
            assert tree.find(x) == oracle.find(x), (op, x)
        elif op == "find_complement":
            x = rng.randint(0, bound * n - oracle.total() + bound)
            assert tree.find_complement(x) == oracle.find_complement(x), (op, x)
        elif op in ("add", "set", "get") and n == 0:
            continue
        elif op == "add":
            j = rng.randint(1, n)
            delta = rng.randint(0, bound) - oracle.get(j)
            tree.add(j, delta)
            oracle.add(j, delta)
        elif op == "set":
            j = rng.randint(1, n)
            value = rng.randint(0, bound)
            tree.set(j, value)
            oracle.set(j, value)
        elif op == "get":
            j = rng.randint(1, n)
            assert tree.get(j) == oracle.get(j), (op, j)
        elif op == "push":
            value = rng.randint(0, bound)
            tree.push(value)
            oracle.push(value)
        elif op == "pop" and n > 0:
            tree.pop()
            oracle.pop()
        assert len(tree) == len(oracle)
    assert tree.values() == oracle.values()
    assert tree.total() == oracle.total()


class NaiveBitVector:
    """Bit list answering every query by recounting"""

    def __init__(self, bits=()):
        self.bits = np.array(list(bits), dtype=np.int64)

    def __len__(self):
        return len(self.bits)

    def rank(self, p):
        return int(self.bits[:p].sum())

    def rank0(self, p):
        return p - self.rank(p)

    def select(self, k):
        return int(np.flatnonzero(self.bits)[k])

    def select0(self, k):
        return int(np.flatnonzero(self.bits == 0)[k])

    def count_ones(self):
        return int(self.bits.sum())

    def get_bit(self, i):
        return int(self.bits[i])

    def set_bit(self, i, value):
        old = int(self.bits[i])
        self.bits[i] = value
        return old

    def push_bit(self, bit):
        self.bits = np.append(self.bits, bit)

    def pop_bit(self):
        bit = int(self.bits[-1])
        self.bits = self.bits[:-1]
        return bit


def random_bits(rng: random.Random, n: int, density: float = 0.5):
    return [1 if rng.random() < density else 0 for _ in range(n)]
