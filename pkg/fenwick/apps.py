"""
Applications built on the Fenwick structures: transposition counting over a
permutation and preferential-attachment graph generation.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from .classical import HOLE_LOG
from .core import FenwickContract
from .dynbv import DEFAULT_BLOCK_WORDS, DynBitVector
from .errors import FormatError
from .registry import make_tree
from .utils.prng import SplitMix64

Edge = Tuple[int, int]


class Permutation(BaseModel):
    """A bijection of [0, n) given by its images"""

    mapping: List[int]

    @field_validator("mapping")
    @classmethod
    def _bijective(cls, v: List[int]) -> List[int]:
        n = len(v)
        seen = bytearray(n)
        for i, x in enumerate(v):
            if not 0 <= x < n:
                raise ValueError(f"image {x} at position {i} outside [0, {n})")
            if seen[x]:
                raise ValueError(f"image {x} repeated at position {i}")
            seen[x] = 1
        return v

    def __len__(self) -> int:
        return len(self.mapping)


def invert(pi: Permutation) -> Permutation:
    n = len(pi)
    inverse = np.empty(n, dtype=np.int64)
    inverse[np.asarray(pi.mapping, dtype=np.int64)] = np.arange(n, dtype=np.int64)
    return Permutation(mapping=inverse.tolist())


def count_transpositions(
    pi: Permutation,
    variant: str = "byte[l]",
    block_words: int = DEFAULT_BLOCK_WORDS,
    hole_log: Optional[int] = HOLE_LOG,
) -> int:
    """
    Number of adjacent transpositions sorting pi, i.e. its inversion count.

    Positions still holding a larger value are the ones left set in an
    all-ones bit vector; scanning the inverse, rank(x) counts them before x.
    """
    inverse = invert(pi).mapping
    bv = DynBitVector.ones(
        len(inverse), block_words=block_words, variant=variant, hole_log=hole_log
    )
    total = 0
    for x in inverse:
        total += bv.rank(x)
        bv.clear(x)
    return total


def inversions_merge(seq: Sequence[int]) -> int:
    """Inversion count by merge sort; reference for count_transpositions."""
    items = list(seq)
    buffer = items[:]
    inversions = 0
    width = 1
    n = len(items)
    while width < n:
        for left in range(0, n - width, 2 * width):
            mid = left + width
            right = min(left + 2 * width, n)
            i, j, k = left, mid, left
            while i < mid and j < right:
                if items[i] <= items[j]:
                    buffer[k] = items[i]
                    i += 1
                else:
                    buffer[k] = items[j]
                    j += 1
                    inversions += mid - i
                k += 1
            buffer[k : k + mid - i] = items[i:mid]
            k += mid - i
            buffer[k : k + right - j] = items[j:right]
            items[left:right] = buffer[left:right]
        width *= 2
    return inversions


def random_permutation(n: int, seed: int = 0) -> Permutation:
    mapping = list(range(n))
    SplitMix64(seed).shuffle(mapping)
    return Permutation(mapping=mapping)


def read_permutation(path: Union[str, Path]) -> Permutation:
    """Read one integer per line; blank lines are ignored."""
    path = Path(path)
    mapping = []
    with open(path, "r") as f:
        for lineno, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                mapping.append(int(text))
            except ValueError as e:
                raise FormatError(f"{path}:{lineno}: not an integer: {text!r}") from e
    return Permutation(mapping=mapping)


def write_permutation(pi: Permutation, path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        for x in pi.mapping:
            f.write(f"{x}\n")


class PAConfig(BaseModel):
    """
    Preferential attachment parameters: d0 seed vertices with a self-loop,
    then each new vertex attaches d edges until there are n vertices.
    """

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    d0: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=1 << 64)

    @model_validator(mode="after")
    def _ordered(self) -> "PAConfig":
        if not self.d <= self.d0 <= self.n:
            raise ValueError(
                f"need d <= d0 <= n, got d={self.d}, d0={self.d0}, n={self.n}"
            )
        return self

    @property
    def edge_count(self) -> int:
        return self.d0 + (self.n - self.d0) * self.d


@dataclass
class PAGraph:
    """Edges in generation order and the degree tree that produced them"""

    edges: List[Edge]
    degrees: FenwickContract

    @property
    def m(self) -> int:
        return len(self.edges)


def generate_pa(
    cfg: PAConfig, variant: str = "byte[l]", hole_log: Optional[int] = HOLE_LOG
) -> PAGraph:
    """
    Grow a preferential-attachment graph.

    Each target is drawn uniformly from [0, 2m) and mapped to a vertex with
    find on the degree tree, whose degree is bumped before the next draw.
    """
    degrees = make_tree(variant, 2 * cfg.d * cfg.n, hole_log)
    rng = SplitMix64(cfg.seed)
    edges: List[Edge] = []

    for v in range(cfg.d0):
        degrees.push(2)
        edges.append((v, v))
    m = cfg.d0

    for v in range(cfg.d0, cfg.n):
        for _ in range(cfg.d):
            target, _ = degrees.find(rng.below(2 * m))
            degrees.add(target + 1, 1)
            edges.append((v, target))
        degrees.push(cfg.d)
        m += cfg.d

    logger.debug(f"Generated {m} edges over {cfg.n} vertices with {degrees!r}")
    return PAGraph(edges=edges, degrees=degrees)


def write_edges(edges: Sequence[Edge], path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        for u, v in edges:
            f.write(f"{u} {v}\n")


def edge_degrees(edges: Sequence[Edge], n: int) -> np.ndarray:
    """Degrees recomputed from an edge list; a self-loop counts twice."""
    ends = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return np.bincount(ends.ravel(), minlength=n)


class DegreeReport(BaseModel):
    vertices: int
    edges: int
    max_degree: int
    mean_degree: float
    tail_slope: Optional[float] = None


def degree_report(graph: PAGraph) -> DegreeReport:
    """
    Summary of the degree distribution, with the slope of the log-log
    frequency plot over degrees that occur more than once.
    """
    degrees = np.asarray(graph.degrees.values(), dtype=np.int64)
    counts = np.bincount(degrees)
    ks = np.nonzero(counts > 1)[0]
    ks = ks[ks > 0]
    slope = None
    if len(ks) >= 2:
        slope = float(np.polyfit(np.log(ks), np.log(counts[ks]), 1)[0])
    return DegreeReport(
        vertices=len(degrees),
        edges=graph.m,
        max_degree=int(degrees.max()) if len(degrees) else 0,
        mean_degree=float(degrees.mean()) if len(degrees) else 0.0,
        tail_slope=slope,
    )
