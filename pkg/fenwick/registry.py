"""Variant tags (``bit[l]``, ``byte[F]``, ...) and tree construction by tag."""

from typing import Dict, Iterable, List, Optional, Type

from .classical import (
    HOLE_LOG,
    BitFenwickTree,
    ByteFenwickTree,
    ClassicalTree,
    FixedFenwickTree,
)
from .core import FenwickContract
from .errors import UsageError
from .level import BitLevelTree, ByteLevelTree, FixedLevelTree
from .oracle import NaiveFenwick

VARIANTS: Dict[str, Type[FenwickContract]] = {
    cls.tag: cls
    for cls in (
        BitLevelTree,
        ByteLevelTree,
        FixedLevelTree,
        BitFenwickTree,
        ByteFenwickTree,
        FixedFenwickTree,
    )
}

# The six layouts benchmarked and tested; the oracle is selectable but not listed.
TREE_VARIANTS: List[str] = list(VARIANTS)

VARIANTS[NaiveFenwick.tag] = NaiveFenwick


def normalize_tag(tag: str) -> str:
    """Canonical spelling of a tag; ``ℓ`` and upper-case ``L`` mean level order."""
    canonical = tag.strip().replace("ℓ", "l")
    canonical = canonical.replace("[L]", "[l]").replace("[f]", "[F]")
    if canonical not in VARIANTS:
        known = ", ".join(VARIANTS)
        raise UsageError(f"Unknown variant '{tag}'. Known variants: {known}")
    return canonical


def variant_class(tag: str) -> Type[FenwickContract]:
    return VARIANTS[normalize_tag(tag)]


def _options(cls: Type[FenwickContract], hole_log: Optional[int]) -> dict:
    if issubclass(cls, ClassicalTree):
        return {"hole_log": hole_log}
    return {}


def make_tree(
    tag: str, bound: int, hole_log: Optional[int] = HOLE_LOG
) -> FenwickContract:
    """An empty tree of the given variant; hole_log only affects classical layouts."""
    cls = variant_class(tag)
    if cls is NaiveFenwick:
        return NaiveFenwick(bound)
    return cls(bound, **_options(cls, hole_log))


def tree_from_values(
    tag: str, values: Iterable[int], bound: int, hole_log: Optional[int] = HOLE_LOG
) -> FenwickContract:
    cls = variant_class(tag)
    return cls.from_values(values, bound, **_options(cls, hole_log))


def tree_zeros(
    tag: str, n: int, bound: int, hole_log: Optional[int] = HOLE_LOG
) -> FenwickContract:
    cls = variant_class(tag)
    return cls.zeros(n, bound, **_options(cls, hole_log))


def storage_bits(
    tag: str, n: int, bound: int, hole_log: Optional[int] = HOLE_LOG
) -> int:
    """Bits a tree of n elements would occupy, computed without building it."""
    cls = variant_class(tag)
    if cls is NaiveFenwick:
        return 64 * n
    return cls.storage_bits_for(n, bound, hole_log)


def parse_tags(spec: str) -> List[str]:
    """Split a comma-separated tag list; ``all`` selects every tree layout."""
    tags = [t for t in (part.strip() for part in spec.split(",")) if t]
    if not tags:
        raise UsageError("Empty variant list")
    if tags == ["all"]:
        return list(TREE_VARIANTS)
    return [normalize_tag(t) for t in tags]
