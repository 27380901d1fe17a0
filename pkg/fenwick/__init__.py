"""
Compact Fenwick trees package
"""

from .classical import BitFenwickTree, ByteFenwickTree, FixedFenwickTree
from .core import FenwickContract, FenwickTree, FindResult
from .dynbv import DynBitVector
from .errors import (
    ContractError,
    DomainError,
    FenwickError,
    FormatError,
    OutOfRangeError,
    OutputError,
    RangeError,
    UnderflowError,
    UsageError,
)
from .level import BitLevelTree, ByteLevelTree, FixedLevelTree
from .oracle import NaiveFenwick
from .registry import VARIANTS, make_tree

__all__ = [
    "FenwickContract",
    "FenwickTree",
    "FindResult",
    "FixedFenwickTree",
    "ByteFenwickTree",
    "BitFenwickTree",
    "FixedLevelTree",
    "ByteLevelTree",
    "BitLevelTree",
    "NaiveFenwick",
    "DynBitVector",
    "VARIANTS",
    "make_tree",
    "FenwickError",
    "RangeError",
    "OutOfRangeError",
    "UnderflowError",
    "ContractError",
    "DomainError",
    "FormatError",
    "UsageError",
    "OutputError",
]
