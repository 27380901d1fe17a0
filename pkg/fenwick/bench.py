"""
Benchmark harness: ns/op of tree and bit-vector primitives.

Every timed call takes an argument derived from a pre-generated random
value xor-ed with the lowest bit of the previous result, so calls cannot
overlap or be hoisted; results are accumulated into a sink that is
returned to the caller.
"""

import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import pandas as pd
from loguru import logger
from pydantic import BaseModel, Field, field_validator

from .classical import HOLE_LOG, ClassicalTree
from .core import FenwickContract, info_bound_bits
from .dynbv import DEFAULT_BLOCK_WORDS, DynBitVector
from .errors import FormatError, OutputError, UsageError
from .registry import normalize_tag, storage_bits, tree_from_values, variant_class
from .utils.prng import SplitMix64

Target = Literal["fenwick", "bitvec"]

FENWICK_OPS = ("prefix", "find", "find_complement", "add", "get")
BITVEC_OPS = ("rank", "rank0", "select", "select0", "update", "get")
DEFAULT_OPS: Dict[str, Tuple[str, ...]] = {
    "fenwick": ("prefix", "find", "add"),
    "bitvec": ("rank", "select", "update"),
}

LADDER = (10, 26)
LARGE_SIZES = [10**9, 10**10, 10**11]
NOHOLES_SUFFIX = "-noholes"
CSV_COLUMNS = ["variant", "op", "n", "block_words", "ns_per_op"]


class BenchConfig(BaseModel):
    """One bench run: every size x variant x op combination is measured"""

    target: Target = "fenwick"
    variants: List[str] = Field(min_length=1)
    ops: List[str] = Field(min_length=1)
    sizes: List[int] = Field(min_length=1)
    queries: int = Field(default=100_000, ge=1)
    bound: int = Field(default=64, ge=1, lt=1 << 64)
    block_words: int = Field(default=DEFAULT_BLOCK_WORDS, ge=1)
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    hole_log: Optional[int] = Field(default=HOLE_LOG, ge=1)
    compare_holes: bool = False
    sink: bool = True

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError(f"sizes must be positive, got {v}")
        return v


class BenchRecord(BaseModel):
    variant: str
    op: str
    n: int = Field(ge=1)
    block_words: int = Field(ge=1)
    ns_per_op: float = Field(gt=0)


@dataclass
class BenchCase:
    """A populated structure, the operation under test and its argument stream"""

    variant: str
    op: str
    n: int
    func: Callable[[int], int]
    modulus: int
    offset: int
    arguments: List[int]

    def argument(self, raw: int, previous: int) -> int:
        return (raw ^ (previous & 1)) % self.modulus + self.offset


def parse_sizes(spec: str) -> List[int]:
    """
    Parse a size list: comma-separated integers (``1e6`` and ``2^20`` are
    accepted), ``ladder`` or ``ladder:a:b`` for powers of two, or ``large``.
    """
    spec = spec.strip()
    if spec == "large":
        logger.warning(f"Large sizes {LARGE_SIZES} need hundreds of GB of memory")
        return list(LARGE_SIZES)
    if spec.startswith("ladder"):
        parts = spec.split(":")
        lo, hi = LADDER
        try:
            if len(parts) == 3:
                lo, hi = int(parts[1]), int(parts[2])
            elif len(parts) != 1:
                raise ValueError(spec)
        except ValueError as e:
            raise UsageError(f"Malformed ladder '{spec}', expected ladder:a:b") from e
        if not 0 <= lo <= hi:
            raise UsageError(f"Empty ladder '{spec}'")
        return [1 << k for k in range(lo, hi + 1)]
    sizes = []
    for item in spec.split(","):
        item = item.strip().replace("**", "^")
        try:
            if "^" in item:
                base, exp = item.split("^")
                sizes.append(int(base) ** int(exp))
            elif "e" in item.lower():
                sizes.append(int(float(item)))
            else:
                sizes.append(int(item))
        except ValueError as e:
            raise UsageError(f"Malformed size '{item}'") from e
    if any(n < 1 for n in sizes):
        raise UsageError(f"Sizes must be positive: {spec}")
    return sizes


def parse_ops(target: str, spec: Optional[str]) -> List[str]:
    known = FENWICK_OPS if target == "fenwick" else BITVEC_OPS
    if not spec or spec == "default":
        return list(DEFAULT_OPS[target])
    if spec == "all":
        return list(known)
    ops = [op.strip() for op in spec.split(",") if op.strip()]
    for op in ops:
        if op not in known:
            raise UsageError(
                f"Unknown {target} op '{op}'. Known ops: {', '.join(known)}"
            )
    return ops


# Ops that change the structure they are timed on
MUTATING_OPS = frozenset({"update"})

Structure = Union[FenwickContract, DynBitVector]


def populate(
    cfg: BenchConfig, variant: str, n: int, hole_log: Optional[int] = HOLE_LOG
) -> Structure:
    """Build the structure of size n; its content depends only on the seed and n."""
    rng = SplitMix64(cfg.seed + n)
    if cfg.target == "fenwick":
        values = [rng.below(cfg.bound + 1) for _ in range(n)]
        return tree_from_values(variant, values, cfg.bound, hole_log)
    return DynBitVector.from_words(
        rng.words((n + 63) // 64), n, cfg.block_words, variant, hole_log
    )


def _fenwick_table(tree: FenwickContract, bound: int) -> Dict[str, tuple]:
    n = len(tree)
    total = tree.total()

    def find(x: int) -> int:
        return tree.find(x).p

    def find_complement(x: int) -> int:
        return tree.find_complement(x).p

    def add(j: int) -> int:
        # add is data-agnostic, a zero delta keeps the content fixed
        tree.add(j, 0)
        return j

    return {
        "prefix": (tree.prefix, n + 1, 0),
        "find": (find, max(1, total), 0),
        "find_complement": (find_complement, max(1, bound * n - total), 0),
        "add": (add, n, 1),
        "get": (tree.get, n, 1),
    }


def _bitvec_table(bv: DynBitVector, op: str) -> Dict[str, tuple]:
    n = len(bv)
    if op == "select" and bv.count_ones() == 0:
        bv.set(0)
    if op == "select0" and bv.count_zeros() == 0:
        bv.clear(0)
    return {
        "rank": (bv.rank, n + 1, 0),
        "rank0": (bv.rank0, n + 1, 0),
        "select": (bv.select, bv.count_ones(), 0),
        "select0": (bv.select0, bv.count_zeros(), 0),
        "update": (bv.flip, n, 0),
        "get": (bv.get_bit, n, 0),
    }


def build_case(
    cfg: BenchConfig,
    variant: str,
    op: str,
    n: int,
    hole_log: Optional[int] = HOLE_LOG,
    structure: Optional[Structure] = None,
) -> BenchCase:
    """
    Bind op to a populated structure and draw its argument stream.

    The structure is built with ``populate`` unless one is passed in; the
    arguments come from their own stream, so they do not depend on the op
    order or on whether the structure is shared.
    """
    if structure is None:
        structure = populate(cfg, variant, n, hole_log)
    if cfg.target == "fenwick":
        table = _fenwick_table(structure, cfg.bound)
    else:
        table = _bitvec_table(structure, op)
    if op not in table:
        raise UsageError(f"Unknown {cfg.target} op '{op}'")
    func, modulus, offset = table[op]
    rng = SplitMix64(~(cfg.seed + n))
    arguments = [rng.below(modulus) for _ in range(cfg.queries)]
    return BenchCase(variant, op, n, func, modulus, offset, arguments)


def trace_arguments(case: BenchCase) -> List[Tuple[int, int]]:
    """(argument, result) pairs of an untimed pass over the stream."""
    trace = []
    previous = 0
    for raw in case.arguments:
        arg = case.argument(raw, previous)
        previous = case.func(arg)
        trace.append((arg, previous))
    return trace


def measure(case: BenchCase, sink: bool = True) -> Tuple[float, int]:
    """
    Time the chained argument stream.

    Returns:
        (ns per operation, sink value); the sink is the sum of all results,
        or the last result when the sink is disabled
    """
    func = case.func
    modulus, offset = case.modulus, case.offset
    arguments = case.arguments

    r = 0
    for raw in arguments[: max(1, len(arguments) // 10)]:
        r = func((raw ^ (r & 1)) % modulus + offset)

    r = 0
    acc = 0
    if sink:
        start = time.perf_counter_ns()
        for raw in arguments:
            r = func((raw ^ (r & 1)) % modulus + offset)
            acc += r
        elapsed = time.perf_counter_ns() - start
    else:
        start = time.perf_counter_ns()
        for raw in arguments:
            r = func((raw ^ (r & 1)) % modulus + offset)
        elapsed = time.perf_counter_ns() - start
        acc = r
    return max(elapsed, 1) / len(arguments), acc


def format_ns(ns: float) -> str:
    if ns >= 1e6:
        return f"{ns / 1e6:.1f} ms"
    if ns >= 1e4:
        return f"{ns / 1e3:.1f} us"
    return f"{ns:.0f} ns"


def _runs(cfg: BenchConfig) -> List[Tuple[str, str, Optional[int]]]:
    """(label, tag, hole_log) per configured variant, plus hole-free twins."""
    runs = []
    for raw in cfg.variants:
        tag = normalize_tag(raw)
        runs.append((tag, tag, cfg.hole_log))
        classical = issubclass(variant_class(tag), ClassicalTree)
        if cfg.compare_holes and classical and cfg.hole_log is not None:
            runs.append((tag + NOHOLES_SUFFIX, tag, None))
    return runs


def run(cfg: BenchConfig) -> List[BenchRecord]:
    """Measure every size x variant x op combination in configuration order."""
    ops = parse_ops(cfg.target, ",".join(cfg.ops))
    runs = _runs(cfg)
    block_words = cfg.block_words if cfg.target == "bitvec" else 1
    records = []
    # mutating ops run last so the others time the freshly populated structure
    schedule = sorted(ops, key=lambda op: op in MUTATING_OPS)
    for n in cfg.sizes:
        for label, tag, hole_log in runs:
            structure = populate(cfg, tag, n, hole_log)
            timings = {}
            for op in schedule:
                case = build_case(cfg, tag, op, n, hole_log, structure)
                timings[op], _ = measure(case, cfg.sink)
            for op in ops:
                ns = timings[op]
                record = BenchRecord(
                    variant=label, op=op, n=n, block_words=block_words, ns_per_op=ns
                )
                logger.info(
                    f"{cfg.target} {label:<16} {op:<16} n={n:<12} {format_ns(ns)}"
                )
                records.append(record)
    return records


class SpaceReport(BaseModel):
    target: Target
    variant: str
    n: int
    bound: int
    block_words: int
    total_bits: int
    per_element: float
    info_bound_bits: Optional[int] = None


def space_report(
    target: Target,
    variant: str,
    n: int,
    bound: int = 64,
    block_words: int = DEFAULT_BLOCK_WORDS,
    hole_log: Optional[int] = HOLE_LOG,
) -> SpaceReport:
    """
    Storage of a structure of size n, including holes and padding.

    For trees, per_element is bits per element; for bit vectors it is bits
    per payload bit, counting the tree on block counts.
    """
    tag = normalize_tag(variant)
    if n < 1:
        raise UsageError(f"size must be positive, got {n}")
    if target == "fenwick":
        total = storage_bits(tag, n, bound, hole_log)
        return SpaceReport(
            target=target,
            variant=tag,
            n=n,
            bound=bound,
            block_words=1,
            total_bits=total,
            per_element=total / n,
            info_bound_bits=info_bound_bits(n, bound),
        )
    total = DynBitVector.storage_bits_for(n, block_words, tag, hole_log)
    return SpaceReport(
        target=target,
        variant=tag,
        n=n,
        bound=64 * block_words,
        block_words=block_words,
        total_bits=total,
        per_element=total / n,
    )


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in records], columns=CSV_COLUMNS)


def write_csv(records: Sequence[BenchRecord], destination: Union[str, Path]) -> None:
    """One row per record, in record order, under a fixed header."""
    destination = Path(destination)
    try:
        records_frame(records).to_csv(destination, index=False)
    except OSError as e:
        logger.error(f"Could not write {destination}: {e}")
        raise OutputError(f"Could not write bench results to {destination}: {e}") from e
    logger.info(f"Wrote {len(records)} records to {destination}")


def read_csv(source: Union[str, Path]) -> List[BenchRecord]:
    source = Path(source)
    try:
        frame = pd.read_csv(source)
    except OSError as e:
        raise OutputError(f"Could not read bench results from {source}: {e}") from e
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise FormatError(f"{source}: missing columns {missing}")
    return [
        BenchRecord(
            variant=str(row.variant),
            op=str(row.op),
            n=int(row.n),
            block_words=int(row.block_words),
            ns_per_op=float(row.ns_per_op),
        )
        for row in frame.itertuples(index=False)
    ]


def report_deltas(
    records: Sequence[BenchRecord], baseline: Optional[str] = None
) -> pd.DataFrame:
    """
    Relative ns/op of every variant against a baseline variant per (op, n).

    Hole-free twins are also compared with their holed variant. The deltas
    are informational and only logged.
    """
    frame = records_frame(records)
    if frame.empty:
        return frame
    pivot = frame.pivot_table(index=["op", "n"], columns="variant", values="ns_per_op")
    baseline = baseline or frame["variant"].iloc[0]
    if baseline not in pivot.columns:
        raise UsageError(f"Baseline variant '{baseline}' not among the records")
    deltas = pivot.div(pivot[baseline], axis=0) - 1.0
    for (op, n), row in deltas.iterrows():
        cells = ", ".join(
            f"{variant} {100 * delta:+.1f}%"
            for variant, delta in row.items()
            if variant != baseline and not math.isnan(delta)
        )
        if cells:
            logger.info(f"{op} n={n} vs {baseline}: {cells}")
    for column in pivot.columns:
        if column.endswith(NOHOLES_SUFFIX):
            holed = column[: -len(NOHOLES_SUFFIX)]
            if holed in pivot.columns:
                gain = 1.0 - pivot[holed] / pivot[column]
                for (op, n), value in gain.items():
                    logger.info(
                        f"{op} n={n}: holes make {holed} {100 * value:+.1f}% faster"
                    )
    return deltas
