#!/usr/bin/env python3
"""
Compact Fenwick toolkit

Command-line entry point: transposition counting, preferential-attachment
graph generation, benchmarks and space reports.
"""

import sys
import time
from typing import Optional

import click
from loguru import logger
from pydantic import ValidationError

from fenwick import bitops
from fenwick.apps import (
    PAConfig,
    count_transpositions,
    degree_report,
    generate_pa,
    random_permutation,
    read_permutation,
    write_edges,
)
from fenwick.bench import (
    BenchConfig,
    parse_ops,
    parse_sizes,
    report_deltas,
    run,
    space_report,
    write_csv,
)
from fenwick.errors import FenwickError
from fenwick.registry import normalize_tag, parse_tags
from fenwick.utils.config import Settings, load_config
from fenwick.utils.logger import setup_logging


@click.group()
@click.option("--config", "config_path", default=None, help="Path to config.json")
@click.option("--log-level", default=None, help="Override the configured log level")
@click.option("--no-log-file", is_flag=True, help="Log to stderr only")
@click.pass_context
def cli(ctx, config_path: Optional[str], log_level: Optional[str], no_log_file: bool):
    """Compact Fenwick trees, dynamic bit vectors and their benchmarks."""
    settings = load_config(config_path)
    setup_logging(log_level or settings.log_level, None if no_log_file else "logs")
    if settings.portable_bitops and bitops.FAST_PATH:
        logger.warning(
            "portable_bitops is set in the configuration, but bit primitives are "
            "chosen at import; export FENWICK_PORTABLE_BITOPS=1 instead"
        )
    elif not bitops.FAST_PATH:
        logger.warning("Using portable broadword bit primitives")
    ctx.obj = settings


@cli.command()
@click.option("--n", type=int, default=1000, show_default=True, help="Permutation size")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--input", "input_path", default=None, help="Permutation file, one integer per line"
)
@click.option("--backend", default=None, help="Fenwick variant backing the bit vector")
@click.option(
    "--block-words", type=int, default=None, help="Words per bit-vector block"
)
@click.pass_obj
def transpositions(
    settings: Settings,
    n: int,
    seed: int,
    input_path: Optional[str],
    backend: Optional[str],
    block_words: Optional[int],
):
    """Count the transpositions sorting a permutation."""
    if input_path:
        pi = read_permutation(input_path)
        logger.info(f"Read permutation of {len(pi)} elements from {input_path}")
    else:
        pi = random_permutation(n, seed)
        logger.info(f"Generated permutation of {n} elements with seed {seed}")
    variant = normalize_tag(backend or settings.default_variant)
    start = time.perf_counter_ns()
    count = count_transpositions(
        pi,
        variant=variant,
        block_words=block_words or settings.block_words,
        hole_log=settings.hole_log,
    )
    elapsed = time.perf_counter_ns() - start
    per_element = elapsed / max(1, len(pi))
    logger.info(f"{variant}: {count} transpositions, {per_element:.0f} ns/element")
    click.echo(f"{count}\t{per_element:.1f} ns/element")


@cli.command("pa-graph")
@click.option("--n", type=int, required=True, help="Final vertex count")
@click.option("--d", type=int, required=True, help="Edges per new vertex")
@click.option("--d0", type=int, required=True, help="Seed vertices with a self-loop")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", required=True, help="Edge list destination")
@click.option("--backend", default=None, help="Fenwick variant holding the degrees")
@click.option(
    "--degree-report", "with_report", is_flag=True, help="Log a degree summary"
)
@click.pass_obj
def pa_graph(
    settings: Settings,
    n: int,
    d: int,
    d0: int,
    seed: int,
    output: str,
    backend: Optional[str],
    with_report: bool,
):
    """Generate a preferential-attachment graph."""
    cfg = PAConfig(n=n, d=d, d0=d0, seed=seed)
    variant = normalize_tag(backend or settings.default_variant)
    start = time.perf_counter_ns()
    graph = generate_pa(cfg, variant=variant, hole_log=settings.hole_log)
    elapsed = time.perf_counter_ns() - start
    write_edges(graph.edges, output)
    logger.info(f"Wrote {graph.m} edges to {output} in {elapsed / 1e6:.1f} ms")
    if with_report:
        report = degree_report(graph)
        logger.info(f"Degree report: {report.model_dump()}")
    click.echo(f"{graph.m} edges")


@cli.command()
@click.option(
    "--target",
    type=click.Choice(["fenwick", "bitvec"]),
    default="fenwick",
    show_default=True,
)
@click.option("--variant", "variants", default="all", show_default=True,
              help="Comma-separated variant tags, or 'all'")
@click.option("--op", "ops", default="default", show_default=True,
              help="Comma-separated ops, 'default' or 'all'")
@click.option("--sizes", default=None, help="Sizes: list, 'ladder[:a:b]' or 'large'")
@click.option("--queries", type=int, default=None, help="Timed queries per cell")
@click.option("--bound", type=int, default=None, help="Element bound for trees")
@click.option(
    "--block-words", type=int, default=None, help="Words per bit-vector block"
)
@click.option("--seed", type=int, default=None)
@click.option("--csv", "csv_path", default=None, help="Write records to this CSV file")
@click.option("--no-holes", is_flag=True, help="Disable holes in classical layouts")
@click.option(
    "--compare-holes", is_flag=True, help="Also time classical layouts without holes"
)
@click.option("--no-sink", is_flag=True, help="Do not accumulate results")
@click.option("--large-scale", is_flag=True, help="Use the 10^9..10^11 size grid")
@click.pass_obj
def bench(
    settings: Settings,
    target: str,
    variants: str,
    ops: str,
    sizes: Optional[str],
    queries: Optional[int],
    bound: Optional[int],
    block_words: Optional[int],
    seed: Optional[int],
    csv_path: Optional[str],
    no_holes: bool,
    compare_holes: bool,
    no_sink: bool,
    large_scale: bool,
):
    """Measure ns/op across sizes, variants and operations."""
    defaults = settings.bench
    size_spec = "large" if large_scale else (sizes or defaults.sizes)
    cfg = BenchConfig(
        target=target,
        variants=parse_tags(variants),
        ops=parse_ops(target, ops),
        sizes=parse_sizes(size_spec),
        queries=queries or defaults.queries,
        bound=bound or defaults.bound,
        block_words=block_words or settings.block_words,
        seed=defaults.seed if seed is None else seed,
        hole_log=None if no_holes else settings.hole_log,
        compare_holes=compare_holes,
        sink=not no_sink,
    )
    logger.info(
        f"Benchmarking {target}: variants={cfg.variants} ops={cfg.ops} "
        f"sizes={cfg.sizes} queries={cfg.queries}"
    )
    records = run(cfg)
    if csv_path:
        write_csv(records, csv_path)
    report_deltas(records)
    for r in records:
        click.echo(f"{r.variant},{r.op},{r.n},{r.block_words},{r.ns_per_op:.2f}")


@cli.command()
@click.option(
    "--target",
    type=click.Choice(["fenwick", "bitvec"]),
    default="bitvec",
    show_default=True,
)
@click.option("--variant", "variants", default="all", show_default=True)
@click.option("--n", type=str, default="1e8", show_default=True,
              help="Elements (trees) or payload bits (bit vectors)")
@click.option("--bound", type=int, default=64, show_default=True)
@click.option("--block-words", type=int, default=None)
@click.pass_obj
def space(
    settings: Settings,
    target: str,
    variants: str,
    n: str,
    bound: int,
    block_words: Optional[int],
):
    """Report storage per element or per payload bit, without populating."""
    size = parse_sizes(n)[0]
    for tag in parse_tags(variants):
        report = space_report(
            target,
            tag,
            size,
            bound=bound,
            block_words=block_words or settings.block_words,
            hole_log=settings.hole_log,
        )
        unit = "bits/element" if target == "fenwick" else "bits/payload bit"
        logger.info(f"{report.variant}: {report.total_bits} bits")
        click.echo(f"{report.variant}\t{report.per_element:.4f} {unit}")


def main():
    """Main entry point"""
    try:
        cli(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except (FenwickError, ValidationError) as e:
        logger.error(f"Error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
