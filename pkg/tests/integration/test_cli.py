#!/usr/bin/env python3
"""
End-to-end tests of the command-line interface.
"""

import sys

from click.testing import CliRunner
from loguru import logger

from fenwick.__main__ import cli
from fenwick.apps import inversions_merge, random_permutation, write_permutation
from fenwick.bench import CSV_COLUMNS

from .test_utils import read_edges, write_config


class TestCli:
    def setup_method(self, method):
        self.runner = CliRunner()

    def teardown_method(self, method):
        # The CLI points loguru at the runner's stderr; restore a live sink
        logger.remove()
        logger.add(sys.stderr, level="WARNING")

    def invoke(self, tmp_path, *args):
        config = write_config(tmp_path, log_level="ERROR")
        return self.runner.invoke(
            cli, ["--config", str(config), "--no-log-file", *args]
        )

    def test_transpositions_from_file(self, tmp_path):
        pi = random_permutation(300, seed=5)
        path = tmp_path / "perm.txt"
        write_permutation(pi, path)
        result = self.invoke(tmp_path, "transpositions", "--input", str(path))
        assert result.exit_code == 0, result.output
        count = int(result.stdout.split("\t")[0])
        assert count == inversions_merge(pi.mapping)
        assert result.stdout.rstrip().endswith("ns/element")

    def test_transpositions_backends_agree(self, tmp_path):
        counts = set()
        for backend in ("fixed[F]", "bit[l]"):
            result = self.invoke(
                tmp_path,
                "transpositions",
                "--n",
                "500",
                "--seed",
                "2",
                "--backend",
                backend,
            )
            assert result.exit_code == 0, result.output
            counts.add(int(result.stdout.split("\t")[0]))
        assert counts == {inversions_merge(random_permutation(500, seed=2).mapping)}

    def test_pa_graph(self, tmp_path):
        output = tmp_path / "edges.txt"
        result = self.invoke(
            tmp_path,
            "pa-graph", "--n", "10", "--d", "2", "--d0", "3", "--output", str(output),
            "--degree-report",
        )
        assert result.exit_code == 0, result.output
        assert result.stdout.strip() == "17 edges"
        edges = read_edges(output)
        assert len(edges) == 17
        assert edges[:3] == [(0, 0), (1, 1), (2, 2)]

    def test_pa_graph_rejects_bad_parameters(self, tmp_path):
        result = self.invoke(
            tmp_path,
            "pa-graph", "--n", "10", "--d", "4", "--d0", "3",
            "--output", str(tmp_path / "edges.txt"),
        )
        assert result.exit_code != 0

    def test_space(self, tmp_path):
        result = self.invoke(
            tmp_path, "space", "--target", "fenwick", "--variant", "bit[F],fixed[l]",
            "--n", "1024",
        )
        assert result.exit_code == 0, result.output
        lines = result.stdout.strip().splitlines()
        assert [line.split("\t")[0] for line in lines] == ["bit[F]", "fixed[l]"]
        assert lines[1].split("\t")[1] == "64.0000 bits/element"

    def test_bench_writes_csv(self, tmp_path):
        csv_path = tmp_path / "bench.csv"
        result = self.invoke(
            tmp_path,
            "bench", "--variant", "bit[l]", "--op", "find", "--sizes", "100,200",
            "--queries", "20", "--csv", str(csv_path),
        )
        assert result.exit_code == 0, result.output
        lines = result.stdout.strip().splitlines()
        assert [line.split(",")[:3] for line in lines] == [
            ["bit[l]", "find", "100"],
            ["bit[l]", "find", "200"],
        ]
        rows = csv_path.read_text().splitlines()
        assert rows[0] == ",".join(CSV_COLUMNS)
        assert len(rows) == 3

    def test_bench_uses_configured_sizes(self, tmp_path):
        result = self.invoke(
            tmp_path, "bench", "--target", "bitvec", "--variant", "byte[F]",
            "--op", "rank", "--block-words", "2",
        )
        assert result.exit_code == 0, result.output
        lines = result.stdout.strip().splitlines()
        assert [line.split(",")[2:4] for line in lines] == [["256", "2"], ["1024", "2"]]

    def test_unknown_variant(self, tmp_path):
        result = self.invoke(
            tmp_path, "bench", "--variant", "huge[F]", "--sizes", "100"
        )
        assert result.exit_code != 0
