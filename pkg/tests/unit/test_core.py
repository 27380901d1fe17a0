#!/usr/bin/env python3
"""
Tests for the implicit tree relations, traversal paths and the shared
Fenwick algorithms, run against every variant.
"""

import random

import pytest

from fenwick.core import (
    FindResult,
    info_bound_bits,
    interrogation_parent,
    interrogation_path,
    interrogation_path_topdown,
    search_children,
    search_parent,
    update_parent,
    update_path,
    update_path_topdown,
)
from fenwick.errors import ContractError, OutOfRangeError, RangeError, UnderflowError
from fenwick.oracle import NaiveFenwick
from fenwick.registry import TREE_VARIANTS, VARIANTS, make_tree, tree_from_values

ALL_VARIANTS = list(VARIANTS)


class TestRelations:
    def test_parents(self):
        assert interrogation_parent(12) == 8
        assert interrogation_parent(8) == 0
        assert update_parent(5) == 6
        assert update_parent(12) == 16

    def test_duality(self):
        for j in range(1, (1 << 20) + 1):
            assert interrogation_parent(-j) == -update_parent(j)

    def test_search_tree(self):
        assert search_parent(5) == 6
        assert search_parent(6) == 4
        assert search_parent(12) == 8
        assert search_children(4) == (2, 6)
        assert search_children(5) is None
        for j in range(1, 1 << 12):
            children = search_children(j)
            if children:
                for child in children:
                    assert search_parent(child) == j


class TestPaths:
    def test_examples(self):
        assert interrogation_path(12) == [12, 8]
        assert interrogation_path(7) == [7, 6, 4]
        assert update_path(5, 16) == [5, 6, 8, 16]
        assert update_path(5, 7) == [5, 6]
        assert interrogation_path_topdown(7) == [4, 6, 7]
        assert update_path_topdown(5, 16) == [16, 8, 6, 5]
        assert interrogation_path(3) == [3, 2]
        assert interrogation_path(11) == [11, 10, 8]
        assert update_path(3, 11) == [3, 4, 8]
        assert update_path(9, 11) == [9, 10]
        assert interrogation_path_topdown(11) == [8, 10, 11]
        assert update_path_topdown(3, 11) == [8, 4, 3]

    def test_topdown_interrogation_exhaustively(self):
        for p in range(1, (1 << 14) + 1):
            assert interrogation_path_topdown(p) == interrogation_path(p)[::-1]

    def test_topdown_reverses_bottom_up_exhaustively(self):
        for n in range(1, (1 << 9) + 1):
            for p in range(1, n + 1):
                assert interrogation_path_topdown(p) == interrogation_path(p)[::-1]
                assert update_path_topdown(p, n) == update_path(p, n)[::-1]

    def test_topdown_reverses_bottom_up_sampled(self):
        rng = random.Random(11)
        for _ in range(20000):
            n = rng.randint(1, 1 << 16)
            p = rng.randint(1, n)
            assert interrogation_path_topdown(p) == interrogation_path(p)[::-1]
            assert update_path_topdown(p, n) == update_path(p, n)[::-1]

    def test_bad_nodes(self):
        with pytest.raises(OutOfRangeError):
            update_path(0, 4)
        with pytest.raises(OutOfRangeError):
            update_path_topdown(5, 4)
        with pytest.raises(OutOfRangeError):
            interrogation_path_topdown(0)


@pytest.mark.parametrize("tag", ALL_VARIANTS)
class TestContract:
    def test_find_example(self, tag):
        tree = tree_from_values(tag, [1, 0, 2, 0, 3], 3)
        assert tree.find(3) == FindResult(4, 0)
        assert tree.find(0) == (0, 0)
        assert tree.find(2) == (2, 1)
        assert tree.find(6) == (5, 0)
        assert tree.find(100) == (5, 94)

    def test_find_complement_example(self, tag):
        tree = tree_from_values(tag, [1, 0, 2], 2)
        assert tree.find_complement(0) == (0, 0)
        assert tree.find_complement(1) == (1, 0)
        assert tree.find_complement(2) == (1, 1)
        assert tree.find_complement(3) == (3, 0)

    def test_prefix_get_total(self, tag):
        tree = tree_from_values(tag, [1, 0, 2, 0, 3], 3)
        assert [tree.prefix(p) for p in range(6)] == [0, 1, 1, 3, 3, 6]
        assert [tree.get(j) for j in range(1, 6)] == [1, 0, 2, 0, 3]
        assert tree.total() == 6
        assert len(tree) == 5

    def test_add_set_push_pop(self, tag):
        tree = make_tree(tag, 10)
        for v in [4, 7, 1]:
            tree.push(v)
        tree.add(2, -5)
        tree.set(3, 10)
        assert tree.values() == [4, 2, 10]
        tree.pop()
        assert tree.values() == [4, 2]
        assert tree.prefix(2) == 6
        tree.pop()
        tree.pop()
        assert len(tree) == 0
        assert tree.find(5) == (0, 5)

    def test_empty_tree(self, tag):
        tree = make_tree(tag, 5)
        assert tree.prefix(0) == 0
        assert tree.find(0) == (0, 0)
        assert tree.find_complement(3) == (0, 3)
        with pytest.raises(UnderflowError):
            tree.pop()

    def test_errors(self, tag):
        tree = tree_from_values(tag, [1, 2], 3)
        with pytest.raises(OutOfRangeError):
            tree.prefix(3)
        with pytest.raises(OutOfRangeError):
            tree.get(0)
        with pytest.raises(OutOfRangeError):
            tree.add(3, 1)
        with pytest.raises(RangeError):
            tree.find(-1)
        with pytest.raises(ContractError):
            tree.push(4)
        with pytest.raises(ContractError):
            tree.add(1, 3)
        with pytest.raises(ContractError):
            tree.add(2, -3)

    def test_from_values_matches_pushes(self, tag):
        rng = random.Random(5)
        values = [rng.randint(0, 100) for _ in range(300)]
        built = tree_from_values(tag, values, 100)
        pushed = make_tree(tag, 100)
        for v in values:
            pushed.push(v)
        assert [built.prefix(p) for p in range(301)] == [
            pushed.prefix(p) for p in range(301)
        ]

    def test_from_values_rejects_out_of_bound(self, tag):
        with pytest.raises(ContractError):
            tree_from_values(tag, [1, 5], 4)


@pytest.mark.parametrize("tag", TREE_VARIANTS)
def test_find_path_nodes(tag):
    tree = tree_from_values(tag, [1, 0, 2, 0, 3], 3)
    assert tree.find_path(3) == [4, 5]
    assert tree.find_path(0) == [4, 2, 1]


def test_zeros():
    for tag in TREE_VARIANTS:
        tree = VARIANTS[tag].zeros(100, 7)
        assert len(tree) == 100
        assert tree.total() == 0
        assert tree.find(0) == (100, 0)


def test_oracle_values():
    oracle = NaiveFenwick(3, [1, 2])
    assert oracle.values() == [1, 2]
    assert oracle.size_bits() == 128


def test_info_bound_bits():
    assert info_bound_bits(8, 1) == 8
    assert info_bound_bits(4, 3) == 8
    assert info_bound_bits(3, 2) == 5
