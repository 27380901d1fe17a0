#!/usr/bin/env python3
"""
Save/load of dynamic bit vectors.
"""

import random

import pytest

from fenwick.dynbv import HEADER, DynBitVector
from fenwick.errors import FormatError

from ..unit.test_utils import random_bits


class TestPersistence:
    def setup_method(self, method):
        rng = random.Random(8)
        self.bits = random_bits(rng, 5000)
        self.bv = DynBitVector.from_bits(self.bits, block_words=2, variant="bit[F]")

    def test_roundtrip(self, tmp_path):
        path = tmp_path / "bv.bin"
        self.bv.save(path)
        loaded = DynBitVector.load(path)
        assert list(loaded) == self.bits
        assert loaded.block_words == 2
        assert loaded.variant == "bit[F]"
        assert loaded.rank(len(loaded)) == self.bv.count_ones()
        loaded.check_leaves()

    def test_bit_exact(self, tmp_path):
        first, second = tmp_path / "a.bin", tmp_path / "b.bin"
        self.bv.save(first)
        DynBitVector.load(first).save(second)
        assert first.read_bytes() == second.read_bytes()
        assert len(first.read_bytes()) == HEADER.size + 8 * 80

    def test_empty_vector(self, tmp_path):
        path = tmp_path / "empty.bin"
        DynBitVector().save(path)
        assert len(DynBitVector.load(path)) == 0

    def test_bad_files(self, tmp_path):
        path = tmp_path / "bv.bin"
        self.bv.save(path)
        data = path.read_bytes()

        path.write_bytes(b"XXXX" + data[4:])
        with pytest.raises(FormatError):
            DynBitVector.load(path)

        path.write_bytes(data[:10])
        with pytest.raises(FormatError):
            DynBitVector.load(path)

        path.write_bytes(data[:-8])
        with pytest.raises(FormatError):
            DynBitVector.load(path)

        path.write_bytes(data[:4] + b"\x09\x00" + data[6:])
        with pytest.raises(FormatError):
            DynBitVector.load(path)

        tag_offset = HEADER.size - 16
        bad_tag = b"huge[F]".ljust(16, b"\0")
        path.write_bytes(data[:tag_offset] + bad_tag + data[HEADER.size :])
        with pytest.raises(FormatError):
            DynBitVector.load(path)
