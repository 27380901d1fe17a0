#!/usr/bin/env python3
"""
Tests for the bit-addressable word store.
"""

import random

import numpy as np
import pytest

from fenwick.bitstore import BitStore, words_for
from fenwick.errors import ContractError, OutOfRangeError, RangeError


class TestBitStore:
    def setup_method(self, method):
        self.store = BitStore(256)

    def test_fresh_store_reads_zero(self):
        assert self.store.len_bits == 256
        assert self.store.num_words == 4
        assert self.store.read_bits(0, 64) == 0
        assert self.store.read_bits(100, 37) == 0

    def test_write_and_read_across_words(self):
        self.store.write_bits(60, 10, 0b1011001110)
        assert self.store.read_bits(60, 10) == 0b1011001110
        assert self.store.read_word(0) >> 60 == 0b1110
        assert self.store.read_word(1) & 0x3F == 0b101100

    def test_writes_leave_neighbours_alone(self):
        rng = random.Random(3)
        fields = []
        offset = 0
        while True:
            width = rng.randint(1, 64)
            if offset + width > 256:
                break
            value = rng.getrandbits(width)
            self.store.write_bits(offset, width, value)
            fields.append((offset, width, value))
            offset += width
        for offset, width, value in fields:
            assert self.store.read_bits(offset, width) == value

    def test_full_word_field(self):
        self.store.write_bits(64, 64, (1 << 64) - 1)
        assert self.store.read_word(1) == (1 << 64) - 1
        assert self.store.read_word(0) == 0
        assert self.store.read_word(2) == 0

    def test_aligned_read(self):
        self.store.write_bits(130, 20, 12345)
        assert self.store.read_bits_aligned(130, 20) == 12345

    def test_aligned_read_rejects_straddling_field(self):
        with pytest.raises(ContractError):
            self.store.read_bits_aligned(60, 10)

    def test_out_of_bounds(self):
        with pytest.raises(OutOfRangeError):
            self.store.read_bits(250, 10)
        with pytest.raises(OutOfRangeError):
            self.store.write_bits(-1, 2, 0)
        with pytest.raises(OutOfRangeError):
            self.store.read_word(4)

    def test_bad_width_and_value(self):
        with pytest.raises(ContractError):
            self.store.read_bits(0, 0)
        with pytest.raises(ContractError):
            self.store.read_bits(0, 65)
        with pytest.raises(RangeError):
            self.store.write_bits(0, 3, 8)

    def test_write_word_past_end(self):
        store = BitStore(70)
        store.write_word(1, 0b111111)
        with pytest.raises(RangeError):
            store.write_word(1, 1 << 6)

    def test_grow_exposes_zeros_after_truncate(self):
        self.store.write_bits(0, 64, (1 << 64) - 1)
        self.store.write_bits(200, 50, (1 << 50) - 1)
        self.store.truncate(10)
        assert self.store.len_bits == 10
        assert self.store.read_bits(0, 10) == (1 << 10) - 1
        self.store.grow(256)
        assert self.store.read_bits(10, 54) == 0
        assert self.store.read_bits(200, 50) == 0

    def test_grow_cannot_shrink(self):
        with pytest.raises(ContractError):
            self.store.grow(10)
        with pytest.raises(ContractError):
            self.store.truncate(300)

    def test_truncate_releases_capacity(self):
        store = BitStore()
        store.grow(64 * 1000)
        store.truncate(64)
        assert store.capacity_words < 1000
        assert store.num_words == 1

    def test_resize(self):
        store = BitStore(10)
        store.resize(1000)
        assert store.len_bits == 1000
        store.resize(5)
        assert len(store) == 5

    def test_from_words_masks_tail(self):
        words = np.array([(1 << 64) - 1, (1 << 64) - 1, 99], dtype=np.uint64)
        store = BitStore.from_words(words, 70)
        assert store.num_words == 2
        assert store.read_word(0) == (1 << 64) - 1
        assert store.read_word(1) == 0b111111
        store.grow(128)
        assert store.read_bits(70, 58) == 0

    def test_from_words_too_short(self):
        with pytest.raises(ContractError):
            BitStore.from_words([1], 65)

    def test_words_view_is_read_only(self):
        view = self.store.words
        assert len(view) == 4
        with pytest.raises(ValueError):
            view[0] = 1


class TestBitStoreModel:
    """Random operation sequences checked bit by bit against a list model."""

    def field(self, model, offset, width):
        return sum(bit << i for i, bit in enumerate(model[offset : offset + width]))

    def check_read(self, store, model, offset, width):
        expected = self.field(model, offset, width)
        assert store.read_bits(offset, width) == expected
        if offset % 64 + width <= 64:
            assert store.read_bits_aligned(offset, width) == expected

    def test_interleaved_operations(self):
        rng = random.Random(11)
        store = BitStore()
        model = []
        for step in range(12_000):
            action = rng.random()
            if action < 0.15 or not model:
                extra = rng.randint(0, 200)
                store.grow(len(model) + extra)
                model.extend([0] * extra)
            elif action < 0.2:
                keep = rng.randint(0, len(model))
                store.truncate(keep)
                del model[keep:]
            elif action < 0.6:
                width = rng.randint(1, min(64, len(model)))
                offset = rng.randint(0, len(model) - width)
                value = rng.getrandbits(width)
                store.write_bits(offset, width, value)
                model[offset : offset + width] = [
                    (value >> i) & 1 for i in range(width)
                ]
            else:
                width = rng.randint(1, min(64, len(model)))
                offset = rng.randint(0, len(model) - width)
                self.check_read(store, model, offset, width)
            if len(model) > 8192:
                store.truncate(4096)
                del model[4096:]
            assert store.len_bits == len(model)
            if step % 500 == 0:
                for index in range(store.num_words):
                    lo = index * 64
                    width = min(64, len(model) - lo)
                    assert store.read_word(index) == self.field(model, lo, width)

    def test_grow_reads_zero_after_truncate(self):
        rng = random.Random(12)
        store = BitStore(640)
        model = [0] * 640
        for _ in range(200):
            width = rng.randint(1, 64)
            offset = rng.randint(0, 640 - width)
            value = rng.getrandbits(width)
            store.write_bits(offset, width, value)
            model[offset : offset + width] = [(value >> i) & 1 for i in range(width)]
        store.truncate(333)
        store.grow(640)
        model[333:] = [0] * (640 - 333)
        for offset in range(0, 640 - 64 + 1, 7):
            self.check_read(store, model, offset, 64)

    def test_aligned_matches_unaligned_reader(self):
        rng = np.random.default_rng(13)
        words = rng.integers(0, 1 << 64, size=64, dtype=np.uint64, endpoint=False)
        store = BitStore.from_words(words, 64 * 64)
        picks = random.Random(13)
        for _ in range(100_000):
            r = picks.randrange(64)
            width = picks.randint(1, 64 - r)
            offset = picks.randrange(64) * 64 + r
            assert store.read_bits_aligned(offset, width) == store.read_bits(
                offset, width
            )


def test_words_for():
    assert words_for(0) == 0
    assert words_for(1) == 1
    assert words_for(64) == 1
    assert words_for(65) == 2
