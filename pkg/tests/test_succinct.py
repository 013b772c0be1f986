import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bitlists, naive_rank, naive_select, naive_select0
from trie_entropy.entropy import binary_entropy_bits
from trie_entropy.succinct import (CountingSelect, EnumerativeBlock, PlainBitvector, boost_build,
                                   boost_prank, boost_rank, build_select_overlay, default_block_size,
                                   enumerative_decode, enumerative_encode, id_rank_by_binary_search,
                                   plain_rank, plain_select)


def check_plain(bits):
    v = PlainBitvector(bits)
    assert v.rank(0) == 0
    for i in range(1, len(bits) + 1):
        assert v.rank(i) == naive_rank(bits, i)
        assert v[i] == bits[i - 1]
        assert v.prank(i) == (naive_rank(bits, i) if bits[i - 1] else -1)
    for j in range(1, sum(bits) + 1):
        assert v.select(j) == naive_select(bits, j)
    for j in range(1, len(bits) - sum(bits) + 1):
        assert v.select0(j) == naive_select0(bits, j)


def test_plain_examples():
    v = PlainBitvector("1010")
    assert plain_rank(v, 3) == 2 and plain_select(v, 2) == 3
    assert PlainBitvector([0] * 100).rank(77) == 0
    one = PlainBitvector([0] * 40 + [1] + [0] * 9)
    assert one.select(1) == 41


def test_plain_range_errors():
    v = PlainBitvector("101")
    for bad in (lambda: v.rank(4), lambda: v.rank(-1), lambda: v.select(0), lambda: v.select(3),
                lambda: v[0], lambda: v.select0(2)):
        with pytest.raises(IndexError):
            bad()


def test_plain_long_random():
    rng = random.Random(5)
    bits = [int(rng.random() < 0.3) for _ in range(10000)]
    check_plain(bits)


@settings(max_examples=150, deadline=None)
@given(bitlists)
def test_plain_against_scan(bits):
    check_plain(bits)


def test_id_rank_probes():
    rng = random.Random(2)
    for _ in range(300):
        m = rng.randint(1, 300)
        bits = [int(rng.random() < rng.random()) for _ in range(m)]
        v = PlainBitvector(bits)
        for i in range(0, m + 1, max(1, m // 17)):
            probe = CountingSelect(v)
            assert id_rank_by_binary_search(probe, i) == v.rank(i)
            bound = math.ceil(math.log2(v.ones)) + 1 if v.ones else 0
            assert probe.calls <= bound


def test_id_rank_single_one_and_before_first():
    v = PlainBitvector([0, 0, 1, 0])
    probe = CountingSelect(v)
    assert id_rank_by_binary_search(probe, 2) == 0
    assert probe.calls <= 1
    with pytest.raises(IndexError):
        id_rank_by_binary_search(v, 5)


@pytest.mark.parametrize("width", range(0, 13))
def test_enumerative_exhaustive(width):
    for ones in range(width + 1):
        seen = set()
        for pos in itertools.combinations(range(width), ones):
            bits = tuple(1 if p in pos else 0 for p in range(width))
            off = enumerative_encode(bits)
            assert 0 <= off < math.comb(width, ones)
            assert enumerative_decode(width, ones, off) == bits
            seen.add(off)
        assert len(seen) == math.comb(width, ones)


def test_enumerative_order_is_lexicographic():
    blocks = [tuple(b) for b in itertools.product((0, 1), repeat=6) if sum(b) == 3]
    assert [enumerative_encode(b) for b in sorted(blocks)] == list(range(len(blocks)))


@settings(max_examples=100, deadline=None)
@given(st.integers(13, 24).flatmap(lambda w: st.lists(st.integers(0, 1), min_size=w, max_size=w)))
def test_enumerative_wide_blocks(bits):
    blk = EnumerativeBlock.encode(bits)
    assert blk.decode() == tuple(bits)
    count = math.comb(len(bits), sum(bits))
    assert blk.payload_bits == (math.ceil(math.log2(count)) if count > 1 else 0)


def test_enumerative_rejects_bad_offsets():
    with pytest.raises(ValueError):
        EnumerativeBlock(4, 2, 6)
    with pytest.raises(ValueError):
        enumerative_decode(3, 4, 0)


def test_boost_examples():
    assert boost_build([0] * 100, 8).payload_bits == 0
    alt = boost_build([0, 1] * 32, 8)
    assert alt.payload_bits == 8 * math.ceil(math.log2(70)) == 56
    v = boost_build([0, 0, 1, 1, 0, 1, 0, 0, 1], 4)
    assert boost_prank(v, 1) == -1
    assert boost_prank(v, 3) == 1 and boost_prank(v, 6) == 3 and boost_prank(v, 9) == 4
    assert boost_rank(v, 9) == v.ones == 4
    assert boost_rank(boost_build([1] * 10, 3), 7) == 7


def check_boosted(bits, b, complement=False):
    v = boost_build(bits, b, complement)
    assert v.bits() == tuple(bits)
    assert v.pre_ranks[-1] == sum(blk.ones for blk in v.blocks)
    for i in range(0, len(bits) + 1):
        assert v.rank(i) == naive_rank(bits, i)
    for i in range(1, len(bits) + 1):
        assert v.prank(i) == (naive_rank(bits, i) if bits[i - 1] else -1)
    for j in range(1, sum(bits) + 1):
        assert v.select(j) == naive_select(bits, j)
    blocks = [bits[q:q + b] for q in range(0, len(bits), b)]
    bound = sum(binary_entropy_bits(len(x), sum(x)) for x in blocks) + v.nonempty_blocks
    assert v.payload_bits <= bound + 1e-9
    assert v.overlay.s.zeros == v.t


@settings(max_examples=150, deadline=None)
@given(bitlists, st.integers(1, 40), st.booleans())
def test_boosted_against_scan(bits, b, complement):
    check_boosted(bits, b, complement)


def test_overlay():
    single = build_select_overlay([5])
    assert single.locate(3) == (0, 3)
    ov = build_select_overlay([2, 0, 3, 1])
    assert [ov.locate(j) for j in range(1, 7)] == [(0, 1), (0, 2), (2, 1), (2, 2), (2, 3), (3, 1)]
    assert ov.s.zeros == 4
    with pytest.raises(IndexError):
        ov.locate(7)


def test_default_block_size():
    assert default_block_size(1, 3) == 8
    assert default_block_size(256, 2) == 128
    assert default_block_size(10 ** 6, 50) == 4096
