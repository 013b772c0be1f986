"""Bitvectors: a plain rank/select structure and a fixed-block compressed one.

Positions are 1-based throughout, so ``rank(i)`` counts ones in ``B[1..i]``
and ``rank(0) == 0``.  The compressed layout cuts a bitvector into blocks of
``b`` bits and stores each block as its index among the ``C(b', x)`` blocks
of the same width and weight, which costs ``ceil(log2 C(b', x))`` bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

WORD = 64
WORDS_PER_SUPER = 8  # 512-bit superblocks
SAMPLE = 64  # select samples every 64th one (and zero)
MAX_BLOCK = 4096


def _as_bits(bits: Iterable) -> tuple[int, ...]:
    if isinstance(bits, str):
        out = tuple(1 if ch == "1" else 0 for ch in bits if ch in "01")
    else:
        out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError("bits must be 0 or 1")
    return out


def _nth_set_bit(word: int, k: int) -> int:
    """0-based index of the k-th (1-based) set bit of ``word``."""
    for _ in range(k - 1):
        word &= word - 1
    return (word & -word).bit_length() - 1


class PlainBitvector:
    """Uncompressed bitvector with a two-level rank directory and sampled select."""

    def __init__(self, bits: Iterable):
        bits = _as_bits(bits)
        self.m = len(bits)
        words = []
        for w in range(0, self.m, WORD):
            x = 0
            for j, bit in enumerate(bits[w:w + WORD]):
                x |= bit << j
            words.append(x)
        self._words = words
        self._super = []
        self._local = []
        total = 0
        for w, x in enumerate(words):
            if w % WORDS_PER_SUPER == 0:
                self._super.append(total)
            self._local.append(total - self._super[-1])
            total += x.bit_count()
        self.ones = total
        self._samples1 = [p for j, p in enumerate(self._positions(1)) if j % SAMPLE == 0]
        self._samples0 = [p for j, p in enumerate(self._positions(0)) if j % SAMPLE == 0]

    def _positions(self, bit: int):
        for w, x in enumerate(self._words):
            width = min(WORD, self.m - w * WORD)
            if not bit:
                x = ~x & ((1 << width) - 1)
            while x:
                low = x & -x
                yield w * WORD + low.bit_length()
                x ^= low

    def __len__(self):
        return self.m

    def __getitem__(self, i: int) -> int:
        self._check(i)
        return (self._words[(i - 1) // WORD] >> ((i - 1) % WORD)) & 1

    access = __getitem__

    def _check(self, i: int, lo: int = 1) -> None:
        if not lo <= i <= self.m:
            raise IndexError(f"position {i} outside {lo}..{self.m}")

    @property
    def zeros(self) -> int:
        return self.m - self.ones

    def rank(self, i: int) -> int:
        self._check(i, 0)
        w, r = divmod(i, WORD)
        if w == len(self._words):
            return self.ones
        out = self._super[w // WORDS_PER_SUPER] + self._local[w]
        if r:
            out += (self._words[w] & ((1 << r) - 1)).bit_count()
        return out

    def rank0(self, i: int) -> int:
        return i - self.rank(i)

    def prank(self, i: int) -> int:
        return self.rank(i) if self[i] else -1

    def select(self, j: int) -> int:
        if not 1 <= j <= self.ones:
            raise IndexError(f"select({j}) with {self.ones} ones")
        w = (self._samples1[(j - 1) // SAMPLE] - 1) // WORD
        seen = self.rank(w * WORD)
        while seen + self._words[w].bit_count() < j:
            seen += self._words[w].bit_count()
            w += 1
        return w * WORD + _nth_set_bit(self._words[w], j - seen) + 1

    def select0(self, j: int) -> int:
        if not 1 <= j <= self.zeros:
            raise IndexError(f"select0({j}) with {self.zeros} zeros")
        w = (self._samples0[(j - 1) // SAMPLE] - 1) // WORD
        seen = self.rank0(w * WORD)
        while True:
            width = min(WORD, self.m - w * WORD)
            inv = ~self._words[w] & ((1 << width) - 1)
            if seen + inv.bit_count() >= j:
                return w * WORD + _nth_set_bit(inv, j - seen) + 1
            seen += inv.bit_count()
            w += 1

    def bits(self) -> tuple[int, ...]:
        return tuple(self[i] for i in range(1, self.m + 1))


def plain_rank(v: PlainBitvector, i: int) -> int:
    return v.rank(i)


def plain_select(v: PlainBitvector, j: int) -> int:
    return v.select(j)


class CountingSelect:
    """Wraps a select-capable structure and counts select calls."""

    def __init__(self, v):
        self.v = v
        self.calls = 0

    @property
    def m(self) -> int:
        return self.v.m

    @property
    def ones(self) -> int:
        return self.v.ones

    def select(self, j: int) -> int:
        self.calls += 1
        return self.v.select(j)


def id_rank_by_binary_search(v, i: int) -> int:
    """Rank computed from select alone: the largest ``j`` with ``select(j) <= i``."""
    if not 0 <= i <= v.m:
        raise IndexError(f"position {i} outside 0..{v.m}")
    lo, hi = 0, v.ones
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if v.select(mid) <= i:
            lo = mid
        else:
            hi = mid - 1
    return lo


# -- enumerative block code ------------------------------------------------

def enumerative_encode(bits: Sequence[int]) -> int:
    """Lexicographic index of ``bits`` among blocks of its width and weight."""
    width, left = len(bits), sum(bits)
    offset = 0
    for pos, bit in enumerate(bits):
        if bit:
            # every block that agrees so far but has a 0 here comes first
            offset += math.comb(width - pos - 1, left)
            left -= 1
    return offset


def enumerative_decode(width: int, ones: int, offset: int) -> tuple[int, ...]:
    if not 0 <= ones <= width:
        raise ValueError("weight outside 0..width")
    if not 0 <= offset < math.comb(width, ones):
        raise ValueError("offset outside 0..C(width, ones) - 1")
    out = []
    left = ones
    for pos in range(width):
        zero_first = math.comb(width - pos - 1, left)
        if left and offset >= zero_first:
            out.append(1)
            offset -= zero_first
            left -= 1
        else:
            out.append(0)
    return tuple(out)


def payload_bits_for(width: int, ones: int) -> int:
    """``ceil(log2 C(width, ones))``."""
    return (math.comb(width, ones) - 1).bit_length()


@dataclass(frozen=True)
class EnumerativeBlock:
    width: int
    ones: int
    offset: int

    def __post_init__(self):
        if not 0 <= self.ones <= self.width or not 0 <= self.offset < math.comb(self.width, self.ones):
            raise ValueError(f"invalid block {self}")

    @classmethod
    def encode(cls, bits: Sequence[int]) -> "EnumerativeBlock":
        return cls(len(bits), sum(bits), enumerative_encode(bits))

    @property
    def payload_bits(self) -> int:
        return payload_bits_for(self.width, self.ones)

    def decode(self) -> tuple[int, ...]:
        return _decoded(self.width, self.ones, self.offset)[0]


@lru_cache(maxsize=1 << 14)
def _decoded(width: int, ones: int, offset: int):
    """Block bits, prefix counts, and positions of ones and zeros (0-based)."""
    bits = enumerative_decode(width, ones, offset)
    prefix = [0]
    for b in bits:
        prefix.append(prefix[-1] + b)
    where1 = tuple(p for p, b in enumerate(bits) if b)
    where0 = tuple(p for p, b in enumerate(bits) if not b)
    return bits, tuple(prefix), where1, where0


def default_block_size(n: int, sigma: int) -> int:
    """``max(8, ceil(sigma * log2(n)**2))``, capped at 4096."""
    b = math.ceil(sigma * math.log2(n) ** 2) if n > 1 else 0
    return min(MAX_BLOCK, max(8, b))


class SelectOverlay:
    """Unary block directory ``1^{x_1} 0 1^{x_2} 0 ... 1^{x_t} 0``.

    The block holding the j-th one is the number of zeros before the j-th 1.
    """

    def __init__(self, counts: Sequence[int]):
        bits = []
        for x in counts:
            bits.extend([1] * x)
            bits.append(0)
        self.s = PlainBitvector(bits)
        self.blocks = len(counts)

    def locate(self, j: int) -> tuple[int, int]:
        """(0-based block, 1-based rank inside that block) of the j-th one."""
        p = self.s.select(j)
        q = p - j
        before = self.s.select0(q) - q if q else 0
        return q, j - before

    @property
    def bits(self) -> int:
        return self.s.m


def build_select_overlay(counts: Sequence[int]) -> SelectOverlay:
    return SelectOverlay(counts)


class BoostedBitvector:
    """Fixed-block enumerative bitvector.

    With ``complemented`` set the stored blocks hold the negated bits and every
    query still answers for the original (logical) bitvector.
    """

    def __init__(self, m: int, b: int, blocks: Sequence[EnumerativeBlock], complemented: bool = False):
        if b < 1:
            raise ValueError("block size must be positive")
        t = -(-m // b)
        if len(blocks) != t or any(blk.width != min(b, m - q * b) for q, blk in enumerate(blocks)):
            raise ValueError("block widths do not tile the bitvector")
        self.m, self.b, self.complemented = m, b, complemented
        self.blocks = tuple(blocks)
        pre = [0]
        for blk in blocks:
            pre.append(pre[-1] + blk.ones)
        self.pre_ranks = tuple(pre)  # stored ones before each block, plus the total
        stored_ones = pre[-1]
        self.ones = m - stored_ones if complemented else stored_ones
        counts = [blk.width - blk.ones if complemented else blk.ones for blk in blocks]
        self.overlay = SelectOverlay(counts)

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def payload_bits(self) -> int:
        return sum(blk.payload_bits for blk in self.blocks)

    @property
    def nonempty_blocks(self) -> int:
        return sum(1 for blk in self.blocks if blk.ones)

    def _check(self, i: int, lo: int = 1) -> None:
        if not lo <= i <= self.m:
            raise IndexError(f"position {i} outside {lo}..{self.m}")

    def _block(self, q: int):
        blk = self.blocks[q]
        return _decoded(blk.width, blk.ones, blk.offset)

    def __len__(self):
        return self.m

    def __getitem__(self, i: int) -> int:
        self._check(i)
        q, r = divmod(i - 1, self.b)
        return self._block(q)[0][r] ^ self.complemented

    access = __getitem__

    def _stored_rank(self, i: int) -> int:
        if i == 0:
            return 0
        q, r = divmod(i - 1, self.b)
        return self.pre_ranks[q] + self._block(q)[1][r + 1]

    def rank(self, i: int) -> int:
        self._check(i, 0)
        stored = self._stored_rank(i)
        return i - stored if self.complemented else stored

    def prank(self, i: int) -> int:
        return self.rank(i) if self[i] else -1

    def select(self, j: int) -> int:
        if not 1 <= j <= self.ones:
            raise IndexError(f"select({j}) with {self.ones} ones")
        q, local = self.overlay.locate(j)
        positions = self._block(q)[3 if self.complemented else 2]
        return q * self.b + positions[local - 1] + 1

    def bits(self) -> tuple[int, ...]:
        out = []
        for q in range(self.t):
            out.extend(bit ^ self.complemented for bit in self._block(q)[0])
        return tuple(out)

    def overhead_bits(self) -> dict[str, int]:
        """Measured size of everything except the block payloads."""
        t = self.t
        word = max(1, self.m.bit_length())
        return {
            "pre_ranks": (t + 1) * word,
            "block_weights": t * max(1, self.b.bit_length()),
            "offset_pointers": t * max(1, self.payload_bits.bit_length()),
            "select_overlay": self.overlay.bits,
        }


def boost_build(bits: Iterable, b: int, complement: bool = False) -> BoostedBitvector:
    bits = _as_bits(bits)
    if b < 1:
        raise ValueError("block size must be positive")
    stored = [1 - x for x in bits] if complement else list(bits)
    blocks = [EnumerativeBlock.encode(stored[q:q + b]) for q in range(0, len(stored), b)]
    return BoostedBitvector(len(bits), b, blocks, complement)


def boost_prank(v: BoostedBitvector, i: int) -> int:
    return v.prank(i)


def boost_rank(v: BoostedBitvector, i: int) -> int:
    return v.rank(i)
