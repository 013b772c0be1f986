"""XBWT of a trie: co-lex order, compressed B_c bitvectors and queries.

Nodes are ranked 1..n by the co-lexicographic order of their root paths
(compared right to left, the empty path first).  ``B_c[i] = 1`` when the
i-th node has an outgoing ``c`` edge.  Children of c-edges occupy the ranks
``C[c] + 1 .. C[c] + n_c`` in the same order as their parents, which is all
that ``child``, ``parent`` and forward search need.
"""

from __future__ import annotations

import io
import math
import struct
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .entropy import binary_entropy_bits, empirical_entropy, leq, worst_case_entropy
from .succinct import (BoostedBitvector, EnumerativeBlock, boost_build, default_block_size,
                       payload_bits_for)
from .trie import Alphabet, Trie, context_stats, symbol_distribution

MAGIC = b"XBW1"
VERSION = 1
NO_SYMBOL = 0xFFFFFFFF
MODES = ("tokens", "bytes", "utf8")


class IndexFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ColexOrder:
    order: tuple[int, ...]  # node id -> 1-based rank
    inverse: tuple[int, ...]  # rank - 1 -> node id

    def rank(self, u: int) -> int:
        return self.order[u]

    def node(self, i: int) -> int:
        return self.inverse[i - 1]


def colex_sort(t: Trie) -> ColexOrder:
    """Rank nodes by refining ``(incoming label, parent's rank)`` to a fixpoint."""
    label, parent = t.label, t.parent
    keys = list(label)  # the root's -1 sorts first
    distinct = len(set(keys))
    while True:
        ranks = _dense_ranks(keys)
        keys = [(label[u], ranks[parent[u]] if u else -1) for u in range(t.n)]
        new_distinct = len(set(keys))
        if new_distinct == distinct:
            break
        distinct = new_distinct
    ranks = _dense_ranks(keys)
    assert len(set(ranks)) == t.n, "co-lex keys must separate all nodes"
    order = tuple(r + 1 for r in ranks)
    inverse = [0] * t.n
    for u, r in enumerate(order):
        inverse[r - 1] = u
    return ColexOrder(order, tuple(inverse))


def _dense_ranks(keys: list) -> list[int]:
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def xbwt_rows(t: Trie, order: ColexOrder | None = None) -> list[list[int]]:
    """Uncompressed ``B_c`` rows, one list of n bits per symbol."""
    order = order or colex_sort(t)
    rows = [[0] * t.n for _ in range(t.sigma)]
    for u in range(t.n):
        for c in t.out(u):
            rows[c][order.rank(u) - 1] = 1
    return rows


@dataclass(frozen=True)
class RunsProfile:
    r: int
    r_c: tuple[int, ...]


def _runs_of(rows: Sequence[Sequence[int]]) -> RunsProfile:
    per = []
    for row in rows:
        m = len(row)
        per.append(sum(1 for i in range(m) if row[i] and (i == m - 1 or not row[i + 1])))
    return RunsProfile(sum(per), tuple(per))


def trie_runs(t: Trie) -> RunsProfile:
    return _runs_of(xbwt_rows(t))


@dataclass(frozen=True)
class CountResult:
    count: int
    i: int
    j: int


class XbwtIndex:
    """Compressed XBWT: one :class:`BoostedBitvector` per symbol plus ``C``."""

    def __init__(self, n: int, alphabet: Alphabet, bitvectors: Sequence[BoostedBitvector],
                 block_size: int, mode: str = "tokens"):
        if mode not in MODES:
            raise ValueError(f"unknown alphabet mode {mode!r}")
        if len(bitvectors) != alphabet.sigma or any(v.m != n for v in bitvectors):
            raise ValueError("need one length-n bitvector per symbol")
        self.n, self.alphabet, self.block_size, self.mode = n, alphabet, block_size, mode
        self.bitvectors = tuple(bitvectors)
        counts = [v.ones for v in bitvectors]
        if sum(counts) != n - 1:
            raise ValueError("bitvectors must hold n - 1 ones in total")
        C, acc = [], 1
        for x in counts:
            C.append(acc)
            acc += x
        self.C = tuple(C)
        self.counts = tuple(counts)
        flipped = [c for c, v in enumerate(bitvectors) if v.complemented]
        self.complemented = flipped[0] if flipped else None

    @property
    def sigma(self) -> int:
        return self.alphabet.sigma

    def _sym(self, c: Hashable) -> int:
        if c not in self.alphabet:
            raise KeyError(f"symbol {c!r} is not in the alphabet")
        return self.alphabet.index(c)

    def _rank_ok(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"rank {i} outside 1..{self.n}")

    def child(self, i: int, c: Hashable) -> int:
        self._rank_ok(i)
        ci = self._sym(c)
        p = self.bitvectors[ci].prank(i)
        return -1 if p < 0 else self.C[ci] + p

    def incoming(self, i: int) -> int:
        """Index of the label entering the node of rank ``i >= 2``."""
        self._rank_ok(i)
        if i == 1:
            raise ValueError("the root has no incoming label")
        # last symbol with C[c] < i; symbols with n_c = 0 share C with their successor
        return bisect_left(self.C, i) - 1

    def parent(self, i: int) -> int:
        ci = self.incoming(i)
        return self.bitvectors[ci].select(i - self.C[ci])

    def out(self, i: int) -> tuple[int, ...]:
        self._rank_ok(i)
        return tuple(c for c, v in enumerate(self.bitvectors) if v[i])

    def kth_child(self, i: int, k: int) -> int:
        """Rank of the k-th child in label order, by scanning every B_c."""
        self._rank_ok(i)
        if k < 1:
            raise ValueError("k must be at least 1")
        for c, v in enumerate(self.bitvectors):
            if v[i]:
                k -= 1
                if k == 0:
                    return self.C[c] + v.rank(i)
        return -1

    def count(self, pattern: Sequence[Hashable]) -> CountResult:
        """Number of nodes whose path ends with ``pattern``, and their rank interval."""
        i, j = 1, self.n
        for c in pattern:
            if c not in self.alphabet:
                return CountResult(0, 1, 0)
            ci = self.alphabet.index(c)
            v = self.bitvectors[ci]
            i, j = self.C[ci] + v.rank(i - 1) + 1, self.C[ci] + v.rank(j)
            if i > j:
                return CountResult(0, i, j)
        return CountResult(j - i + 1, i, j)

    def prefix_query(self, pattern: Sequence[Hashable]) -> int:
        """Rank of the node spelling ``pattern`` from the root, or -1."""
        i = 1
        for c in pattern:
            if c not in self.alphabet:
                return -1
            i = self.child(i, c)
            if i < 0:
                return -1
        return i

    def runs(self) -> RunsProfile:
        return _runs_of([v.bits() for v in self.bitvectors])

    def rows(self) -> list[tuple[int, ...]]:
        return [v.bits() for v in self.bitvectors]

    @property
    def payload_bits(self) -> int:
        return sum(v.payload_bits for v in self.bitvectors)

    @property
    def nonempty_blocks(self) -> int:
        return sum(v.nonempty_blocks for v in self.bitvectors)

    def overhead_bits(self) -> dict[str, int]:
        out: dict[str, int] = {"C": (self.sigma + 1) * max(1, self.n.bit_length())}
        for v in self.bitvectors:
            for key, bits in v.overhead_bits().items():
                out[key] = out.get(key, 0) + bits
        return out

    def to_trie(self) -> Trie:
        """Rebuild the trie by walking the index from the root."""
        from .trie import _from_children

        kids = {i: [(c, self.C[c] + v.rank(i)) for c, v in enumerate(self.bitvectors) if v[i]]
                for i in range(1, self.n + 1)}
        return _from_children(self.alphabet, 1, kids)


def build_index(t: Trie, block_size: int | None = None, complement: bool | str = "auto",
                mode: str = "tokens") -> XbwtIndex:
    """Build the compressed index.

    ``complement="auto"`` stores the complement of B_c for a symbol with
    ``n_c > n / 2`` (there is at most one); ``True`` forces it for the most
    frequent symbol and ``False`` disables it.
    """
    n, sigma = t.n, t.sigma
    b = block_size or default_block_size(n, sigma)
    if b < 1:
        raise ValueError("block size must be positive")
    counts = symbol_distribution(t).counts
    heavy = max(range(sigma), key=lambda c: (counts[c], -c))
    if complement == "auto":
        flip = heavy if 2 * counts[heavy] > n else None
    elif complement:
        flip = heavy
    else:
        flip = None
    rows = xbwt_rows(t)
    vectors = [boost_build(row, b, complement=(c == flip)) for c, row in enumerate(rows)]
    return XbwtIndex(n, t.alphabet, vectors, b, mode)


# -- space accounting ------------------------------------------------------

@dataclass
class SpaceReport:
    n: int
    sigma: int
    block_size: int
    payload_bits: int
    overhead_bits: dict
    nonempty_blocks: int
    per_k: list = field(default_factory=list)
    log_binoms: float = 0.0
    wc_bound: float = 0.0
    balanced: bool = False
    partition: list = field(default_factory=list)

    def checks(self) -> dict[str, bool]:
        out = {f"payload.k{row['k']}": row["ok"] for row in self.per_k}
        out["payload.wc"] = leq(self.payload_bits, self.wc_bound)
        if self.balanced:
            # every n_c <= n/2: sum_c log C(n, n_c) >= n - 1 - log n
            out["wc.floor"] = leq(self.n - 1 - math.log2(self.n), self.log_binoms)
        for row in self.partition:
            out[f"partition.k{row['k']}"] = row["ok"]
        return out


def _block_entropy(bits: Sequence[int], b: int) -> float:
    return sum(binary_entropy_bits(len(bits[q:q + b]), sum(bits[q:q + b])) for q in range(0, len(bits), b))


def space_report(idx: XbwtIndex, t: Trie, k_max: int = 1) -> SpaceReport:
    """Measured payload against the per-order bound
    ``nH_k + sigma*ceil(n/b) + nonempty + sigma*(l_k - 1)*b``."""
    n, sigma, b = idx.n, idx.sigma, idx.block_size
    payload = idx.payload_bits
    nonempty = idx.nonempty_blocks
    report = SpaceReport(n, sigma, b, payload, idx.overhead_bits(), nonempty)
    order = colex_sort(t)
    rows = xbwt_rows(t, order)
    for k in range(k_max + 1):
        stats = context_stats(t, k)
        ell = len(stats.entries)
        nhk = empirical_entropy(t, k)
        bound = nhk + sigma * -(-n // b) + nonempty + sigma * (ell - 1) * b
        report.per_k.append({"k": k, "nh_k": nhk, "contexts": ell, "bound": bound,
                             "ok": leq(payload, bound)})
        # fixed blocks versus the context partition, symbol by symbol
        blocks = sum(_block_entropy(row, b) for row in rows)
        contexts = sum(binary_entropy_bits(nw, x) for nw, row in stats.entries.values() for x in row)
        slack = sigma * (ell - 1) * b
        report.partition.append({"k": k, "blocks": blocks, "contexts": contexts, "slack": slack,
                                 "ok": leq(blocks, contexts + slack)})
    # sum_c log C(n, n_c) = H^wc + log n; each block ceiling adds at most one bit
    dist = symbol_distribution(t)
    log_binoms = worst_case_entropy(dist) + math.log2(n)
    report.log_binoms = log_binoms
    report.wc_bound = log_binoms + nonempty
    report.balanced = all(2 * x <= n for x in dist.counts)
    for row in report.per_k:
        assert row["ok"], f"payload {payload} exceeds the order-{row['k']} bound {row['bound']}"
    return report


# -- container -------------------------------------------------------------

def _pack_lsb(bits: Sequence[int]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for p, bit in enumerate(bits):
        if bit:
            out[p // 8] |= 1 << (p % 8)
    return bytes(out)


def _unpack_lsb(data: bytes, m: int) -> list[int]:
    return [(data[p // 8] >> (p % 8)) & 1 for p in range(m)]


def dumps(idx: XbwtIndex) -> bytes:
    """Serialize to the XBW1 container (layout in docs/FORMATS.md)."""
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<HQIB", VERSION, idx.n, idx.sigma, MODES.index(idx.mode)))
    for s in idx.alphabet:
        if isinstance(s, str):
            raw = s.encode("utf-8")
            out.write(struct.pack("<BI", 0, len(raw)))
            out.write(raw)
        elif isinstance(s, int) and s >= 0:
            out.write(struct.pack("<BQ", 1, s))
        else:
            raise IndexFormatError(f"cannot serialize symbol {s!r}")
    flip = NO_SYMBOL if idx.complemented is None else idx.complemented
    out.write(struct.pack("<II", flip, idx.block_size))
    out.write(struct.pack(f"<{idx.sigma}Q", *idx.C))
    for v in idx.bitvectors:
        out.write(struct.pack(f"<{v.t}Q", *v.pre_ranks[:-1]))
        for blk in v.blocks:
            out.write(struct.pack("<I", blk.ones))
            out.write(blk.offset.to_bytes((blk.payload_bits + 7) // 8, "little"))
        s_bits = v.overlay.s.bits()
        out.write(struct.pack("<Q", len(s_bits)))
        out.write(_pack_lsb(s_bits))
    return out.getvalue()


class _Reader:
    def __init__(self, data: bytes):
        self.data, self.pos = data, 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise IndexFormatError("truncated index file")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: str):
        fmt = "<" + fmt
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def loads(data: bytes) -> XbwtIndex:
    rd = _Reader(data)
    if rd.take(4) != MAGIC:
        raise IndexFormatError("not an XBW1 index (bad magic)")
    version, n, sigma, mode = rd.unpack("HQIB")
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    if n < 1 or sigma < 1 or mode >= len(MODES):
        raise IndexFormatError("bad header fields")
    symbols = []
    for _ in range(sigma):
        (tag,) = rd.unpack("B")
        if tag == 0:
            (size,) = rd.unpack("I")
            symbols.append(rd.take(size).decode("utf-8"))
        elif tag == 1:
            symbols.append(rd.unpack("Q")[0])
        else:
            raise IndexFormatError("bad symbol tag")
    flip, b = rd.unpack("II")
    if b < 1 or (flip != NO_SYMBOL and flip >= sigma):
        raise IndexFormatError("bad block size or complemented symbol")
    C = rd.unpack(f"{sigma}Q")
    t = -(-n // b)
    vectors = []
    for c in range(sigma):
        pre = rd.unpack(f"{t}Q")
        blocks = []
        for q in range(t):
            width = min(b, n - q * b)
            (ones,) = rd.unpack("I")
            if ones > width:
                raise IndexFormatError("block weight exceeds block width")
            size = (payload_bits_for(width, ones) + 7) // 8
            offset = int.from_bytes(rd.take(size), "little")
            try:
                blocks.append(EnumerativeBlock(width, ones, offset))
            except ValueError as exc:
                raise IndexFormatError(str(exc)) from None
        v = BoostedBitvector(n, b, blocks, complemented=(c == flip))
        if tuple(pre) != v.pre_ranks[:-1]:
            raise IndexFormatError("stored block ranks disagree with block weights")
        (s_len,) = rd.unpack("Q")
        s_bits = _unpack_lsb(rd.take((s_len + 7) // 8), s_len)
        if list(v.overlay.s.bits()) != s_bits:
            raise IndexFormatError("select overlay disagrees with block weights")
        vectors.append(v)
    if rd.pos != len(data):
        raise IndexFormatError("trailing bytes after index")
    try:
        idx = XbwtIndex(n, Alphabet(symbols), vectors, b, MODES[mode])
    except ValueError as exc:
        raise IndexFormatError(str(exc)) from None
    if idx.C != tuple(C):
        raise IndexFormatError("stored C array disagrees with the bitvectors")
    return idx
