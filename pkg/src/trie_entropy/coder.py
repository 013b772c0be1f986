"""Arithmetic coding of tries with a static order-k context model.

Nodes are visited in pre-order and, for each node, every alphabet symbol in
order: the current interval is split into an "absent" lower part of relative
width ``1 - p`` and a "present" upper part of width ``p``, where
``p = n_{w,c} / n_w`` for the node's context ``w``.  The final interval has
width exactly ``2 ** -(n H_k)``; the code is the midpoint truncated to
``ceil(log2(2 / s))`` bits.

Interval state is exact: numerators over a common integer denominator.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .trie import (ROOT_LABEL, Alphabet, ContextStats, Trie, all_contexts, context_stats,
                   preorder)

MAGIC = b"TAC1"


class ContainerError(ValueError):
    pass


class RationalInterval:
    """``[low/denom, (low + size)/denom)`` with integer numerators."""

    __slots__ = ("low", "size", "denom")

    def __init__(self, low: int = 0, size: int = 1, denom: int = 1):
        self.low, self.size, self.denom = low, size, denom
        self.check()

    @property
    def l(self) -> Fraction:
        return Fraction(self.low, self.denom)

    @property
    def s(self) -> Fraction:
        return Fraction(self.size, self.denom)

    def check(self) -> None:
        if not (self.low >= 0 and self.size > 0 and self.low + self.size <= self.denom):
            raise AssertionError("interval left [0, 1) or collapsed")

    def split(self, ones: int, total: int) -> int:
        """Numerator, over ``denom * total``, of the absent/present boundary."""
        return self.low * total + self.size * (total - ones)

    def shrink(self, ones: int, total: int, present: bool) -> None:
        """Keep the sub-interval of the outcome; p = ones / total."""
        if ones == 0 or ones == total:
            if present != (ones == total):
                raise ValueError("outcome has probability zero under the model")
            return  # probability one: the interval is unchanged
        if present:
            self.low = self.split(ones, total)
            self.size *= ones
        else:
            self.low *= total
            self.size *= total - ones
        self.denom *= total
        self.check()


def _ceil_log2_ratio(num: int, den: int) -> int:
    """Smallest d with ``2**d >= num / den`` (num, den > 0)."""
    d = max(0, num.bit_length() - den.bit_length())
    while (den << d) < num:
        d += 1
    while d > 0 and (den << (d - 1)) >= num:
        d -= 1
    return d


@dataclass(frozen=True)
class TrieCode:
    bits: str
    k: int
    alphabet: Alphabet
    model: ContextStats = field(repr=False)
    low: Fraction | None = field(default=None, compare=False)
    size: Fraction | None = field(default=None, compare=False)

    @property
    def d(self) -> int:
        return len(self.bits)

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def interval_bits(self) -> float | None:
        """``-log2 s`` of the final interval (None after deserialization)."""
        if self.size is None:
            return None
        return math.log2(self.size.denominator) - math.log2(self.size.numerator)


def compress(t: Trie, k: int) -> TrieCode:
    if k < 0:
        raise ValueError("k must be non-negative")
    stats = context_stats(t, k)
    ctx = all_contexts(t, k)
    iv = RationalInterval()
    for u in preorder(t):
        nw, row = stats.entries[ctx[u]]
        present = set(t.out(u))
        for c in range(t.sigma):
            iv.shrink(row[c], nw, c in present)
    # d = ceil(log2(2 / s)) and the truncated midpoint l + s/2
    d = _ceil_log2_ratio(2 * iv.denom, iv.size)
    x = ((2 * iv.low + iv.size) << d) // (2 * iv.denom)
    assert iv.low << d <= x * iv.denom < (iv.low + iv.size) << d, "truncation left the interval"
    bits = format(x, f"0{d}b") if d else ""
    return TrieCode(bits, k, t.alphabet, stats, iv.l, iv.s)


def decompress(code: TrieCode) -> Trie:
    model, k, sigma = code.model, code.k, code.alphabet.sigma
    if model.k != k or model.sigma != sigma:
        raise ValueError("model order or alphabet size does not match the code")
    model.validate()
    n, d = model.n, code.d
    # x = target/denom throughout; starts as bits / 2**d
    target = int(code.bits, 2) if d else 0
    iv = RationalInterval(0, 1 << d, 1 << d)
    parent, label = [-1], [ROOT_LABEL]
    ctx = [(ROOT_LABEL,) * k]
    pending: list[tuple[int, int]] = []
    u = 0
    for i in range(n):
        entry = model.entries.get(ctx[u])
        if entry is None:
            raise ValueError(f"context {ctx[u]!r} missing from the model")
        nw, row = entry
        kids = []
        for c in range(sigma):
            ones = row[c]
            if ones == 0 or ones == nw:
                present = ones == nw
            else:
                present = target * nw >= iv.split(ones, nw)
            before = iv.denom
            iv.shrink(ones, nw, present)
            target *= iv.denom // before
            if present:
                kids.append(c)
        pending.extend((u, c) for c in reversed(kids))
        if i == n - 1:
            break
        if not pending:
            raise ValueError("code describes a forest: no pending edge for the next node")
        p, c = pending.pop()
        u = len(parent)
        parent.append(p)
        label.append(c)
        ctx.append((ctx[p] + (c,))[1:] if k else ())
    if pending:
        raise ValueError("code leaves edges without target nodes")
    return Trie(code.alphabet, parent, label)


def model_size_bits(model: ContextStats | None, sigma: int, k: int, n: int) -> int:
    """``(sigma + 1) * sigma**k * ceil(log2 n)``: budget for the n_w, n_{w,c} tables."""
    return (sigma + 1) * sigma ** k * (n - 1).bit_length()


# -- container -------------------------------------------------------------

def _put_varint(out: io.BytesIO, x: int) -> None:
    if x < 0:
        raise ValueError("varints are unsigned")
    while True:
        byte = x & 0x7F
        x >>= 7
        out.write(bytes([byte | (0x80 if x else 0)]))
        if not x:
            return


def _get_varint(buf: io.BytesIO) -> int:
    x = shift = 0
    while True:
        b = buf.read(1)
        if not b:
            raise ContainerError("truncated varint")
        x |= (b[0] & 0x7F) << shift
        shift += 7
        if not b[0] & 0x80:
            return x


def _context_id(w: tuple[int, ...], sigma: int) -> int:
    cid = 0
    for c in w:
        cid = cid * (sigma + 1) + (c + 1)
    return cid


def _context_from_id(cid: int, k: int, sigma: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        cid, digit = divmod(cid, sigma + 1)
        out.append(digit - 1)
    if cid:
        raise ContainerError("context id out of range")
    return tuple(reversed(out))


def pack_bits(bits: str) -> bytes:
    """MSB-first, zero padded to a whole byte."""
    if not bits:
        return b""
    pad = -len(bits) % 8
    return int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big")


def unpack_bits(data: bytes, d: int) -> str:
    if len(data) != (d + 7) // 8:
        raise ContainerError("payload length does not match d")
    if d == 0:
        return ""
    return format(int.from_bytes(data, "big"), f"0{len(data) * 8}b")[:d]


def write_symbols(out: io.BytesIO, alphabet: Alphabet) -> None:
    for s in alphabet:
        if isinstance(s, str):
            raw = s.encode("utf-8")
            out.write(b"\x00")
            _put_varint(out, len(raw))
            out.write(raw)
        elif isinstance(s, int) and s >= 0:
            out.write(b"\x01")
            _put_varint(out, s)
        else:
            raise ContainerError(f"cannot serialize symbol {s!r}")


def read_symbols(buf: io.BytesIO, sigma: int) -> Alphabet:
    syms = []
    for _ in range(sigma):
        tag = buf.read(1)
        if tag == b"\x00":
            size = _get_varint(buf)
            raw = buf.read(size)
            if len(raw) != size:
                raise ContainerError("truncated symbol")
            syms.append(raw.decode("utf-8"))
        elif tag == b"\x01":
            syms.append(_get_varint(buf))
        else:
            raise ContainerError("bad symbol tag")
    try:
        return Alphabet(syms)
    except ValueError as exc:
        raise ContainerError(str(exc)) from None


def dumps(code: TrieCode) -> bytes:
    """Serialize to the TAC1 container (layout in docs/FORMATS.md)."""
    out = io.BytesIO()
    out.write(MAGIC)
    sigma = code.alphabet.sigma
    for x in (code.k, code.n, sigma):
        _put_varint(out, x)
    write_symbols(out, code.alphabet)
    entries = sorted((_context_id(w, sigma), nw, row) for w, (nw, row) in code.model.entries.items())
    _put_varint(out, len(entries))
    prev = 0
    for cid, nw, row in entries:
        _put_varint(out, cid - prev)
        prev = cid
        _put_varint(out, nw)
        for x in row:
            _put_varint(out, x)
    _put_varint(out, code.d)
    out.write(pack_bits(code.bits))
    return out.getvalue()


def loads(data: bytes) -> TrieCode:
    buf = io.BytesIO(data)
    if buf.read(4) != MAGIC:
        raise ContainerError("not a TAC1 container (bad magic)")
    k, n, sigma = (_get_varint(buf) for _ in range(3))
    if sigma < 1 or n < 1:
        raise ContainerError("n and sigma must be positive")
    alphabet = read_symbols(buf, sigma)
    entries = {}
    cid = 0
    for _ in range(_get_varint(buf)):
        cid += _get_varint(buf)
        nw = _get_varint(buf)
        row = tuple(_get_varint(buf) for _ in range(sigma))
        entries[_context_from_id(cid, k, sigma)] = (nw, row)
    model = ContextStats(k, n, sigma, entries)
    try:
        model.validate()
    except ValueError as exc:
        raise ContainerError(f"inconsistent model: {exc}") from None
    d = _get_varint(buf)
    bits = unpack_bits(buf.read(), d)
    return TrieCode(bits, k, alphabet, model)
