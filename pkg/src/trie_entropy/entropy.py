"""Entropy measures for tries.

All quantities are returned unnormalized, in bits: ``n * H_k`` for the
empirical entropy and ``(n - 1) * H^label_k`` for the label entropy, because
every inequality relating them is stated on unnormalized values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .combinatorics import count_tries
from .trie import (Alphabet, SymbolDistribution, Trie, build_from_edges, context_stats,
                   default_alphabet, symbol_distribution)

REL_TOL = 1e-9


def _bits(count: int, total: int) -> float:
    """``count * log2(total / count)`` with the 0 log(x/0) = 0 convention."""
    if count == 0 or count == total:
        return 0.0
    return count * math.log2(total / count)


def binary_entropy_bits(length: int, ones: int) -> float:
    """Unnormalized H_0 of a bitvector of ``length`` bits with ``ones`` ones."""
    return _bits(ones, length) + _bits(length - ones, length)


def string_h0(counts: Mapping | list | tuple) -> float:
    """Zero-th order entropy, bits per symbol, of a multiset of symbol counts."""
    values = list(counts.values()) if isinstance(counts, Mapping) else list(counts)
    total = sum(values)
    if total == 0:
        return 0.0
    return sum(_bits(x, total) for x in values) / total


def worst_case_entropy(dist: SymbolDistribution) -> float:
    """log2 of the number of tries sharing ``dist``."""
    return math.log2(count_tries(dist))


def empirical_entropy(t: Trie, k: int) -> float:
    """``n * H_k(t)``."""
    return empirical_entropy_from_stats(context_stats(t, k))


def empirical_entropy_from_stats(stats) -> float:
    return sum(binary_entropy_bits(nw, x) for nw, row in stats.entries.values() for x in row)


def label_entropy(t: Trie, k: int) -> float:
    """``(n - 1) * H^label_k(t)``: labels grouped by the context of their source."""
    stats = context_stats(t, k)
    total = 0.0
    for _, row in stats.entries.values():
        m = sum(row)
        total += sum(_bits(x, m) for x in row)
    return total


def nh0_bounds(t: Trie) -> tuple[float, float]:
    """Lower and upper bound on H^wc in terms of n * H_0."""
    nh0 = empirical_entropy(t, 0)
    n, sigma = t.n, t.sigma
    return nh0 - sigma * math.log2(n + 1) - math.log2(n), nh0 - math.log2(n)


def leq(a: float, b: float, tol: float = REL_TOL) -> bool:
    """``a <= b`` up to a relative tolerance (absolute near zero)."""
    return a <= b + tol * max(1.0, abs(a), abs(b))


@dataclass
class EntropyReport:
    k: int
    n: int
    sigma: int
    h_wc: float
    nh_k: float
    nh_label_k: float
    runs_r: int
    bounds: dict = field(default_factory=dict)

    def checks(self) -> dict[str, bool]:
        b = self.bounds
        return {
            "emp_wc.lower": leq(b["emp_wc.lower"], self.h_wc),
            "emp_wc.upper": leq(self.h_wc, b["emp_wc.upper"]),
            "label": leq(self.nh_k, b["label"]),
            "runs": leq(self.runs_r, b["runs"]),
        }


def entropy_report(t: Trie, k_max: int) -> list[EntropyReport]:
    """One report per order ``0..k_max`` with every inequality's sides evaluated."""
    from .xbwt import trie_runs

    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    h_wc = worst_case_entropy(symbol_distribution(t))
    lower, upper = nh0_bounds(t)
    r = trie_runs(t).r
    out = []
    for k in range(k_max + 1):
        nhk = empirical_entropy(t, k)
        nhl = label_entropy(t, k)
        bounds = {
            "emp_wc.lower": lower,
            "emp_wc.upper": upper,
            "label": nhl + 1.443 * t.n,
            "runs": nhk + t.sigma ** (k + 1),
        }
        out.append(EntropyReport(k, t.n, t.sigma, h_wc, nhk, nhl, r, bounds))
    return out


def make_level_alphabet_trie(y: int, h: int) -> Trie:
    """Complete y-ary trie of height ``h`` whose depth-d nodes all use the
    d-th block of ``y`` symbols.  Every k >= 1 context fixes the out-set, so
    n * H_k vanishes while the label entropy stays at (n - 1) log y."""
    if y < 1 or h < 0:
        raise ValueError("need y >= 1 and h >= 0")
    alphabet = default_alphabet(max(1, h * y))
    edges = []
    level = [0]
    nxt = 1
    for d in range(h):
        new_level = []
        for u in level:
            for j in range(y):
                edges.append((u, nxt, alphabet[d * y + j]))
                new_level.append(nxt)
                nxt += 1
        level = new_level
    return build_from_edges(nxt, edges, alphabet)


def make_complete_binary_trie(h: int) -> Trie:
    if h < 0:
        raise ValueError("need h >= 0")
    alphabet = Alphabet(["a", "b"])
    edges = []
    level = [0]
    nxt = 1
    for _ in range(h):
        new_level = []
        for u in level:
            for sym in "ab":
                edges.append((u, nxt, sym))
                new_level.append(nxt)
                nxt += 1
        level = new_level
    return build_from_edges(nxt, edges, alphabet)
