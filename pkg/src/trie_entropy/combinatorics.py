"""Counting tries with a fixed symbol distribution.

A trie maps to the sigma x n binary matrix whose j-th column marks the
labels leaving the j-th node in pre-order.  Column weights minus one give the
degree sequence D and its prefix sums L; the matrix is the image of a trie
exactly when L stays non-negative before its final -1.  Every matrix has
exactly one such cyclic rotation, which yields the counting formula
``(1/n) * prod C(n, n_c)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .trie import Alphabet, SymbolDistribution, Trie, default_alphabet, preorder

DEFAULT_CAP = 10**6


class NotLukasiewiczError(ValueError):
    """The matrix is not the image of any trie.

    ``index`` is the first 1-based position ``i < n`` with ``L[i] < 0``:
    after node ``i`` no edge is left pending for node ``i + 1``.
    """

    def __init__(self, index: int):
        super().__init__(f"L[{index}] < 0: no pending edge left for node {index + 1}")
        self.index = index


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeMatrix:
    """Binary matrix with one row per alphabet symbol and one column per node."""

    alphabet: Alphabet
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.alphabet.sigma:
            raise ValueError("need one row per alphabet symbol")
        widths = {len(r) for r in self.rows}
        if len(widths) != 1 or 0 in widths:
            raise ValueError("rows must be non-empty and of equal length")
        if any(b not in (0, 1) for r in self.rows for b in r):
            raise ValueError("matrix entries must be 0 or 1")
        if sum(map(sum, self.rows)) != self.n - 1:
            raise ValueError(f"matrix has {sum(map(sum, self.rows))} ones, expected n - 1 = {self.n - 1}")

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def sigma(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    @property
    def degrees(self) -> list[int]:
        """D: column weight minus one."""
        return [sum(r[j] for r in self.rows) - 1 for j in range(self.n)]

    @property
    def path(self) -> list[int]:
        """L: prefix sums of D (``L[-1] == -1`` always)."""
        return list(itertools.accumulate(self.degrees))

    def distribution(self) -> SymbolDistribution:
        return SymbolDistribution(self.alphabet, tuple(sum(r) for r in self.rows), self.n)

    def to_text(self) -> str:
        lines = [f"{self.sigma} {self.n}"]
        lines += ["".join(map(str, r)) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | None = None) -> "DegreeMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        try:
            sigma, n = map(int, lines[0].split())
        except ValueError:
            raise ValueError("matrix header must be 'sigma n'") from None
        body = lines[1:]
        if len(body) != sigma or any(len(r) != n or set(r) - {"0", "1"} for r in body):
            raise ValueError(f"expected {sigma} rows of {n} characters '0'/'1'")
        alphabet = alphabet or default_alphabet(sigma)
        return cls(alphabet, tuple(tuple(int(ch) for ch in r) for r in body))


def lukasiewicz_violation(m: DegreeMatrix) -> int | None:
    """First 1-based ``i < n`` with ``L[i] < 0``, or None if L is a valid path."""
    for i, x in enumerate(m.path[:-1], start=1):
        if x < 0:
            return i
    return None


def is_lukasiewicz(m: DegreeMatrix) -> bool:
    return lukasiewicz_violation(m) is None


def trie_to_matrix(t: Trie) -> DegreeMatrix:
    order = preorder(t)
    rows = [[0] * t.n for _ in range(t.sigma)]
    for j, u in enumerate(order):
        for c in t.out(u):
            rows[c][j] = 1
    return DegreeMatrix(t.alphabet, tuple(map(tuple, rows)))


def matrix_to_trie(m: DegreeMatrix) -> Trie:
    """Invert :func:`trie_to_matrix`; raises :class:`NotLukasiewiczError`.

    Node ``j`` hangs from the deepest pending edge; its outgoing edges are
    labelled, left to right, by the rows holding a 1 in column ``j``.
    """
    bad = lukasiewicz_violation(m)
    if bad is not None:
        raise NotLukasiewiczError(bad)
    parent, label = [-1], [-1]
    pending: list[tuple[int, int]] = []
    for j in range(m.n):
        if j:
            p, c = pending.pop()
            parent.append(p)
            label.append(c)
        labels = [c for c in range(m.sigma) if m.rows[c][j]]
        pending.extend((j, c) for c in reversed(labels))
    assert not pending
    return Trie(m.alphabet, parent, label)


def rotate(m: DegreeMatrix, r: int) -> DegreeMatrix:
    """Move the last ``r mod n`` columns to the front."""
    if r < 0:
        raise ValueError("rotation must be non-negative")
    r %= m.n
    return DegreeMatrix(m.alphabet, tuple(row[m.n - r:] + row[:m.n - r] for row in m.rows))


def canonical_rotation(m: DegreeMatrix) -> int:
    """The unique ``r`` in ``[0, n)`` whose rotation is the image of a trie."""
    path = m.path
    # L may hit its minimum several times; only the leftmost one works
    i = path.index(min(path)) + 1
    r = (m.n - i) % m.n
    assert is_lukasiewicz(rotate(m, r)), "cycle lemma violated"
    return r


def count_tries(dist: SymbolDistribution) -> int:
    total = math.prod(math.comb(dist.n, c) for c in dist.counts)
    q, rem = divmod(total, dist.n)
    assert rem == 0, "prod C(n, n_c) is always divisible by n"
    return q


def count_all_tries(n: int, sigma: int) -> int:
    """Number of tries with ``n`` nodes over ``sigma`` symbols."""
    if n < 1 or sigma < 1:
        raise ValueError("n and sigma must be positive")
    q, rem = divmod(math.comb(n * sigma, n - 1), n)
    assert rem == 0
    return q


def distributions(n: int, alphabet: Alphabet | int) -> Iterator[SymbolDistribution]:
    """All symbol distributions with ``n`` nodes (compositions of n - 1)."""
    if isinstance(alphabet, int):
        alphabet = default_alphabet(alphabet)
    sigma = alphabet.sigma
    for bars in itertools.combinations(range(n - 1 + sigma - 1), sigma - 1):
        edges = (-1,) + bars + (n - 1 + sigma - 1,)
        counts = tuple(edges[i + 1] - edges[i] - 1 for i in range(sigma))
        yield SymbolDistribution(alphabet, counts, n)


def matrix_space_size(dist: SymbolDistribution) -> int:
    return math.prod(math.comb(dist.n, c) for c in dist.counts)


def _row_patterns(n: int, ones: int) -> list[tuple[int, ...]]:
    pats = []
    for pos in itertools.combinations(range(n), ones):
        row = [0] * n
        for p in pos:
            row[p] = 1
        pats.append(tuple(row))
    pats.sort()
    return pats


def enumerate_matrices(dist: SymbolDistribution, cap: int = DEFAULT_CAP) -> Iterator[DegreeMatrix]:
    """All matrices with the given row weights, in row-major lexicographic order."""
    size = matrix_space_size(dist)
    if size > cap:
        raise EnumerationCapError(f"{size} matrices exceed the enumeration cap {cap}")
    per_row = [_row_patterns(dist.n, c) for c in dist.counts]
    for rows in itertools.product(*per_row):
        yield DegreeMatrix(dist.alphabet, rows)


def enumerate_tries(dist: SymbolDistribution, cap: int = DEFAULT_CAP) -> list[Trie]:
    """Brute force: keep every matrix whose L is a Łukasiewicz path, invert it."""
    return [matrix_to_trie(m) for m in enumerate_matrices(dist, cap) if is_lukasiewicz(m)]


def random_matrix(dist: SymbolDistribution, rng) -> DegreeMatrix:
    rows = []
    for c in dist.counts:
        row = [0] * dist.n
        for p in rng.sample(range(dist.n), c):
            row[p] = 1
        rows.append(tuple(row))
    return DegreeMatrix(dist.alphabet, tuple(rows))
