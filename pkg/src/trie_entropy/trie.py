"""Tries (cardinal trees): construction, traversal and context statistics.

A trie is stored as two flat arrays indexed by node id, ``parent`` and
``label``, where node ids are assigned in pre-order and children are visited
in alphabet order.  Symbols on edges are kept as indices into the trie's
:class:`Alphabet`; the virtual root symbol ``#`` never appears on an edge and
is encoded as ``-1`` wherever a context string needs it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

ROOT_LABEL = -1


class _Pad:
    """The virtual ``#`` symbol used to left-pad shallow contexts."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "#"

    def __reduce__(self):
        return (_Pad, ())


PAD = _Pad()


class TrieError(ValueError):
    """Raised when an input does not describe a valid trie."""


class SymbolError(TrieError):
    pass


class DuplicateLabelError(TrieError):
    pass


class CycleError(TrieError):
    pass


class DisconnectedError(TrieError):
    pass


class Alphabet:
    """Ordered alphabet.  The order of ``symbols`` is the total order used
    everywhere (matrix rows, sibling order, co-lex comparisons)."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[Hashable]):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if any(s is PAD for s in symbols):
            raise ValueError("the padding symbol # cannot be an alphabet member")
        index = {s: i for i, s in enumerate(symbols)}
        if len(index) != len(symbols):
            raise ValueError("alphabet symbols must be distinct")
        self.symbols = symbols
        self._index = index

    @classmethod
    def of(cls, symbols: Iterable[Hashable]) -> "Alphabet":
        """Alphabet of the distinct given symbols in their natural order."""
        return cls(sorted(set(symbols)))

    @property
    def sigma(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __getitem__(self, i: int):
        return self.symbols[i]

    def index(self, symbol) -> int:
        return self._index[symbol]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"


def default_alphabet(sigma: int) -> Alphabet:
    """``a, b, c, ...`` for small alphabets, ``s000, s001, ...`` otherwise."""
    if sigma <= 26:
        return Alphabet(chr(ord("a") + i) for i in range(sigma))
    return Alphabet(f"s{i:03d}" for i in range(sigma))


class Trie:
    """Immutable trie with pre-order node ids (root is node 0).

    ``marked`` records which nodes end a dictionary string; it is carried
    along for dictionary round trips but is not part of trie equality.
    """

    __slots__ = ("alphabet", "parent", "label", "marked", "children", "depth")

    def __init__(self, alphabet: Alphabet, parent: Sequence[int], label: Sequence[int],
                 marked: Iterable[int] = ()):
        self.alphabet = alphabet
        self.parent = tuple(parent)
        self.label = tuple(label)
        self.marked = frozenset(marked)
        n = len(self.parent)
        children: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        depth = [0] * n
        for v in range(1, n):
            p = self.parent[v]
            children[p].append((self.label[v], v))
            depth[v] = depth[p] + 1
        self.children = tuple(tuple(cs) for cs in children)
        self.depth = tuple(depth)

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def sigma(self) -> int:
        return self.alphabet.sigma

    @property
    def height(self) -> int:
        return max(self.depth)

    def out(self, u: int) -> tuple[int, ...]:
        """Indices of the labels leaving ``u``, ascending."""
        return tuple(c for c, _ in self.children[u])

    def child(self, u: int, c: int) -> int:
        for label, v in self.children[u]:
            if label == c:
                return v
        return -1

    def path(self, u: int) -> tuple[int, ...]:
        """Label indices on the root-to-``u`` path."""
        out = []
        while u != 0:
            out.append(self.label[u])
            u = self.parent[u]
        return tuple(reversed(out))

    def path_symbols(self, u: int) -> tuple:
        return tuple(self.alphabet[c] for c in self.path(u))

    def strings(self) -> list[tuple]:
        """Dictionary strings (marked nodes), sorted."""
        return sorted(self.path_symbols(u) for u in self.marked)

    def edges(self) -> list[tuple[int, int, Hashable]]:
        return [(self.parent[v], v, self.alphabet[self.label[v]]) for v in range(1, self.n)]

    def effective(self) -> "Trie":
        """Same trie over the alphabet of symbols that label at least one edge."""
        used = sorted(set(self.label[1:]))
        if not used:
            return self
        remap = {c: i for i, c in enumerate(used)}
        alphabet = Alphabet(self.alphabet[c] for c in used)
        label = (ROOT_LABEL,) + tuple(remap[c] for c in self.label[1:])
        return Trie(alphabet, self.parent, label, self.marked)

    def __eq__(self, other):
        return (isinstance(other, Trie) and self.alphabet == other.alphabet
                and self.parent == other.parent and self.label == other.label)

    def __hash__(self):
        return hash((self.alphabet, self.parent, self.label))

    def __repr__(self):
        return f"Trie(n={self.n}, sigma={self.sigma})"


def _from_children(alphabet: Alphabet, root, kids: dict, marked_keys=()) -> Trie:
    """Assign pre-order ids to a tree given as ``key -> [(label_idx, key)]``."""
    parent, label, marked = [], [], []
    marked_keys = set(marked_keys)
    stack = [(root, -1, ROOT_LABEL)]
    while stack:
        key, p, c = stack.pop()
        u = len(parent)
        parent.append(p)
        label.append(c)
        if key in marked_keys:
            marked.append(u)
        for c2, k2 in sorted(kids.get(key, ()), reverse=True):
            stack.append((k2, u, c2))
    return Trie(alphabet, parent, label, marked)


def build_from_dictionary(strings: Iterable[Sequence], alphabet: Alphabet | None = None) -> Trie:
    """Trie with one node per distinct prefix of ``strings``.

    Strings are sequences of symbols (``str`` gives characters, ``bytes``
    gives ints).  When ``alphabet`` is omitted it is the sorted set of symbols
    that occur; an empty dictionary then gets the one-symbol alphabet ``{a}``.
    """
    strings = [tuple(s) for s in strings]
    if alphabet is None:
        syms = {c for s in strings for c in s}
        alphabet = Alphabet.of(syms) if syms else default_alphabet(1)
    kids: dict[tuple, dict[int, tuple]] = {(): {}}
    marked = set()
    for s in strings:
        node: tuple = ()
        for pos, sym in enumerate(s):
            if sym not in alphabet:
                raise SymbolError(f"symbol {sym!r} at position {pos} of {s!r} is not in the alphabet")
            c = alphabet.index(sym)
            nxt = node + (c,)
            if nxt not in kids:
                kids[nxt] = {}
                kids[node][c] = nxt
            node = nxt
        marked.add(node)
    return _from_children(alphabet, (), {k: list(v.items()) for k, v in kids.items()}, marked)


def build_from_edges(n: int, edges: Iterable[tuple[int, int, Hashable]],
                     alphabet: Alphabet | None = None) -> Trie:
    """Validate an edge list ``(parent, child, symbol)`` rooted at node 0.

    Node ids may be any labelling of ``0..n-1`` with 0 as the root; the
    returned trie is renumbered in pre-order.
    """
    edges = list(edges)
    if n < 1:
        raise TrieError("a trie has at least one node")
    if alphabet is None:
        syms = {e[2] for e in edges}
        alphabet = Alphabet.of(syms) if syms else default_alphabet(1)
    parent_of: dict[int, int] = {}
    kids: dict[int, dict[int, int]] = {}
    for p, v, sym in edges:
        if not (0 <= p < n and 0 <= v < n):
            raise TrieError(f"edge ({p}, {v}) refers to a node outside 0..{n - 1}")
        if sym not in alphabet:
            raise SymbolError(f"edge ({p}, {v}) has symbol {sym!r} outside the alphabet")
        if v == 0:
            raise CycleError(f"edge ({p}, {v}) enters the root")
        if v in parent_of:
            raise TrieError(f"node {v} has more than one parent")
        c = alphabet.index(sym)
        siblings = kids.setdefault(p, {})
        if c in siblings:
            raise DuplicateLabelError(f"node {p} has two outgoing edges labelled {sym!r}")
        siblings[c] = v
        parent_of[v] = p
    orphans = [v for v in range(1, n) if v not in parent_of]
    if orphans:
        raise DisconnectedError(f"node {orphans[0]} has no parent")
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in kids.get(u, {}).values():
            seen.add(v)
            stack.append(v)
    if len(seen) != n:
        stray = min(set(range(n)) - seen)
        raise CycleError(f"node {stray} lies on a cycle unreachable from the root")
    return _from_children(alphabet, 0, {k: list(v.items()) for k, v in kids.items()})


def preorder(t: Trie) -> list[int]:
    """Node ids in pre-order, children in label order."""
    out = []
    stack = [0]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(v for _, v in reversed(t.children[u]))
    return out


def context_indices(t: Trie, u: int, k: int) -> tuple[int, ...]:
    """Last ``k`` label indices above ``u``, left-padded with ``-1``."""
    out = []
    while len(out) < k and u != 0:
        out.append(t.label[u])
        u = t.parent[u]
    out.extend([ROOT_LABEL] * (k - len(out)))
    return tuple(reversed(out))


def context(t: Trie, u: int, k: int) -> tuple:
    """Length-``k`` context of ``u`` as symbols, padded with :data:`PAD`."""
    return tuple(PAD if c == ROOT_LABEL else t.alphabet[c] for c in context_indices(t, u, k))


def all_contexts(t: Trie, k: int) -> list[tuple[int, ...]]:
    """Context indices of every node, computed top-down in one pass."""
    ctx: list = [None] * t.n
    ctx[0] = (ROOT_LABEL,) * k
    for v in range(1, t.n):  # pre-order: parents come first
        ctx[v] = (ctx[t.parent[v]] + (t.label[v],))[1:] if k else ()
    return ctx


@dataclass(frozen=True)
class SymbolDistribution:
    """Edge counts per symbol; ``counts[i]`` belongs to ``alphabet[i]``."""

    alphabet: Alphabet
    counts: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.counts) != self.alphabet.sigma:
            raise ValueError("one count per alphabet symbol is required")
        if self.n < 1 or any(x < 0 for x in self.counts):
            raise ValueError("counts must be non-negative and n >= 1")
        if sum(self.counts) != self.n - 1:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected n - 1 = {self.n - 1}")

    @classmethod
    def from_mapping(cls, counts: dict, n: int | None = None,
                     alphabet: Alphabet | None = None) -> "SymbolDistribution":
        alphabet = alphabet or Alphabet.of(counts)
        values = tuple(counts.get(s, 0) for s in alphabet)
        return cls(alphabet, values, sum(values) + 1 if n is None else n)

    def as_dict(self) -> dict:
        return dict(zip(self.alphabet, self.counts))

    @property
    def sigma(self) -> int:
        return self.alphabet.sigma


def symbol_distribution(t: Trie) -> SymbolDistribution:
    counts = Counter(t.label[1:])
    return SymbolDistribution(t.alphabet, tuple(counts.get(i, 0) for i in range(t.sigma)), t.n)


@dataclass(frozen=True)
class ContextStats:
    """Per-context node counts ``n_w`` and edge counts ``n_{w,c}``.

    ``entries`` maps a context (tuple of label indices, ``-1`` for ``#``) to
    ``(n_w, (n_{w,c} for c in alphabet order))``.  Only realized contexts
    are present.
    """

    k: int
    n: int
    sigma: int
    entries: dict = field(hash=False)

    @property
    def contexts(self) -> list[tuple[int, ...]]:
        return sorted(self.entries)

    def n_w(self, w) -> int:
        return self.entries[w][0]

    def n_wc(self, w, c: int) -> int:
        return self.entries[w][1][c]

    def validate(self) -> None:
        total = sum(nw for nw, _ in self.entries.values())
        if total != self.n:
            raise ValueError(f"context sizes sum to {total}, expected n = {self.n}")
        for w, (nw, row) in self.entries.items():
            if len(w) != self.k or len(row) != self.sigma:
                raise ValueError(f"malformed context entry {w!r}")
            if any(not 0 <= x <= nw for x in row):
                raise ValueError(f"context {w!r}: edge count outside 0..{nw}")
        edges = sum(sum(row) for _, row in self.entries.values())
        if edges != self.n - 1:
            raise ValueError(f"edge counts sum to {edges}, expected n - 1 = {self.n - 1}")


def context_stats(t: Trie, k: int) -> ContextStats:
    if k < 0:
        raise ValueError("k must be non-negative")
    ctx = all_contexts(t, k)
    nodes: Counter = Counter(ctx)
    edges: dict = {w: [0] * t.sigma for w in nodes}
    for v in range(1, t.n):
        edges[ctx[t.parent[v]]][t.label[v]] += 1
    entries = {w: (nodes[w], tuple(edges[w])) for w in sorted(nodes)}
    return ContextStats(k, t.n, t.sigma, entries)


def random_trie(n: int, sigma: int, rng: random.Random, skew: float | None = None,
                alphabet: Alphabet | None = None) -> Trie:
    """Random trie grown by attaching each new node to a uniformly chosen
    node that still has a free label.

    With ``skew`` set, free labels are picked with geometric weights
    ``skew**i`` so low symbols dominate.
    """
    alphabet = alphabet or default_alphabet(sigma)
    if alphabet.sigma != sigma:
        raise ValueError("alphabet size must equal sigma")
    if sigma == 1:
        return build_from_edges(n, [(i, i + 1, alphabet[0]) for i in range(n - 1)], alphabet)
    used: list[set[int]] = [set()]
    open_nodes = [0]
    edges = []
    for v in range(1, n):
        slot = rng.randrange(len(open_nodes))
        p = open_nodes[slot]
        free = [c for c in range(sigma) if c not in used[p]]
        if skew is None:
            c = rng.choice(free)
        else:
            c = rng.choices(free, weights=[skew ** i for i in free])[0]
        used[p].add(c)
        if len(used[p]) == sigma:
            open_nodes[slot] = open_nodes[-1]
            open_nodes.pop()
        used.append(set())
        open_nodes.append(v)
        edges.append((p, v, alphabet[c]))
    return build_from_edges(n, edges, alphabet)


def random_dictionary_trie(words: int, max_len: int, sigma: int, rng: random.Random,
                           skew: float | None = None) -> Trie:
    """Trie of ``words`` random strings, lengths uniform in ``1..max_len``."""
    alphabet = default_alphabet(sigma)
    weights = None if skew is None else [skew ** i for i in range(sigma)]
    strings = []
    for _ in range(words):
        length = rng.randint(1, max_len)
        strings.append(rng.choices(alphabet.symbols, weights=weights, k=length))
    return build_from_dictionary(strings, alphabet)
