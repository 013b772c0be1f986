import random

import pytest
from hypothesis import given, settings

from oracles import fig4, naive_contexts, tries
from trie_entropy.trie import (PAD, Alphabet, CycleError, DisconnectedError, DuplicateLabelError,
                               SymbolDistribution, SymbolError, TrieError, build_from_dictionary,
                               build_from_edges, context, context_stats, preorder, random_dictionary_trie,
                               random_trie, symbol_distribution)


def test_figure_trie_shape():
    t = fig4()
    assert t.n == 4 and t.sigma == 2 and t.height == 2
    assert [t.path_symbols(u) for u in range(4)] == [(), ("a",), ("b",), ("b", "a")]
    assert t.out(0) == (0, 1) and t.out(2) == (0,) and t.out(1) == ()
    assert preorder(t) == [0, 1, 2, 3]


def test_dictionary_matches_edges():
    t = build_from_dictionary(["a", "ba"], Alphabet("ab"))
    assert t == fig4()
    assert t.strings() == [("a",), ("b", "a")]


def test_dictionary_bytes_and_empty():
    t = build_from_dictionary([b"ab", b"b"])
    assert t.alphabet == Alphabet([97, 98])
    assert build_from_dictionary([]).n == 1
    assert build_from_dictionary([""]).n == 1


def test_renumbering_to_preorder():
    t = build_from_edges(4, [(0, 3, "a"), (0, 1, "b"), (1, 2, "a")])
    assert t == fig4()


@pytest.mark.parametrize("edges, n, err", [
    ([(0, 1, "a"), (0, 2, "a")], 3, DuplicateLabelError),
    ([(0, 1, "z")], 2, SymbolError),
    ([(0, 1, "a")], 3, DisconnectedError),
    ([(0, 1, "a"), (2, 3, "a"), (3, 2, "b")], 4, CycleError),
    ([(1, 0, "a")], 2, CycleError),
    ([(0, 5, "a")], 2, TrieError),
])
def test_invalid_edge_lists(edges, n, err):
    with pytest.raises(err):
        build_from_edges(n, edges, Alphabet("ab"))


def test_dictionary_reports_bad_symbol():
    with pytest.raises(SymbolError, match="position 1"):
        build_from_dictionary(["az"], Alphabet("ab"))


def test_contexts_are_padded():
    t = fig4()
    assert context(t, 3, 1) == ("a",)
    assert context(t, 3, 3) == (PAD, "b", "a")
    assert context(t, 0, 2) == (PAD, PAD)
    assert repr(PAD) == "#"


def test_context_stats_figure():
    t = fig4()
    s0 = context_stats(t, 0)
    assert s0.entries == {(): (4, (2, 1))}
    s1 = context_stats(t, 1)
    assert s1.entries == {(-1,): (1, (1, 1)), (0,): (2, (0, 0)), (1,): (1, (1, 0))}


def test_symbol_distribution_validation():
    assert symbol_distribution(fig4()).as_dict() == {"a": 2, "b": 1}
    with pytest.raises(ValueError):
        SymbolDistribution(Alphabet("ab"), (2, 2), 4)
    d = SymbolDistribution.from_mapping({"a": 2, "b": 1})
    assert d.n == 4


def test_effective_alphabet():
    t = build_from_dictionary(["ac"], Alphabet("abc"))
    e = t.effective()
    assert e.alphabet == Alphabet("ac") and e.sigma == 2


def test_random_generators_are_deterministic():
    a = random_trie(50, 3, random.Random(7))
    b = random_trie(50, 3, random.Random(7))
    assert a == b and a.n == 50
    d = random_dictionary_trie(10, 5, 3, random.Random(1))
    assert all(len(s) <= 5 for s in d.strings())


@settings(max_examples=60, deadline=None)
@given(tries())
def test_stats_agree_with_path_contexts(t):
    for k in range(3):
        stats = context_stats(t, k)
        stats.validate()
        ctx = naive_contexts(t, k)
        assert sum(nw for nw, _ in stats.entries.values()) == t.n
        assert len(stats.entries) == len(set(ctx.values()))


@settings(max_examples=60, deadline=None)
@given(tries())
def test_edges_round_trip(t):
    assert build_from_edges(t.n, t.edges(), t.alphabet) == t
