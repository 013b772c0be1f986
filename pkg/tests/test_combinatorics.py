import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_tries, fig4, tries, tries_by_distribution
from trie_entropy.combinatorics import (DegreeMatrix, EnumerationCapError, NotLukasiewiczError,
                                        canonical_rotation, count_all_tries, count_tries, distributions,
                                        enumerate_matrices, enumerate_tries, is_lukasiewicz,
                                        lukasiewicz_violation, matrix_to_trie, random_matrix, rotate,
                                        trie_to_matrix)
from trie_entropy.trie import Alphabet, SymbolDistribution, default_alphabet


def dist(n, **counts):
    return SymbolDistribution.from_mapping(counts, n, Alphabet(sorted(counts)))


def test_figure_matrix():
    m = trie_to_matrix(fig4())
    assert m.rows == ((1, 0, 1, 0), (1, 0, 0, 0))
    assert m.degrees == [1, -1, 0, -1]
    assert m.path == [1, 0, 0, -1]
    assert matrix_to_trie(m) == fig4()


def test_rejected_matrix_reports_position():
    m = DegreeMatrix(Alphabet("ab"), ((0, 1, 1, 0), (0, 0, 0, 1)))
    assert lukasiewicz_violation(m) == 1
    with pytest.raises(NotLukasiewiczError) as exc:
        matrix_to_trie(m)
    assert exc.value.index == 1


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        DegreeMatrix(Alphabet("ab"), ((1, 1, 1), (0, 0, 0)))
    with pytest.raises(ValueError):
        DegreeMatrix(Alphabet("ab"), ((1, 0), (0,)))


def test_rotation_moves_last_columns_to_front():
    m = DegreeMatrix(Alphabet("a"), ((0, 1, 1, 1),))
    assert rotate(m, 1).rows == ((1, 0, 1, 1),)
    assert rotate(m, 4) == m


def test_canonical_rotation_with_repeated_minimum():
    # L = [0, -1, -1]: the minimum is not unique, the leftmost one is right
    m = DegreeMatrix(Alphabet("ab"), ((1, 0, 0), (0, 0, 1)))
    assert m.path == [0, -1, -1]
    r = canonical_rotation(m)
    assert is_lukasiewicz(rotate(m, r))
    assert [r2 for r2 in range(3) if is_lukasiewicz(rotate(m, r2))] == [r]


def test_text_round_trip():
    m = trie_to_matrix(fig4())
    assert DegreeMatrix.from_text(m.to_text(), m.alphabet) == m


@pytest.mark.parametrize("d, expected", [
    (dist(4, a=2, b=1), 6),
    (dist(5, a=4), 1),
    (dist(1, a=0), 1),
    (dist(3, a=1, b=1), 3),
])
def test_count_examples(d, expected):
    assert count_tries(d) == expected
    assert len(enumerate_tries(d)) == expected


def test_count_all_examples():
    assert count_all_tries(4, 2) == 14
    assert sum(count_tries(d) for d in distributions(4, 2)) == 14


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("sigma", range(1, 4))
def test_counts_against_recursive_enumeration(n, sigma):
    oracle = tries_by_distribution(n, sigma)
    for d in distributions(n, sigma):
        assert count_tries(d) == oracle.get(d.counts, 0)
    assert count_all_tries(n, sigma) == len(all_tries(n, sigma))


def test_enumeration_lists_each_trie_once():
    d = dist(5, a=2, b=2)
    got = enumerate_tries(d)
    assert len(set(got)) == len(got) == count_tries(d)
    expected = {t for t in all_tries(5, 2) if t.label.count(0) == 2}
    assert set(got) == expected


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        list(enumerate_matrices(dist(10, a=5, b=4), cap=100))


def test_distributions_cover_compositions():
    ds = list(distributions(5, 3))
    assert len(ds) == math.comb(4 + 2, 2)
    assert len({d.counts for d in ds}) == len(ds)


@settings(max_examples=80, deadline=None)
@given(tries())
def test_bijection_round_trip(t):
    m = trie_to_matrix(t)
    assert is_lukasiewicz(m)
    assert matrix_to_trie(m) == t
    assert m.distribution().counts == tuple(t.label[1:].count(c) for c in range(t.sigma))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(1, 4), st.randoms(use_true_random=False))
def test_exactly_one_rotation_is_accepted(n, sigma, rng):
    counts = [0] * sigma
    for _ in range(n - 1):
        counts[rng.randrange(sigma)] += 1
    d = SymbolDistribution(default_alphabet(sigma), tuple(counts), n)
    m = random_matrix(d, rng)
    accepted = [r for r in range(n) if is_lukasiewicz(rotate(m, r))]
    assert accepted == [canonical_rotation(m)]


def test_rotations_of_distinct_columns_are_distinct():
    rng = random.Random(3)
    d = dist(7, a=3, b=3)
    for _ in range(50):
        m = random_matrix(d, rng)
        assert len({rotate(m, r).rows for r in range(7)}) == 7
