"""Entropy measures, arithmetic coding and compressed XBWT indexes for tries."""

from .coder import TrieCode, compress, decompress, model_size_bits
from .combinatorics import (DegreeMatrix, NotLukasiewiczError, canonical_rotation, count_all_tries,
                            count_tries, enumerate_tries, is_lukasiewicz, matrix_to_trie, rotate,
                            trie_to_matrix)
from .entropy import (empirical_entropy, entropy_report, label_entropy, make_complete_binary_trie,
                      make_level_alphabet_trie, worst_case_entropy)
from .succinct import BoostedBitvector, PlainBitvector, boost_build, id_rank_by_binary_search
from .trie import (PAD, Alphabet, ContextStats, SymbolDistribution, Trie, build_from_dictionary,
                   build_from_edges, context, context_stats, random_dictionary_trie, random_trie,
                   symbol_distribution)
from .xbwt import XbwtIndex, build_index, colex_sort, space_report, trie_runs

__version__ = "0.1.0"
