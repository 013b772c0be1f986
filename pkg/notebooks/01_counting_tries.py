# %% [markdown]
# # Counting tries with a fixed symbol distribution
#
# A trie over an ordered alphabet is turned into a 0/1 matrix: one row per
# symbol, one column per node in pre-order.  Column sums minus one form a
# walk that stays non-negative until its final step, and exactly one cyclic
# rotation of any matrix with the right row sums has that property.

# %%
from trie_entropy import (build_from_dictionary, canonical_rotation, count_tries, enumerate_tries,
                          matrix_to_trie, rotate, trie_to_matrix)
from trie_entropy.combinatorics import count_all_tries, distributions, random_matrix
from trie_entropy.trie import SymbolDistribution, symbol_distribution

t = build_from_dictionary(["a", "ba"])
m = trie_to_matrix(t)
print(m.to_text())
print("degrees", m.degrees, "walk", m.path)

# %%
# Every trie with two a-edges and one b-edge on four nodes.
dist = symbol_distribution(t)
print(dist.as_dict(), "->", count_tries(dist), "tries")
for other in enumerate_tries(dist):
    print(["".join(other.path_symbols(u)) for u in range(1, other.n)])

# %%
# Summing over all distributions gives the total count.
print(sum(count_tries(d) for d in distributions(4, 2)), count_all_tries(4, 2))

# %%
# A random matrix with the same row sums: only one rotation decodes.
import random

rng = random.Random(0)
m = random_matrix(SymbolDistribution.from_mapping({"a": 3, "b": 3}, 7), rng)
r = canonical_rotation(m)
for s in range(m.n):
    mark = "<- trie" if s == r else ""
    print(s, " ".join("".join(map(str, row)) for row in rotate(m, s).rows), mark)
print(matrix_to_trie(rotate(m, r)).edges())
