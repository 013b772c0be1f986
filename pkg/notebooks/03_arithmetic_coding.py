# %% [markdown]
# # Arithmetic coding with an order-k model
#
# Each node asks, symbol by symbol, "is there an outgoing edge with this
# label?".  The probability of "yes" is the fraction of nodes in the same
# context that have one.  The interval arithmetic is exact.

# %%
from trie_entropy import build_from_dictionary, compress, decompress
from trie_entropy import coder
from trie_entropy.entropy import empirical_entropy

t = build_from_dictionary(["a", "ba"])
code = compress(t, 0)
print("l =", code.low, " s =", code.size, " bits =", code.bits, " d =", code.d)
print("container:", coder.dumps(code).hex())
assert decompress(code) == t

# %%
# Longer contexts help when the shape is predictable from the path.
import random

from trie_entropy.trie import random_dictionary_trie

t = random_dictionary_trie(80, 15, 3, random.Random(2), skew=0.3)
for k in range(4):
    code = compress(t, k)
    model = coder.model_size_bits(code.model, t.sigma, k, t.n)
    print(f"k={k}  nH_k={empirical_entropy(t, k):8.2f}  d={code.d:5d}  model budget={model}")
    assert decompress(code) == t
