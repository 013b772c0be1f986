# %% [markdown]
# # Compressed XBWT index
#
# Nodes are sorted by their root paths read backwards.  One bitvector per
# symbol marks which nodes have an edge with that symbol; rank and select on
# those bitvectors give navigation and pattern counting.

# %%
from trie_entropy import build_from_dictionary, build_index, colex_sort, space_report

words = ["banana", "band", "bandana", "can", "cane", "and"]
t = build_from_dictionary(words)
order = colex_sort(t)
idx = build_index(t)
for i in range(1, t.n + 1):
    path = "".join(t.path_symbols(order.node(i)))
    row = "".join(str(v[i]) for v in idx.bitvectors)
    print(f"{i:3d} {path[::-1]:>8s}  {row}")
print("C =", dict(zip(t.alphabet, idx.C)))

# %%
for p in ["an", "and", "na", "x", ""]:
    res = idx.count(p)
    print(f"{p!r:8} occurs at {res.count} nodes, ranks [{res.i}, {res.j}]")
print("prefix 'band' ->", idx.prefix_query("band"), " prefix 'bx' ->", idx.prefix_query("bx"))

# %%
rep = space_report(idx, t, 2)
print("payload bits", rep.payload_bits, "overhead", rep.overhead_bits)
for row in rep.per_k:
    print(row)
print("runs", idx.runs())
