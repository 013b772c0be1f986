# %% [markdown]
# # Worst-case, empirical and label entropy
#
# All values are in bits and unnormalized.

# %%
import random

from trie_entropy import (entropy_report, make_complete_binary_trie, make_level_alphabet_trie,
                          random_dictionary_trie, random_trie)


def show(name, t, k_max=3):
    print(f"{name}: n={t.n} sigma={t.sigma}")
    for rep in entropy_report(t, k_max):
        ok = all(rep.checks().values())
        print(f"  k={rep.k}  H^wc={rep.h_wc:8.2f}  nH_k={rep.nh_k:8.2f}  label={rep.nh_label_k:8.2f}  r={rep.runs_r}  {'ok' if ok else 'VIOLATED'}")

# %%
show("complete binary, h=5", make_complete_binary_trie(5))

# %%
# One fresh pair of symbols per level: any context of length >= 1 fixes the
# out-set, so the empirical entropy drops to zero while labels stay costly.
show("level alphabet y=2 h=3", make_level_alphabet_trie(2, 3), k_max=4)

# %%
rng = random.Random(1)
show("random shape", random_trie(300, 4, rng))
show("dictionary", random_dictionary_trie(40, 12, 4, rng, skew=0.4))
