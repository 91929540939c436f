# %% [markdown]
# # Möbius values behind the inclusion-exclusion
#
# The recursion sums over subsets with signs that come from the Möbius
# function of a small lattice. The closed form is -1, 1, 0, 0, ... for ranks
# 1, 2, 3, ...; on products it vanishes unless every rank is 1 or 2.
# Here the closed forms are compared against an explicit poset computation.

# %%
import itertools

import numpy as np

from patwilf import mobius_Lr_closed, mobius_poset_oracle, mobius_product_closed

print([mobius_Lr_closed(r) for r in range(1, 7)])
print([mobius_poset_oracle([r]) for r in range(1, 7)])

# %%
table = np.zeros((4, 4), dtype=int)
for i, j in itertools.product(range(4), repeat=2):
    table[i, j] = mobius_poset_oracle([i + 1, j + 1])
    assert table[i, j] == mobius_product_closed([i + 1, j + 1])
print(table)
