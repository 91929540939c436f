# %% [markdown]
# # q-Catalan numbers from 312-avoiders
#
# Permutations avoiding 312 are counted by the Catalan numbers. Weighting each
# one by q^inv gives a q-analogue that satisfies
#     F_{n+1} = sum_k q^k F_k F_{n-k}.
# We compute it two ways and check the recurrence.

# %%
from patwilf import st_poly_brute, st_poly_rec

for n in range(7):
    print(n, st_poly_rec(n, ["312"], "inv"))

# %% The oracle agrees, term by term
for n in range(8):
    assert st_poly_rec(n, ["312"], "inv") == st_poly_brute(n, ["312"], "inv")
print("recursion == brute force for n <= 7")

# %% Recurrence check
F = [st_poly_rec(n, ["312"], "inv") for n in range(12)]
for n in range(11):
    assert F[n + 1] == sum((F[k] * F[n - k]).shift(k) for k in range(n + 1))
print("counts:", [f.eval_at_one() for f in F])

# %% Other statistics only change the weights, never the count
for stat in ("des", "c213"):
    print(stat, st_poly_rec(5, ["312"], stat))
