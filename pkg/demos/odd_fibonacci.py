# %% [markdown]
# # A q-analogue of the odd Fibonacci numbers
#
# Adding 1432 to 312 cuts the counts down to every other Fibonacci number:
# 1, 1, 2, 5, 13, 34, 89, ...  The inversion polynomials obey
#     F_{n+1} = q^n F_n + sum_{k<n} q^k (1+q)^{n-k-1} F_k.

# %%
from patwilf import st_poly_rec
from patwilf.qpoly import ONE, Q

F = [st_poly_rec(n, ["312", "1432"], "inv") for n in range(12)]
for n, f in enumerate(F[:7]):
    print(f"{n}: {f}")
print("counts:", [f.eval_at_one() for f in F])

# %%
for n in range(11):
    rhs = F[n].shift(n) + sum((F[k] * (ONE + Q) ** (n - k - 1)).shift(k) for k in range(n))
    assert F[n + 1] == rhs
print("recurrence holds for n <= 10")
