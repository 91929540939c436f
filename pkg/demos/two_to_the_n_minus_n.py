# %% [markdown]
# # 2^n - n and its q-analogue
#
# S_n(312, 2314, 2143) has 2^n - n elements. At q = 1 the counts satisfy
#     a_{n+1} = 2 a_n + (n - 1).
# Lifting this to inversion polynomials, the correction term is not
# q(1 + q + ... + q^{n-2}). The k-th summand comes from a block that must
# avoid 12, so it is the decreasing permutation of length k. Its weight is
# q^{k(k+1)/2}, which gives
#     a_{n+1} = (1 + q^n) a_n + sum_{k=1}^{n-1} q^{k(k+1)/2}.

# %%
from math import comb

from patwilf import QPoly, st_poly_brute, st_poly_rec
from patwilf.qpoly import ONE, Q

pats = ["312", "2314", "2143"]
a = [st_poly_rec(n, pats, "inv") for n in range(12)]
print("counts:", [p.eval_at_one() for p in a[1:]])

# %% Geometric correction: right at q = 1, wrong as polynomials from n = 3
for n in range(1, 6):
    geometric = (ONE + QPoly.monomial(n)) * a[n] + Q * sum((QPoly.monomial(j) for j in range(n - 1)), QPoly())
    print(n, a[n + 1] == geometric, a[n + 1].eval_at_one() == geometric.eval_at_one())

# %% Triangular correction: exact
for n in range(1, 11):
    tri = sum((QPoly.monomial(comb(k + 1, 2)) for k in range(1, n)), QPoly())
    assert a[n + 1] == (ONE + QPoly.monomial(n)) * a[n] + tri
print("triangular form holds for n <= 10")

# %% The block term, by brute force
for k in range(1, 6):
    print(k, st_poly_brute(k, ["312", "12", "2143"], "inv"))
