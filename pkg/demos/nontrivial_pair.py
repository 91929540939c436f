# %% [markdown]
# # A nontrivial inv-Wilf equivalence
#
# {312, 32415} and {312, 24315} give identical inversion polynomials, yet no
# symmetry of the square that preserves inv maps one set to the other.
# Both patterns come from the same blocks, 213 and e, with the first block
# transposed in one of them.

# %%
from patwilf import block_decompose, build_pair, check_equiv, transpose

print(block_decompose("32415").blocks)
print(block_decompose("24315").blocks)
print(build_pair(["213", "e"], [True, False]))
print("213 transposed:", transpose("213"))

# %%
report = check_equiv(["312", "32415"], ["312", "24315"], "inv", 10)
print(report.summary())
for n, left, right, equal in report.per_n[:7]:
    print(n, left, "|", right)

# %% Searching finds it again, up to symmetry
from patwilf import search_nontrivial

for r in search_nontrivial("inv", 5, 2, 9):
    print(r.summary(), [str(p) for p in r.left], [str(p) for p in r.right])
    print("covers the pair above:", r.covers(["312", "32415"], ["312", "24315"]))
