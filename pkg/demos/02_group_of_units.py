"""The group of units of Pi_2 and of Pi_3."""

# %%
from speciallab import (
    classify_units,
    compute_lambda,
    is_invertible,
    make_pi,
    minimal_factorization,
    units_presentation,
)

t2 = make_pi(2).to_rewrite_system()

# %%
# Each block a b^i c is its own inverse.
for w in ["abc", "abbc", "ab", "abcabbc"]:
    wit = is_invertible(t2, w, 16)
    print(w, "->", "no inverse found" if wit is None else f"inverse {wit.right or '1'}")

# %%
# Invertible words split uniquely into minimal invertible pieces.
print(minimal_factorization(t2, "abcabbcabbbc", 16).factors)

# %%
# The minimal pieces of the relator form the set Lambda; here one schema.
lam = compute_lambda(t2)
print([str(p) for p in lam.render(t2.alphabet, "i")])

# %%
# Rewriting the relator over Lambda gives x_i^2 = 1 for every i: infinitely
# many copies of C2, so the group is not finitely generated.
up = units_presentation(t2, lam)
print(up.render_generators(), up.render_relators())
print(classify_units(up).description)

# %%
# Pi_3 in the same way, with i instantiated up to 4.
t3 = make_pi(3).to_rewrite_system()
up3 = units_presentation(t3, compute_lambda(t3, i_bound=4))
print(up3.render_relators())
