"""Slices of the word problem language {u # v^rev : u = v in the monoid}."""

# %%
import time

from speciallab import cf_verdict, enumerate_wp_slice, export_lhs_grammar, format_grammar, make_pi

# %%
# Intersecting with (a b* c)^n # leaves the words with all exponents equal.
for n, e_bound in [(2, 5), (3, 4), (4, 4)]:
    sys = make_pi(n).to_rewrite_system()
    start = time.perf_counter()
    rep = enumerate_wp_slice(sys, n, e_bound)
    print(f"n={n}: {sorted(rep.members)}  agreement={rep.agreement}  "
          f"({time.perf_counter() - start:.2f}s)")

# %%
# For n = 2 the left-hand sides form a context-free language.
t2 = make_pi(2).to_rewrite_system()
print(format_grammar(export_lhs_grammar(t2.rules[0].lhs)))

# %%
# For n >= 3 the slice {a b^i c a b^i c a b^i c #} is not context-free.
for n in (2, 3):
    v = cf_verdict(n)
    print(n, v.context_free, "-", v.claim)
