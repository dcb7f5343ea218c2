"""Rewriting in Pi_2 = Mon<a, b, c | (a b^i c)^2 = 1, i >= 1>.

Run with ``python3 demos/01_pi2_rewriting.py``.
"""

# %%
# One schema rule stands for infinitely many rules, one per value of i.
from speciallab import check_local_confluence, make_pi, normal_form

schema = make_pi(2)
t2 = schema.to_rewrite_system()
print(t2.render_rule(0))

# %%
# Normal forms.  Every rule deletes at least 6 letters, so reduction stops fast.
for w in ["abcabc", "aabbcabbcc", "abcabbcabbcabc", "cabcabca"]:
    print(f"{w:>16} -> {normal_form(t2, w) or '1'}")

# %%
# Critical pairs for i <= 8.  Two instances only overlap when they share i,
# and the overlap is always three consecutive blocks.
report = check_local_confluence(t2, i_bound=8)
print("pairs examined:", report.pairs_examined)
print("unjoinable:", len(report.unjoinable))
for shape in report.shapes:
    print(shape.overlap_kind, shape.pattern)
