"""The M_n family: the table of C_2^n encoded with x_j = a b_j^t c."""

# %%
from speciallab import check_local_confluence, classify_units, compute_lambda, make_mn, units_presentation
from speciallab.presentations import serialize_presentation

schema = make_mn(2)
print(serialize_presentation(schema))

# %%
# Rules are no longer special (x_1 x_2 -> x_3), but still length-reducing.
m2 = schema.to_rewrite_system()
report = check_local_confluence(m2, i_bound=6)
print("pairs:", report.pairs_examined, "unjoinable:", len(report.unjoinable))

# %%
# One copy of C2 x C2 per value of t.
up = units_presentation(m2, compute_lambda(m2, i_bound=6))
print(up.render_relators()[:4])
print(classify_units(up).description)
