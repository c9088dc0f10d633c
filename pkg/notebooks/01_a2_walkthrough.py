# %% [markdown]
# # A2 by hand and by machine
#
# The quiver 1 -> 2 has three indecomposables: S1, S2 and P1 (= I2).
# We compute their quantum cluster characters, multiply two of them in
# the quantum torus and watch the exchange relation appear.

# %%
from qcluster.quiver import preset
from qcluster.rep import projective, simple, ext_dim
from qcluster.character import character
from qcluster.verify import calibrate, cdz_sides, context, verify_cdz

q = preset("a2")
print("Euler matrix:\n", q.euler)
print("skew part B:\n", q.skew)

# %% [markdown]
# Calibration picks the sign of Λ and the prefactor reading by running
# two small probes under every combination.

# %%
cal = calibrate((2, 3, 5))
print(cal.config)
for key, per_prime in cal.outcomes.items():
    print(f"{key:40s}", {p: all(v.values()) for p, v in per_prime.items()})

# %%
ctx = context(q, cal.config.sigma)
p = 3
s1, s2, p1 = simple(q, p, 0), simple(q, p, 1), projective(q, p, 0)
for name, m in [("S1", s1), ("S2", s2), ("P1", p1)]:
    print(f"X~_{name} = {character(ctx, m)}")

# %% [markdown]
# Ext^1(S1, S2) is one-dimensional, so the product X~_S1 X~_S2 should be
# t X~_P1 + 1 (t = s^2).

# %%
print("ext_dim(S1, S2) =", ext_dim(s1, s2))
prod = character(ctx, s1) * character(ctx, s2)
closed = character(ctx, p1).shift(2) + ctx.torus.one()
print("product     :", prod)
print("t X~_P1 + 1 :", closed)
print("difference is zero:", (prod - closed).is_zero())

# %%
lhs, rhs, info = cdz_sides(ctx, s1, s2)
print(info)
print(verify_cdz(ctx, s1, s2).equal)

# %% [markdown]
# The opposite sign of Λ breaks the identity in the constant term.

# %%
bad = verify_cdz(context(q, -1), s1, s2)
print(bad.equal, bad.diagnostics[:2])
