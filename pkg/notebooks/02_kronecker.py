# %% [markdown]
# # The Kronecker quiver
#
# Two arrows 1 => 2 give a skew matrix B whose inverse has half-integer
# entries, so the torus twist lives in s = t^(1/2).

# %%
import numpy as np

from qcluster.quiver import lambda_solve, preset
from qcluster.rep import ext_space, simple, tau, hom_dim
from qcluster.triangles import cocycles, middle_term
from qcluster.verify import cdz_sides, context, interp_motivic, verify_cdz, verify_dim1_refined

q = preset("kronecker")
print(lambda_solve(q).Lambda)

# %%
p = 3
s1, s2 = simple(q, p, 0), simple(q, p, 1)
space = ext_space(s1, s2)
print("Ext^1(S1, S2) has dimension", space.dim)
for xi in list(cocycles(s1, s2, nonzero=True))[:4]:
    big = middle_term(s1, s2, xi).L
    print(space.coords(xi), [m.tolist() for m in big.maps])

# %% [markdown]
# Every nonzero class gives a regular module of dimension (1,1). The
# multiplication formula sums over all p^2 - 1 of them.

# %%
ctx = context(q)
rep = verify_cdz(ctx, s1, s2)
print(rep.equal, rep.details)
print(rep.lhs)

# %% [markdown]
# For a single class ε, the refined formula needs a hyperplane W of
# Hom(S2, τS1) that is compatible with every stratum. We search all p + 1.

# %%
print("Hom(S2, τS1) has dimension", hom_dim(s2, tau(s1)))
for k in range(space.dim):
    r = verify_dim1_refined(ctx, s1, s2, eps_index=k)
    print(k, r.equal, r.details["valid_hyperplanes"], "of", r.details["hyperplanes_tested"])

# %% [markdown]
# Coefficients as polynomials in q, from five primes with the last held out.

# %%
def runner(p):
    lhs, rhs, _ = cdz_sides(ctx, simple(q, p, 0), simple(q, p, 1))
    return lhs, rhs


mot = interp_motivic(ctx, runner, [2, 3, 5, 7, 11], "cdz")
print(mot.consistent, mot.equal)
for alpha, coeffs in sorted(mot.coefficients["lhs"].items()):
    print(alpha, coeffs)
