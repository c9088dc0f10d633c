# %% [markdown]
# # Fibers of ψ over linear A4
#
# For each extension class ε the map L0 -> (p(L0), i^{-1}(L0)) sorts the
# submodules of the middle term into strata. Nonempty fibers have
# p^[M0, N/N0] points.

# %%
from collections import Counter

import numpy as np

from qcluster.grassmann import psi_strata
from qcluster.quiver import preset
from qcluster.rep import ext_dim, hom_dim, interval_modules, quotient, random_rep
from qcluster.triangles import cocycles, middle_term
from qcluster.verify import verify_fiber_law, verify_strata_counts

q = preset("a4")
p = 2
mods = interval_modules(q, p)
# the first pair with a nonsplit extension and a two-dimensional middle term at some vertex
m, n = next((a, b) for a in mods for b in mods if ext_dim(a, b) and max(x + y for x, y in zip(a.dim, b.dim)) > 1)
print(m.dim, n.dim, "ext =", ext_dim(m, n))

# %%
for xi in cocycles(m, n):
    strata = psi_strata(middle_term(m, n, xi))
    sizes = Counter()
    for m0, n0, fiber in strata.values():
        nq, _ = quotient(n, n0.rows)
        expect = p ** hom_dim(m0.module(m)[0], nq)
        sizes[(len(fiber), expect)] += 1
    print("class", xi.tolist(), "->", dict(sizes))

# %% [markdown]
# The same bookkeeping on random modules, plus the count of classes
# hitting each stratum.

# %%
rng = np.random.default_rng(1)
for _ in range(5):
    a = random_rep(q, p, rng.integers(0, 3, 4), rng)
    b = random_rep(q, p, rng.integers(0, 3, 4), rng)
    r = verify_fiber_law(a, b)
    print(a.dim, b.dim, r.equal, r.details)

# %%
print(verify_strata_counts(mods[0], mods[1]).lhs)
