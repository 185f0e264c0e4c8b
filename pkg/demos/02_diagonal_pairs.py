# %% [markdown]
# # Simultaneously diagonal summands
#
# For diagonal `D1, D2` the LP bound is exact: `u_k = s_k(D1 + D2)`.  The
# alignment terms become counts of shared coordinates and the LP reduces to
# a search over pairs of `k`-subsets.  Any feasible pair can be exchanged for
# a symmetric pair `(S, S)` without losing objective value.

# %%
import numpy as np

from kyfanlp import u_k
from kyfanlp.diagonal import (
    combinatorial_optimum,
    feasible_pairs,
    objective,
    omega_chains,
    symmetrize_traced,
)
from kyfanlp.majorization import s_k

lam1 = np.array([4.0, 3.0, 2.0, 1.0])
lam2 = np.array([1.0, 2.0, 3.0, 4.0])
ch = omega_chains(lam1, lam2)
print("coordinate chains of D1:", [sorted(s) for s in ch.chain1])
print("coordinate chains of D2:", [sorted(s) for s in ch.chain2])

# %% [markdown]
# ## Feasible pairs
#
# With opposite orders the constraints are restrictive: both subsets cannot
# each take their own top coordinates.

# %%
k = 2
pairs = feasible_pairs(ch, k)
asym = [p for p in pairs if not p.symmetric]
print(f"{len(pairs)} feasible pairs, {len(asym)} asymmetric")

# %% [markdown]
# ## The exchange
#
# The trace records the chain ranks `m` of the first subset, the chain sizes
# `r` picked for the rebuilt subset, and the resulting symmetric pair.

# %%
for pair in asym[:3]:
    tr = symmetrize_traced(pair, ch, k)
    print(sorted(pair.s1), sorted(pair.s2), "->", sorted(tr.result.s1),
          f"objective {objective(pair, ch):.0f} -> {objective(tr.result, ch):.0f}, m={tr.m}, r={tr.r}")

# %% [markdown]
# ## Tightness

# %%
for k in range(1, 5):
    value, best = combinatorial_optimum(ch, k)
    print(f"k={k}: LP {u_k(np.diag(lam1), np.diag(lam2), k).value:.6f}, "
          f"s_k(D1+D2) {s_k(lam1 + lam2, k):.6f}, best S {sorted(best.s1)}")
