# %% [markdown]
# # Bounding eigenvalue sums of a sum with a linear program
#
# For Hermitian `A1, A2` Ky Fan's inequality gives
# `s_k(A1 + A2) <= s_k(A1) + s_k(A2)`.  The right side ignores how the
# eigenspaces of the two summands sit relative to each other.  Alignment
# terms measure that overlap, and feeding them into a small LP gives a bound
# `u_k` that sits between the two sides.

# %%
import numpy as np

from kyfanlp import alignment_table, build_p1, eigh, s_k, u_k
from kyfanlp.alignment_lp import staggered_bound
from kyfanlp.sampling import Sampler

rng = Sampler(2024)
A1, A2 = rng.hermitian(5), rng.hermitian(5)
lam1, lam2 = eigh(A1).eigenvalues, eigh(A2).eigenvalues
print("spectrum of A1:", np.round(lam1, 3))
print("spectrum of A2:", np.round(lam2, 3))

# %% [markdown]
# ## Alignment terms
#
# `alpha[l1, l2]` is `s_k` of the sum of the projectors onto the top-`l1`
# eigenvectors of `A1` and the top-`l2` eigenvectors of `A2`.  Perfectly
# aligned summands reach `min(l1, k) + min(l2, k)`; generic ones fall short.

# %%
k = 2
table = alignment_table(eigh(A1), eigh(A2), k)
print(np.round(table.alpha, 3))
print("bound violations:", table.violations())

# %% [markdown]
# Rows that cannot cut anything are dropped before solving.

# %%
lp = build_p1(table)
print(f"{len(lp.rows)} of {5 * 5} alignment rows kept")

# %% [markdown]
# ## The sandwich

# %%
for k in range(1, 6):
    u = u_k(A1, A2, k).value
    print(f"k={k}:  s_k(A1+A2) = {s_k(eigh(A1 + A2).eigenvalues, k):8.4f}"
          f"  <=  u_k = {u:8.4f}"
          f"  <=  s_k(A1)+s_k(A2) = {s_k(lam1, k) + s_k(lam2, k):8.4f}")

# %% [markdown]
# ## A closed form from a single constraint
#
# When one alignment term is at least one unit below its maximum, keeping
# only that row gives a bound with an explicit formula.  Here both spectra
# are `(1, 1, 0, 0)` and the top-2 eigenspaces share one direction, so the
# alignment term for `k = l1 = l2 = 2` is 3 instead of 4.

# %%
lam = np.array([1.0, 1.0, 0.0, 0.0])
print("staggered bound:", staggered_bound(lam, lam, 2, 2, 2, 3.0))
