# %% [markdown]
# # Sums of two tensor products
#
# For positive semi-definite factors,
# `B1⊗C1 + B2⊗C2` is majorized by `B1↓⊗C1↓ + B2↓⊗C2↓`, where `↓` replaces an
# operator by the diagonal matrix of its sorted spectrum.

# %%
import numpy as np

from kyfanlp.sampling import Sampler
from kyfanlp.tensor import (
    check_one_sided_counterexample,
    check_separable_fan,
    downset_chain,
    downward_closure,
    indefinite_counterexample,
    subspace_dim_check,
    upward_closure,
)

# %% [markdown]
# ## Ordering the spectrum of a tensor product
#
# The eigenvalues of `B⊗C` are products `λ_i(B) λ_j(C)`.  Any decreasing
# order of them has prefixes that are downward closed in the componentwise
# order on index pairs.

# %%
ch = downset_chain([3, 1], [3, 2])
for ell in range(1, 5):
    print(ell, sorted(ch.prefix(ell)), ch.products[ell - 1])

# %% [markdown]
# ## Random check of the majorization

# %%
rng = Sampler(7)
B1, C1, B2, C2 = rng.psd(3), rng.psd(2), rng.psd(3), rng.psd(2)
v = check_separable_fan(B1, C1, B2, C2)
print("holds:", v.holds)
print("partial-sum gaps:", np.round(v.gaps, 4))

# %% [markdown]
# ## Both hypotheses matter
#
# Indefinite factors break the relation, and aligning only the first factor
# of each product is not enough.

# %%
ind = indefinite_counterexample()
print("sum spectrum", ind.spectrum_sum, "aligned spectrum", ind.spectrum_aligned,
      "fails at k =", ind.verdict.first_violation)
one = check_one_sided_counterexample()
print(f"s_2 difference when aligning only B: {one.difference:.6f}")

# %% [markdown]
# ## Subspace dimensions
#
# For downward closed `U, V` and any four orthonormal bases, the span of
# `f_i ⊗ f_j` over `U` meets the orthogonal complement of the span of
# `g_i ⊗ g_j` over `V` in dimension at least `|U \ V|`.

# %%
U = downward_closure({(0, 2), (2, 0)})
V = {(0, 0), (0, 1), (1, 0)}
print("difference:", sorted(U - V))
print("up-closure of the difference:", sorted(upward_closure(U - V, 3, 3)))
bases = [rng.unitary(3) for _ in range(4)]
print("(dimension, |U \\ V|) =", subspace_dim_check(*bases, U, V))
