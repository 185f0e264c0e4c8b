# %% [markdown]
# # Reproducible verification campaigns
#
# A campaign runs one property check over seeded random instances.  Trial `i`
# uses seed `seed + i`, so any single trial can be regenerated on its own.
# The same runs are available from the shell:
#
#     kyfanlp campaign --config config.json --json

# %%
from kyfanlp.campaign import TASKS, CampaignConfig, run_campaign
from kyfanlp.matrix_io import dumps

print("tasks:", ", ".join(TASKS))
rep = run_campaign(CampaignConfig("sep-fan", seed=1, trials=50, dims=(2, 3)))
print(dumps(rep.to_dict()))

# %% [markdown]
# ## A negative control
#
# Lowering every alignment term by one makes the LP bound unsound, and the
# campaign reports each trial as a violation.

# %%
bad = run_campaign(CampaignConfig("sandwich", seed=1, trials=5, dims=(3, 4), corrupt_rhs=True))
print(bad.status, [v.seed_offset for v in bad.violations])
