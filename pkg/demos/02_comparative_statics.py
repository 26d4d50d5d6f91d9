# %% [markdown]
# # How the kept share reacts to income trends
#
# Moving both trends down together eventually pushes the dictator onto the
# kink and then onto the loss branch, so they keep more.  Raising only the
# recipient's trend makes the dictator keep more as well.

# %%
import numpy as np

from trendfair import AgentParams, EconomyState
from trendfair.solver import sweep_other_trend, sweep_own_trend

agent = AgentParams(a=2.0, b=1.0, eta=0.8)
base = EconomyState(w_i=12, w_j=10, d_i=0, d_j=0, t_pot=11)

# %%
print("both trends equal")
for d, r in sweep_own_trend(agent, base, np.arange(-7, -4.4, 0.25), lock_other=True):
    print(f"  trend={d:6.2f}  s*={r.s_star:.4f}  {r.region.value}")

# %%
print("recipient trend only")
for d, r in sweep_other_trend(agent, base, np.linspace(-5, 5, 6)):
    print(f"  trend={d:6.2f}  s*={r.s_star:.4f}  (0.5 + d/44 = {0.5 + d / 44:.4f})")

# %% [markdown]
# The same curves are available from the command line, e.g.
# `trendfair sweep --preset fig3a --format csv`.
