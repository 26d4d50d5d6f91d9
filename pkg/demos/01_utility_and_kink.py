# %% [markdown]
# # Utility of the dictator and the trend kink
#
# A dictator splits a tax pot with a recipient.  Besides the level gap, the
# dictator cares about the gap in income *changes*, and a falling own income
# costs extra.  That extra cost switches on where the dictator's own trend
# crosses zero, so the objective has a kink there.

# %%
import numpy as np

from trendfair import AgentParams, EconomyState, dictator_utility, solve
from trendfair.model import bo_utility, dictator_utility_array

agent = AgentParams(a=2.0, b=0.5, eta=0.8)
econ = EconomyState(w_i=10, w_j=5, d_i=-5, d_j=-5, t_pot=9)
print("kink at kept share", econ.kink)

# %% [markdown]
# Evaluate the objective on a grid of kept shares and compare it with the
# trend-blind version.

# %%
s = np.linspace(0, 1, 11)
u = dictator_utility_array(agent, econ, s)
for x, val in zip(s, u):
    print(f"s={x:4.2f}  trend-aware={val:8.3f}  trend-blind={bo_utility(agent, econ, x):8.3f}")

# %% [markdown]
# The breakdown shows where each term comes from at the optimum.

# %%
res = solve(agent, econ)
parts = dictator_utility(agent, econ, res.s_star)
print(res.region.value, round(res.s_star, 6), "giving", round(res.giving, 4))
print(parts)
