# %% [markdown]
# # Simulated session and the descriptive pipeline
#
# A population mixes selfish subjects with social ones.  We simulate one
# session, write the canonical CSV, load it back and run the tables.

# %%
import tempfile
from pathlib import Path

from trendfair.analysis import (
    SocialFilter,
    censoring_rate,
    filter_social,
    load_csv,
    summary_by_treatment,
    wilcoxon_table,
)
from trendfair.simlab import LogUniform, PopulationConfig, export_csv, simulate

config = PopulationConfig(
    n_subjects=294,
    share_selfish=0.56,
    social_ab=LogUniform(0.5, 8.0),
    decision_noise_sd=0.8,
)
records = simulate(config, seed=7)
path = Path(tempfile.mkdtemp()) / "session.csv"
export_csv(records, path)
data = load_csv(path)
print(len(data), "records; share of zero giving", round(censoring_rate(data), 3))

# %% [markdown]
# Restrict to subjects who give at least 2 in the stable schedule.

# %%
social = filter_social(data, SocialFilter(2.0))
cells, overall = summary_by_treatment(social)
for c in cells:
    print(f"{c.treatment.value:20s} {c.role.value:5s} mean {c.mean:5.2f}  sd {c.sd:5.2f}  n {c.n}")
print("overall", round(overall.mean, 3))

# %%
for c in wilcoxon_table(social):
    print(f"{c.group:5s} {c.decrease:20s} vs {c.comparison:20s} n={c.n:3d}  p={c.result.p_value:.4f} ({c.result.method})")
