# %% [markdown]
# # Predicted giving in the five wage schedules
#
# Each subject earns two wages per period; a third of all wages goes to a
# joint account of 11 that the dictator splits.  The schedules keep the
# totals fixed and only change the direction of wages within the period.

# %%
from trendfair import AgentParams, Role, Treatment, evaluate_hypotheses, predict_giving

agent = AgentParams(a=2.0, b=1.0, eta=0.8)
for role in Role:
    for t in Treatment:
        cont = predict_giving(agent, t, role)
        disc = predict_giving(agent, t, role, discrete=True)
        print(f"{role.label:12s} {t.label:18s} giving {cont.giving:6.3f}  on 0.10 grid {disc.giving:5.2f}  {cont.region.value}")

# %% [markdown]
# Check the directional predictions.  A purely selfish type gives nothing
# everywhere, so every ordering only holds weakly.

# %%
for who, a in (("reference type", agent), ("selfish type", AgentParams(a=1.0, b=0.0, eta=0.8))):
    print(who)
    for name, h in evaluate_hypotheses(a).items():
        print(f"  {name}: {h.verdict.value}{'  [' + h.note + ']' if h.note else ''}")
