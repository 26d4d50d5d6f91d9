"""Parameter sets and sweeps behind the illustrative utility and s* curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import AgentParams, EconomyState, bo_utility, dictator_utility
from .solver import bo_baseline, solve, with_trends


@dataclass(frozen=True)
class SweepPreset:
    agent: AgentParams
    econ: EconomyState
    vary: str  # "di" or "dj"
    start: float
    stop: float
    step: float
    lock_other: bool = False


@dataclass(frozen=True)
class UtilityPreset:
    agents: tuple[AgentParams, ...]
    econ: EconomyState
    step: float = 0.01


SWEEP_PRESETS = {
    "fig2b": SweepPreset(
        AgentParams(a=2.0, b=0.5, eta=0.8), EconomyState(10, 5, 0, -5, 9), "di", -10, 10, 0.1
    ),
    "fig3a": SweepPreset(
        AgentParams(a=2.0, b=1.0, eta=0.8), EconomyState(12, 10, 0, 0, 11), "di", -10, 10, 0.1,
        lock_other=True,
    ),
    "fig3b": SweepPreset(
        AgentParams(a=2.0, b=1.0, eta=0.8), EconomyState(12, 10, 0, 0, 11), "dj", -5, 5, 0.1
    ),
}

# figC1 uses a in {6, 2, 1} with b = 0.5, i.e. type ratios 12, 4 and 2.
UTILITY_PRESETS = {
    "fig2a": UtilityPreset((AgentParams(a=2.0, b=0.5, eta=0.8),), EconomyState(10, 5, -5, -5, 9)),
    "figC1": UtilityPreset(
        tuple(AgentParams(a=a, b=0.5, eta=0.8) for a in (6.0, 2.0, 1.0)),
        EconomyState(10, 15, -6, -10, 9),
    ),
}

PRESET_NAMES = tuple(sorted([*SWEEP_PRESETS, *UTILITY_PRESETS], key=str.lower))


def grid(start, stop, step):
    """Inclusive arithmetic grid, rounded to kill accumulated float drift."""
    if step <= 0:
        raise ValueError(f"step must be > 0, got {step!r}")
    if stop < start:
        raise ValueError(f"empty range: {start} > {stop}")
    n = int(np.floor((stop - start) / step + 1e-9))
    return [round(start + k * step, 10) for k in range(n + 1)]


def sweep_rows(agent, econ, vary, values, lock_other=False):
    """Rows ``(x, s_star_model, s_star_bo)`` along a trend sweep."""
    if vary not in ("di", "dj"):
        raise ValueError(f"vary must be 'di' or 'dj', got {vary!r}")
    rows = []
    for x in values:
        if vary == "di":
            e = with_trends(econ, d_i=x, d_j=x if lock_other else None)
        else:
            e = with_trends(econ, d_j=x)
        bo = 1.0 if agent.selfish else bo_baseline(agent, e)
        rows.append((x, solve(agent, e).s_star, bo))
    return ("x", "s_star_model", "s_star_bo"), rows


def utility_rows(preset: UtilityPreset):
    """Utility curves over the kept share; one BO column for a single agent."""
    shares = grid(0.0, 1.0, preset.step)
    if len(preset.agents) == 1:
        agent = preset.agents[0]
        rows = [
            (s, dictator_utility(agent, preset.econ, s).total, bo_utility(agent, preset.econ, s))
            for s in shares
        ]
        return ("s", "utility_model", "utility_bo"), rows
    columns = ("s", *(f"utility_a{a.a:g}" for a in preset.agents))
    rows = [
        (s, *(dictator_utility(a, preset.econ, s).total for a in preset.agents)) for s in shares
    ]
    return columns, rows


def preset_rows(name):
    if name in SWEEP_PRESETS:
        p = SWEEP_PRESETS[name]
        return sweep_rows(p.agent, p.econ, p.vary, grid(p.start, p.stop, p.step), p.lock_other)
    if name in UTILITY_PRESETS:
        return utility_rows(UTILITY_PRESETS[name])
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
