"""Brute-force maximisers of the dictator utility.

These never look at the closed form; they only evaluate the utility.
``grid_argmax`` certifies the solver, ``discrete_argmax`` models the lab's
10-cent choice set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import AgentParams, EconomyState, dictator_utility_array


@dataclass(frozen=True)
class GridSpec:
    steps: int = 10_000
    refine_rounds: int = 3

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 10:
            raise ValueError(f"steps must be an integer >= 10, got {self.steps!r}")
        if int(self.refine_rounds) != self.refine_rounds or self.refine_rounds < 0:
            raise ValueError(f"refine_rounds must be an integer >= 0, got {self.refine_rounds!r}")


def grid_argmax(agent: AgentParams, econ: EconomyState, grid: GridSpec = GridSpec()):
    """Return ``(s_best, u_best)`` from a uniform grid plus local refinement.

    Each round re-grids the bracket ``[s_best - h, s_best + h]`` (clipped to
    ``[0, 1]``) with the same number of intervals, so the step shrinks by a
    factor of ``steps / 2`` per round.  Ties go to the smaller share.
    """
    lo, hi = 0.0, 1.0
    s_best = u_best = None
    for _ in range(grid.refine_rounds + 1):
        s = np.linspace(lo, hi, grid.steps + 1)
        u = dictator_utility_array(agent, econ, s)
        k = int(np.argmax(u))
        if u_best is None or u[k] > u_best:
            s_best, u_best = float(s[k]), float(u[k])
        h = (hi - lo) / grid.steps
        lo, hi = max(0.0, s_best - h), min(1.0, s_best + h)
    return s_best, u_best


def discrete_argmax(agent: AgentParams, econ: EconomyState, tick: float = 0.10):
    """Best giving level on the ``tick`` grid, by exhaustive evaluation.

    Returns ``(giving_ticks, s)``.  Utilities within a relative 1e-12 of the
    best count as tied; ties go to the larger giving.
    """
    if not tick > 0:
        raise ValueError(f"tick must be > 0, got {tick!r}")
    n = round(econ.t_pot / tick)
    if n < 1 or abs(n * tick - econ.t_pot) > 1e-9:
        raise ValueError(f"tick {tick} does not divide the pot {econ.t_pot}")
    k = np.arange(n + 1)
    s = 1.0 - k / n
    u = dictator_utility_array(agent, econ, s)
    best = u.max()
    tied = np.flatnonzero(u >= best - 1e-12 * max(1.0, abs(best)))
    g = int(tied[-1])
    return g, float(s[g])
