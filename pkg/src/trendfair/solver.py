"""Closed-form maximisation of the dictator utility over the kept share.

The dictator utility splices two concave quadratics at the kink
``s = -d_i / T``.  The loss piece is steeper there, so the splice is itself
concave and the constrained maximiser on ``[0, 1]`` is the clamp of the
unconstrained one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import AgentParams, EconomyState


class Region(str, Enum):
    UPPER_INTERIOR = "upper-interior"
    LOSS_INTERIOR = "loss-interior"
    KINK = "kink"
    CORNER_KEEP_ALL = "corner-keep-all"
    CORNER_GIVE_ALL = "corner-give-all"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Thresholds:
    """Type-ratio cutoffs for one economy.

    ``h`` separates the no-loss branch from the kink, ``h / (1 + eta)``
    separates the kink from the loss branch.  ``u_bound`` and ``l_bound`` are
    the keep-all and give-all cutoffs.
    """

    h: float
    u_bound: float
    l_bound: float
    eta: float

    @property
    def h_loss(self) -> float:
        return self.h / (1 + self.eta)


@dataclass(frozen=True)
class SolveResult:
    s_star: float
    region: Region
    s_unclamped: float
    thresholds: Thresholds
    giving: float


def thresholds(econ: EconomyState, agent: AgentParams) -> Thresholds:
    dw = econ.w_i - econ.w_j
    dd = econ.d_i - econ.d_j
    T = econ.t_pot
    return Thresholds(
        h=dw - 2 * T - 3 * econ.d_i - econ.d_j,
        u_bound=dw + dd + 2 * T,
        l_bound=(dw + dd - 2 * T) / (1 + agent.eta),
        eta=agent.eta,
    )


def upper_argmax(ratio, econ: EconomyState) -> float:
    """Unconstrained maximiser of the piece without the trend penalty."""
    T = econ.t_pot
    return ratio / (4 * T) + 0.5 + (econ.w_j - econ.w_i) / (4 * T) + (econ.d_j - econ.d_i) / (4 * T)


def loss_argmax(ratio, eta, econ: EconomyState) -> float:
    """Unconstrained maximiser of the piece with the trend penalty."""
    T = econ.t_pot
    return (
        ratio * (1 + eta) / (4 * T)
        + 0.5
        + (econ.w_j - econ.w_i) / (4 * T)
        + (econ.d_j - econ.d_i) / (4 * T)
    )


def solve(agent: AgentParams, econ: EconomyState) -> SolveResult:
    """Optimal kept share, the branch it lies on and the implied giving."""
    th = thresholds(econ, agent)
    T = econ.t_pot
    if agent.selfish:
        return SolveResult(1.0, Region.CORNER_KEEP_ALL, math.inf, th, 0.0)

    ratio = agent.a / agent.b
    if ratio > th.h:
        s, region = upper_argmax(ratio, econ), Region.UPPER_INTERIOR
    elif ratio < th.h_loss:
        s, region = loss_argmax(ratio, agent.eta, econ), Region.LOSS_INTERIOR
    else:
        s, region = econ.kink, Region.KINK

    if s >= 1:
        s_star, region_out = 1.0, Region.CORNER_KEEP_ALL
    elif s <= 0:
        s_star, region_out = 0.0, Region.CORNER_GIVE_ALL
    else:
        s_star, region_out = s, region
    return SolveResult(s_star, region_out, s, th, (1 - s_star) * T)


def bo_baseline(agent: AgentParams, econ: EconomyState) -> float:
    """Kept share predicted when trends are ignored altogether."""
    if agent.selfish:
        raise ValueError("bo_baseline needs b > 0")
    T = econ.t_pot
    s = agent.a / agent.b / (4 * T) + 0.5 + (econ.w_j - econ.w_i) / (4 * T)
    return min(1.0, max(0.0, s))


def with_trends(econ: EconomyState, d_i=None, d_j=None) -> EconomyState:
    return EconomyState(
        econ.w_i,
        econ.w_j,
        econ.d_i if d_i is None else d_i,
        econ.d_j if d_j is None else d_j,
        econ.t_pot,
    )


def sweep_own_trend(agent, econ, d_range, lock_other=True):
    """Solve along a range of own trends.

    With ``lock_other`` the recipient's trend moves with the dictator's
    (``d_j = d_i``); otherwise ``econ.d_j`` is held fixed.
    """
    out = []
    for d in d_range:
        e = with_trends(econ, d_i=d, d_j=d if lock_other else None)
        out.append((d, solve(agent, e)))
    return out


def sweep_other_trend(agent, econ, d_j_range):
    """Solve along a range of recipient trends with the own trend held fixed."""
    return [(d, solve(agent, with_trends(econ, d_j=d))) for d in d_j_range]
