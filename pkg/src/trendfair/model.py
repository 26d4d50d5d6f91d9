"""Trend-augmented inequity-aversion utility.

An agent cares about its own final income, about whether its own income
trend ends up negative (loss side only), and about quadratic gaps to the
other player in both income and trend.  All money values are plain floats.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AgentParams:
    """Preference weights of one individual.

    ``a`` weighs personal concerns, ``b`` social concerns and ``eta`` the
    penalty on a negative own trend.  ``b == 0`` is the purely selfish limit.
    """

    a: float
    b: float
    eta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"a must be > 0, got {self.a!r}")
        if not (math.isfinite(self.b) and self.b >= 0):
            raise ValueError(f"b must be >= 0, got {self.b!r}")
        _check_eta(self.eta)

    @property
    def selfish(self) -> bool:
        return self.b == 0

    @property
    def type_ratio(self) -> float:
        """a/b, or +inf for a selfish agent."""
        return math.inf if self.b == 0 else self.a / self.b


@dataclass(frozen=True)
class EconomyState:
    """Wages, trends and tax pot entering one dictator decision.

    ``w_i``/``w_j`` are the summed wages of dictator and recipient,
    ``d_i``/``d_j`` their trends (second wage minus first) and ``t_pot`` the
    joint account to be split.
    """

    w_i: float
    w_j: float
    d_i: float
    d_j: float
    t_pot: float

    def __post_init__(self):
        for name in ("w_i", "w_j", "d_i", "d_j", "t_pot"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        for name in ("w_i", "w_j", "t_pot"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if abs(self.d_i) > self.w_i or abs(self.d_j) > self.w_j:
            warnings.warn(
                "trend magnitude exceeds the summed wages that generated it",
                stacklevel=3,
            )

    @property
    def kink(self) -> float:
        """Kept share at which the dictator's final trend is exactly zero."""
        return -self.d_i / self.t_pot


@dataclass(frozen=True)
class Outcome:
    y_i: float
    y_j: float
    t_i: float
    t_j: float


@dataclass(frozen=True)
class UtilityBreakdown:
    material: float
    trend_loss: float
    income_ineq: float
    trend_ineq: float

    @property
    def total(self) -> float:
        return self.material + self.trend_loss + self.income_ineq + self.trend_ineq


def _check_eta(eta):
    if not (0 <= eta < 1):
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")


def _check_share(s):
    if not (0 <= s <= 1):
        raise ValueError(f"kept share s must lie in [0, 1], got {s!r}")


def trend_gain_loss(t, eta):
    """Loss-side trend penalty: ``eta * t`` for negative ``t``, else 0."""
    _check_eta(eta)
    return eta * t if t < 0 else 0.0


def relative_motivation(x_self, x_other):
    """Squared distance of ``x_self`` to the midpoint of both values."""
    return (x_self - 0.5 * (x_self + x_other)) ** 2


def outcome(econ: EconomyState, s: float) -> Outcome:
    """Final incomes and trends when the dictator keeps share ``s`` of the pot."""
    _check_share(s)
    kept = s * econ.t_pot
    given = (1 - s) * econ.t_pot
    return Outcome(
        y_i=econ.w_i + kept,
        y_j=econ.w_j + given,
        t_i=econ.d_i + kept,
        t_j=econ.d_j + given,
    )


def utility(agent: AgentParams, y_i, y_j, t_i, t_j) -> UtilityBreakdown:
    return UtilityBreakdown(
        material=agent.a * y_i,
        trend_loss=agent.a * trend_gain_loss(t_i, agent.eta),
        income_ineq=-agent.b * relative_motivation(y_i, y_j),
        trend_ineq=-agent.b * relative_motivation(t_i, t_j),
    )


def dictator_utility(agent: AgentParams, econ: EconomyState, s: float) -> UtilityBreakdown:
    """Dictator's utility after keeping share ``s`` of the tax pot."""
    o = outcome(econ, s)
    return utility(agent, o.y_i, o.y_j, o.t_i, o.t_j)


def bo_utility(agent: AgentParams, econ: EconomyState, s: float) -> float:
    """Trend-blind counterpart: material payoff minus income inequality only."""
    u = dictator_utility(agent, econ, s)
    return u.material + u.income_ineq


def branch_utilities(agent: AgentParams, econ: EconomyState, s) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate both smooth pieces of the dictator utility over any real ``s``.

    Returns ``(upper, loss)``: the piece without the trend penalty and the
    piece with it applied unconditionally.  The dictator utility equals
    ``loss`` where the final trend is negative and ``upper`` elsewhere.
    """
    s = np.asarray(s, dtype=float)
    T = econ.t_pot
    income_gap = 0.5 * (econ.w_i - econ.w_j + 2 * s * T - T)
    trend_gap = 0.5 * (econ.d_i - econ.d_j + 2 * s * T - T)
    social = agent.b * (income_gap**2 + trend_gap**2)
    upper = agent.a * (econ.w_i + s * T) - social
    loss = upper + agent.a * agent.eta * (econ.d_i + s * T)
    return upper, loss


def dictator_utility_array(agent: AgentParams, econ: EconomyState, s) -> np.ndarray:
    """Vectorised total dictator utility over an array of kept shares."""
    s = np.asarray(s, dtype=float)
    upper, loss = branch_utilities(agent, econ, s)
    return np.where(econ.d_i + s * econ.t_pot < 0, loss, upper)
