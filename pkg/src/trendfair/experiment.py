"""The five-treatment redistribution experiment and its model predictions.

Each period pairs a High Earner (18 in total wages) with a Low Earner (15).
A third of every wage goes into a joint account of 11, which one of the two
then splits as dictator.  Treatments differ only in how wages move between
the two sub-periods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .model import AgentParams, EconomyState
from .oracle import discrete_argmax
from .solver import Region, solve

TAX_RATE = 1 / 3
JOINT_ACCOUNT = 11.0
TICK = 0.10


class Treatment(str, Enum):
    STABLE = "stable"
    INTRA_DECREASE = "intra-decrease"
    INTRA_INCREASE = "intra-increase"
    INTRA_INTER_CHANGE = "intra-inter-change"
    CATCHING_UP = "catching-up"

    def __str__(self):
        return self.value

    @property
    def label(self) -> str:
        return "".join(part.capitalize() for part in self.value.split("-"))


class Role(str, Enum):
    HIGH = "high"
    LOW = "low"

    def __str__(self):
        return self.value

    @property
    def other(self) -> "Role":
        return Role.LOW if self is Role.HIGH else Role.HIGH

    @property
    def label(self) -> str:
        return "High Earner" if self is Role.HIGH else "Low Earner"


@dataclass(frozen=True)
class TreatmentSpec:
    id: Treatment
    high_wages: tuple[float, float]
    low_wages: tuple[float, float]

    def __post_init__(self):
        if sum(self.high_wages) != 18 or sum(self.low_wages) != 15:
            raise ValueError(f"{self.id}: wage totals must be 18 (high) and 15 (low)")

    def wages(self, role: Role) -> tuple[float, float]:
        return self.high_wages if role is Role.HIGH else self.low_wages


TREATMENTS = {
    Treatment.STABLE: TreatmentSpec(Treatment.STABLE, (9.0, 9.0), (7.5, 7.5)),
    Treatment.INTRA_DECREASE: TreatmentSpec(Treatment.INTRA_DECREASE, (13.5, 4.5), (12.0, 3.0)),
    Treatment.INTRA_INCREASE: TreatmentSpec(Treatment.INTRA_INCREASE, (4.5, 13.5), (3.0, 12.0)),
    Treatment.INTRA_INTER_CHANGE: TreatmentSpec(
        Treatment.INTRA_INTER_CHANGE, (4.5, 13.5), (12.0, 3.0)
    ),
    Treatment.CATCHING_UP: TreatmentSpec(Treatment.CATCHING_UP, (9.0, 9.0), (6.0, 9.0)),
}


def wage_schedule(treatment, role) -> tuple[float, float]:
    return TREATMENTS[Treatment(treatment)].wages(Role(role))


def tax_pot(treatment) -> float:
    spec = TREATMENTS[Treatment(treatment)]
    pot = TAX_RATE * (sum(spec.high_wages) + sum(spec.low_wages))
    assert math.isclose(pot, JOINT_ACCOUNT), pot
    return JOINT_ACCOUNT


def economy_for(treatment, role) -> EconomyState:
    role = Role(role)
    own = wage_schedule(treatment, role)
    other = wage_schedule(treatment, role.other)
    return EconomyState(
        w_i=sum(own),
        w_j=sum(other),
        d_i=own[1] - own[0],
        d_j=other[1] - other[0],
        t_pot=tax_pot(treatment),
    )


@dataclass(frozen=True)
class Prediction:
    treatment: Treatment
    role: Role
    s_star: float
    giving: float
    region: Region


def predict_giving(agent: AgentParams, treatment, role, discrete=False) -> Prediction:
    """Model-predicted giving for one role in one treatment.

    With ``discrete`` the share is chosen from the 10-cent grid instead; the
    region label still comes from the continuous solution.
    """
    treatment, role = Treatment(treatment), Role(role)
    econ = economy_for(treatment, role)
    res = solve(agent, econ)
    if not discrete:
        return Prediction(treatment, role, res.s_star, res.giving, res.region)
    ticks, s = discrete_argmax(agent, econ, TICK)
    return Prediction(treatment, role, s, round(ticks * TICK, 2), res.region)


def prediction_vector(agent: AgentParams, discrete=False) -> dict:
    """Predictions for every (role, treatment) cell."""
    return {
        (role, t): predict_giving(agent, t, role, discrete)
        for role in Role
        for t in Treatment
    }


class Verdict(str, Enum):
    HOLDS = "holds"
    HOLDS_WEAKLY = "holds-weakly"
    FAILS = "fails"

    def __str__(self):
        return self.value


_ORDER_TOL = 1e-9

_T = Treatment
# (role, treatments predicted lower, treatments they are compared against)
HYPOTHESES = {
    "H1": (Role.HIGH, (_T.INTRA_DECREASE, _T.CATCHING_UP),
           (_T.STABLE, _T.INTRA_INCREASE, _T.INTRA_INTER_CHANGE)),
    "H2": (Role.LOW, (_T.INTRA_INTER_CHANGE, _T.INTRA_DECREASE),
           (_T.STABLE, _T.INTRA_INCREASE, _T.CATCHING_UP)),
    "H3": (Role.LOW, (_T.INTRA_INTER_CHANGE,),
           (_T.INTRA_DECREASE, _T.STABLE, _T.INTRA_INCREASE, _T.CATCHING_UP)),
    "H4": (Role.LOW, (_T.INTRA_INTER_CHANGE,), (_T.INTRA_DECREASE,)),
}
# Positive relative trend for High Earners: the model predicts more giving,
# the lab data do not show it.
MODEL_ONLY = {
    "R4": (Role.HIGH, (_T.STABLE, _T.INTRA_INCREASE), (_T.INTRA_INTER_CHANGE,)),
}
MODEL_ONLY_TAG = "model-only; not supported by the lab data"


@dataclass(frozen=True)
class HypothesisResult:
    name: str
    role: Role
    lower: dict
    higher: dict
    verdict: Verdict
    note: str = field(default="")


def _order_verdict(lower, higher) -> Verdict:
    strict = all(lo < hi - _ORDER_TOL for lo in lower for hi in higher)
    if strict:
        return Verdict.HOLDS
    weak = all(lo <= hi + _ORDER_TOL for lo in lower for hi in higher)
    return Verdict.HOLDS_WEAKLY if weak else Verdict.FAILS


def evaluate_hypotheses(agent: AgentParams, discrete=False) -> dict:
    """Check each "gives less in A than in B" ordering on predicted giving.

    Strict orderings map to ``holds``; orderings that only hold with some
    equalities (e.g. every cell at zero) map to ``holds-weakly``.
    """
    preds = prediction_vector(agent, discrete)
    out = {}
    for table, note in ((HYPOTHESES, ""), (MODEL_ONLY, MODEL_ONLY_TAG)):
        for name, (role, lower, higher) in table.items():
            lo = {t: preds[role, t].giving for t in lower}
            hi = {t: preds[role, t].giving for t in higher}
            out[name] = HypothesisResult(
                name, role, lo, hi, _order_verdict(lo.values(), hi.values()), note
            )
    return out
