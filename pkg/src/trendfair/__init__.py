"""Trend-augmented inequity aversion for dictator-game redistribution."""

from .model import (
    AgentParams,
    EconomyState,
    Outcome,
    UtilityBreakdown,
    dictator_utility,
    outcome,
    relative_motivation,
    trend_gain_loss,
    utility,
)
from .oracle import GridSpec, discrete_argmax, grid_argmax
from .solver import Region, SolveResult, Thresholds, bo_baseline, solve, thresholds
from .experiment import Role, Treatment, economy_for, evaluate_hypotheses, predict_giving

__version__ = "0.1.0"

__all__ = [
    "AgentParams",
    "EconomyState",
    "GridSpec",
    "Outcome",
    "Region",
    "Role",
    "SolveResult",
    "Thresholds",
    "Treatment",
    "UtilityBreakdown",
    "bo_baseline",
    "dictator_utility",
    "discrete_argmax",
    "economy_for",
    "evaluate_hypotheses",
    "grid_argmax",
    "outcome",
    "predict_giving",
    "relative_motivation",
    "solve",
    "thresholds",
    "trend_gain_loss",
    "utility",
]
