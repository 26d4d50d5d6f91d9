"""Synthetic lab sessions: populations, pairing, treatment orders, CSV export.

Randomness comes from numpy's PCG64 generator seeded through
``numpy.random.SeedSequence``; the same (config, seed) always yields the
same records and a byte-identical CSV.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .experiment import JOINT_ACCOUNT, TICK, Role, Treatment, predict_giving, wage_schedule
from .model import AgentParams

CSV_COLUMNS = (
    "session_id",
    "subject_id",
    "pair_id",
    "role",
    "period_index",
    "treatment",
    "wage1",
    "wage2",
    "giving",
    "implemented",
)
N_PERIODS = len(Treatment)

# streams spawned from one user seed
_POPULATION_STREAM = 0
_SESSION_STREAM = 1


@dataclass(frozen=True)
class PointMass:
    values: tuple[float, ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.values:
            raise ValueError("point mass needs at least one value")
        if self.weights is not None:
            if len(self.weights) != len(self.values):
                raise ValueError("weights and values differ in length")
            if any(w < 0 for w in self.weights) or not math.isclose(sum(self.weights), 1.0):
                raise ValueError("weights must be nonnegative and sum to 1")

    def sample(self, rng, n):
        return rng.choice(np.asarray(self.values, dtype=float), size=n, p=self.weights)


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"range is not ordered: {self.lo} > {self.hi}")

    def sample(self, rng, n):
        return rng.uniform(self.lo, self.hi, size=n)


@dataclass(frozen=True)
class LogUniform(Uniform):
    def __post_init__(self):
        super().__post_init__()
        if self.lo <= 0:
            raise ValueError("log-uniform range needs a positive lower end")

    def sample(self, rng, n):
        return np.exp(rng.uniform(math.log(self.lo), math.log(self.hi), size=n))


@dataclass(frozen=True)
class PopulationConfig:
    """Mix of selfish subjects and social subjects with random a/b and eta.

    Social subjects get ``b = 1`` and ``a`` equal to the drawn type ratio;
    selfish ones get ``a = 1, b = 0``.
    """

    n_subjects: int
    share_selfish: float = 0.0
    social_ab: PointMass | Uniform = field(default_factory=lambda: PointMass((2.0,)))
    eta: PointMass | Uniform = field(default_factory=lambda: PointMass((0.8,)))
    decision_noise_sd: float = 0.0

    def __post_init__(self):
        if int(self.n_subjects) != self.n_subjects or self.n_subjects < 2 or self.n_subjects % 2:
            raise ValueError(f"n_subjects must be an even integer >= 2, got {self.n_subjects!r}")
        if not 0 <= self.share_selfish <= 1:
            raise ValueError(f"share_selfish must lie in [0, 1], got {self.share_selfish!r}")
        if not self.decision_noise_sd >= 0:
            raise ValueError(f"decision_noise_sd must be >= 0, got {self.decision_noise_sd!r}")
        lo = min(self.eta.values) if isinstance(self.eta, PointMass) else self.eta.lo
        hi = max(self.eta.values) if isinstance(self.eta, PointMass) else self.eta.hi
        if lo < 0 or hi >= 1:
            raise ValueError("eta distribution must stay within [0, 1)")
        ab_lo = min(self.social_ab.values) if isinstance(self.social_ab, PointMass) else self.social_ab.lo
        if ab_lo <= 0:
            raise ValueError("a/b distribution must be positive")

    @property
    def n_selfish(self) -> int:
        # rounded toward more selfish subjects
        return min(self.n_subjects, math.ceil(self.n_subjects * self.share_selfish - 1e-9))


@dataclass(frozen=True)
class GivingRecord:
    session_id: int
    subject_id: int
    pair_id: int
    role: Role
    period_index: int
    treatment: Treatment
    wage1: float
    wage2: float
    giving: float
    implemented: bool

    def sort_key(self):
        return (self.session_id, self.pair_id, self.period_index, self.role is Role.LOW)


def _rng(seed, stream):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))


def sample_population(config: PopulationConfig, seed: int):
    """Draw ``(subject_id, AgentParams)`` pairs; ids run from 1."""
    rng = _rng(seed, _POPULATION_STREAM)
    n = config.n_subjects
    selfish = np.zeros(n, dtype=bool)
    selfish[rng.permutation(n)[: config.n_selfish]] = True
    ratios = config.social_ab.sample(rng, n)
    etas = config.eta.sample(rng, n)
    population = []
    for k in range(n):
        if selfish[k]:
            agent = AgentParams(a=1.0, b=0.0, eta=float(etas[k]))
        else:
            agent = AgentParams(a=float(ratios[k]), b=1.0, eta=float(etas[k]))
        population.append((k + 1, agent))
    return population


@lru_cache(maxsize=4096)
def _model_giving(agent: AgentParams, treatment: Treatment, role: Role) -> float:
    return predict_giving(agent, treatment, role, discrete=True).giving


def _to_grid(x):
    ticks = round(min(JOINT_ACCOUNT, max(0.0, x)) / TICK)
    return round(ticks * TICK, 2)


def run_session(population, seed: int, *, noise_sd: float = 0.0, session_id: int = 1):
    """Play five periods with fixed pairs and roles.

    Subjects are shuffled into pairs; the first member of each pair is the
    High Earner for the whole session.  Every pair gets its own uniformly
    drawn order of the five treatments, and a fair coin per pair and period
    picks whose decision is implemented.
    """
    if len(population) % 2:
        raise ValueError(f"population size must be even, got {len(population)}")
    rng = _rng(seed, _SESSION_STREAM)
    order = rng.permutation(len(population))
    treatments = list(Treatment)
    records = []
    for p in range(len(population) // 2):
        pair_id = p + 1
        members = {
            Role.HIGH: population[order[2 * p]],
            Role.LOW: population[order[2 * p + 1]],
        }
        schedule = rng.permutation(len(treatments))
        for period, t_idx in enumerate(schedule, start=1):
            treatment = treatments[t_idx]
            chosen = Role.HIGH if rng.random() < 0.5 else Role.LOW
            for role in (Role.HIGH, Role.LOW):
                subject_id, agent = members[role]
                g = _model_giving(agent, treatment, role)
                if noise_sd > 0:
                    g = g + rng.normal(0.0, noise_sd)
                w1, w2 = wage_schedule(treatment, role)
                records.append(
                    GivingRecord(
                        session_id=session_id,
                        subject_id=subject_id,
                        pair_id=pair_id,
                        role=role,
                        period_index=period,
                        treatment=treatment,
                        wage1=w1,
                        wage2=w2,
                        giving=_to_grid(g),
                        implemented=role is chosen,
                    )
                )
    return records


def simulate(config: PopulationConfig, seed: int, session_id: int = 1):
    """Sample a population and run one session with the config's noise."""
    population = sample_population(config, seed)
    return run_session(population, seed, noise_sd=config.decision_noise_sd, session_id=session_id)


def record_row(r: GivingRecord):
    return [
        str(r.session_id),
        str(r.subject_id),
        str(r.pair_id),
        r.role.value,
        str(r.period_index),
        r.treatment.value,
        f"{r.wage1:.2f}",
        f"{r.wage2:.2f}",
        f"{r.giving:.2f}",
        "1" if r.implemented else "0",
    ]


def export_csv(records, path):
    """Write records in canonical column and row order (UTF-8, LF endings)."""
    rows = sorted(records, key=GivingRecord.sort_key)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            w.writerows(record_row(r) for r in rows)
    except OSError as e:
        raise OSError(e.errno, f"cannot write {path}: {e.strerror}") from e
