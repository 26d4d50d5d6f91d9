"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the verdict lines go
straight to the terminal even when output capture is on.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

from trendfair import cli
from trendfair.analysis import SocialFilter, censoring_rate, filter_social, summary_by_treatment, wilcoxon_signed_rank
from trendfair.experiment import HYPOTHESES, Role, Treatment, Verdict, economy_for, evaluate_hypotheses, predict_giving
from trendfair.model import AgentParams, EconomyState, dictator_utility
from trendfair.oracle import GridSpec, grid_argmax
from trendfair.presets import grid
from trendfair.simlab import PopulationConfig, simulate
from trendfair.solver import Region, solve, sweep_other_trend, sweep_own_trend, thresholds

from conftest import random_instance

REFERENCE = AgentParams(2.0, 1.0, 0.8)
LAB_POT = EconomyState(12, 10, 0, 0, 11)
SMALL_POT = EconomyState(10, 5, 0, -5, 9)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, budget_s):
        start = time.perf_counter()
        ok, detail = False, ""
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget_s, f"took {elapsed:.2f}s, budget {budget_s}s"
            ok = True
        except AssertionError as e:
            detail = f" -- {str(e).splitlines()[0] if str(e) else 'assertion failed'}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                verdict = "PASS" if ok else "FAIL"
                print(f"\n[acceptance] {number:>2} {verdict}  {title} ({elapsed:.2f}s){detail}")

    return run


def boundaries(xs, regions):
    """x midpoints where the reported region changes along a scan."""
    return [(xs[k] + xs[k + 1]) / 2 for k in range(len(xs) - 1) if regions[k] != regions[k + 1]]


def test_01_other_trend_sweep_exact(criterion):
    with criterion(1, "s* = 0.5 + dj/44 on the recipient-trend sweep, 1e-12", 1.0):
        ds = grid(-5, 5, 0.1)
        assert len(ds) == 101
        worst = max(abs(r.s_star - (0.5 + d / 44)) for d, r in sweep_other_trend(REFERENCE, LAB_POT, ds))
        assert worst <= 1e-12, f"max error {worst:.3g}"


def test_02_locked_trend_sweep_structure(criterion):
    with criterion(2, "locked-trend sweep: plateaus, kink branch, boundaries -5.5/-5.9", 1.0):
        xs = grid(-10, 10, 0.001)
        res = [r for _, r in sweep_own_trend(REFERENCE, LAB_POT, xs, lock_other=True)]
        for d, r in zip(xs, res):
            if d >= -5.5:
                expected = 0.5
            elif d >= -5.9:
                expected = -d / 11
            else:
                expected = 0.5 + 1.6 / 44
            assert abs(r.s_star - expected) <= 1e-12, f"d={d}: {r.s_star} vs {expected}"
        found = boundaries(xs, [r.region for r in res])
        assert len(found) == 2, f"boundaries {found}"
        assert abs(found[0] - -5.9) <= 0.01 and abs(found[1] - -5.5) <= 0.01, f"boundaries {found}"


def test_03_own_trend_sweep_structure(criterion):
    with criterion(3, "own-trend sweep: boundaries -4 and -15.2/3, plotted lines to 1e-9", 1.0):
        agent = AgentParams(2.0, 0.5, 0.8)
        assert agent.type_ratio == 4
        xs = grid(-10, 10, 0.001)
        res = [r for _, r in sweep_own_trend(agent, SMALL_POT, xs, lock_other=False)]
        found = boundaries(xs, [r.region for r in res])
        assert len(found) == 2, f"boundaries {found}"
        assert abs(found[0] - -15.2 / 3) <= 0.01 and abs(found[1] - -4) <= 0.01, f"boundaries {found}"
        for x, r in zip(xs, res):
            if r.region is Region.UPPER_INTERIOR:
                line = 4 / 36 + 0.5 - 5 / 36 + (-5 - x) / 36
            elif r.region is Region.LOSS_INTERIOR:
                line = 4 * 1.8 / 36 + 0.5 - 5 / 36 + (-5 - x) / 36
            else:
                assert r.region is Region.KINK
                line = -x / 9
            assert abs(r.s_star - line) <= 1e-9, f"x={x}: {r.s_star} vs {line}"


@pytest.fixture(scope="module")
def random_instances():
    rng = np.random.default_rng(20240)
    return [random_instance(rng) for _ in range(10_000)]


def test_04_closed_form_matches_grid_oracle(criterion, random_instances):
    with criterion(4, "closed form vs refined grid on 10,000 instances", 30.0):
        # 1001 points then two zooms: final spacing 4e-9, well below 1e-6
        spec = GridSpec(steps=1000, refine_rounds=2)
        bad_s, bad_u = [], []
        for agent, e in random_instances:
            s_closed = solve(agent, e).s_star
            s_grid, u_grid = grid_argmax(agent, e, spec)
            if abs(s_closed - s_grid) > 1e-4:
                bad_s.append((agent, e, s_closed, s_grid))
            if dictator_utility(agent, e, s_closed).total < u_grid - 1e-9:
                bad_u.append((agent, e))
        assert not bad_s, f"{len(bad_s)} share mismatches, first {bad_s[0]}"
        assert not bad_u, f"{len(bad_u)} utility shortfalls, first {bad_u[0]}"


def test_05_corner_implications(criterion, random_instances):
    with criterion(5, "corner implications on the same instances, zero violations", 30.0):
        violations = []
        for agent, e in random_instances:
            th = thresholds(e, agent)
            s = solve(agent, e).s_star
            if agent.type_ratio >= th.u_bound and s != 1:
                violations.append(("keep-all", agent, e, s))
            if agent.b > 0 and agent.type_ratio <= th.l_bound and s != 0:
                violations.append(("give-all", agent, e, s))
        assert not violations, f"{len(violations)} violations, first {violations[0]}"


def test_06_trend_monotonicity(criterion):
    with criterion(6, "weak monotonicity of s* in locked and recipient trends", 10.0):
        rng = np.random.default_rng(606)
        for _ in range(1000):
            agent, e = random_instance(rng)
            span = min(e.w_i, e.w_j)
            locked = [r.s_star for _, r in sweep_own_trend(agent, e, np.linspace(-span, span, 41), lock_other=True)]
            assert np.all(np.diff(locked) <= 1e-9), f"locked sweep rises: {agent}, {e}"
            other = [r.s_star for _, r in sweep_other_trend(agent, e, np.linspace(-e.w_j, e.w_j, 41))]
            assert np.all(np.diff(other) >= -1e-9), f"recipient sweep falls: {agent}, {e}"


def test_07_reference_agent_predictions(criterion):
    expected = {
        (Role.HIGH, Treatment.STABLE): 5.75,
        (Role.HIGH, Treatment.INTRA_INCREASE): 5.75,
        (Role.HIGH, Treatment.INTRA_DECREASE): 5.35,
        (Role.HIGH, Treatment.CATCHING_UP): 5.00,
        (Role.LOW, Treatment.CATCHING_UP): 5.00,
        (Role.LOW, Treatment.STABLE): 4.25,
        (Role.LOW, Treatment.INTRA_INCREASE): 4.25,
        (Role.LOW, Treatment.INTRA_DECREASE): 3.85,
        (Role.LOW, Treatment.INTRA_INTER_CHANGE): 0.00,
    }
    with criterion(7, "reference agent giving vector, grid-confirmed, H1-H4 hold", 1.0):
        for (role, t), g in expected.items():
            got = predict_giving(REFERENCE, t, role).giving
            assert abs(got - g) <= 1e-6, f"{role.value}/{t.value}: {got} vs {g}"
            s_grid, _ = grid_argmax(REFERENCE, economy_for(t, role))
            assert abs((1 - s_grid) * 11 - g) <= 1e-6, f"grid {role.value}/{t.value}"
        verdicts = evaluate_hypotheses(REFERENCE)
        for name in HYPOTHESES:
            assert verdicts[name].verdict is Verdict.HOLDS, f"{name}: {verdicts[name].verdict}"


def test_08_lab_scale_simulation(criterion):
    with criterion(8, "294 subjects give 1,470 records with censoring >= 0.56", 5.0):
        recs = simulate(PopulationConfig(294, share_selfish=0.56), 8)
        assert len(recs) == 1470, f"{len(recs)} records"
        rate = censoring_rate(recs)
        assert rate >= 0.56, f"censoring {rate:.4f}"


def test_09_social_subsample_ordering(criterion):
    with criterion(9, "social-subsample means follow the decrease ordering", 5.0):
        recs = simulate(PopulationConfig(200, share_selfish=0.7), 9)
        cells, _ = summary_by_treatment(filter_social(recs, SocialFilter(2.0)))
        m = {(c.role, c.treatment): c.mean for c in cells}
        hi = [m[Role.HIGH, t] for t in (Treatment.CATCHING_UP, Treatment.INTRA_DECREASE, Treatment.STABLE)]
        lo = [m[Role.LOW, t] for t in (Treatment.INTRA_INTER_CHANGE, Treatment.INTRA_DECREASE, Treatment.STABLE)]
        assert hi[0] < hi[1] < hi[2], f"high earners {hi}"
        assert lo[0] < lo[1] < lo[2], f"low earners {lo}"


def test_10_signed_rank_correctness(criterion):
    with criterion(10, "signed-rank p: n=5 exact, exact vs normal at n=20, zeros", 10.0):
        r = wilcoxon_signed_rank([3.0, 1.0, 4.0, 1.5, 9.0], [0.0] * 5)
        # independent route: list all 32 sign patterns of ranks 1..5
        sums = [sum(k + 1 for k, s in enumerate(signs) if s) for signs in itertools.product((0, 1), repeat=5)]
        enum_p = 2 * min(np.mean(np.array(sums) >= 15), np.mean(np.array(sums) <= 15))
        assert r.method == "exact" and r.w_plus == 15
        assert r.p_value == pytest.approx(0.0625, abs=1e-15) and enum_p == 0.0625
        rng = np.random.default_rng(1010)
        worst = 0.0
        for _ in range(100):
            x, y = rng.normal(size=20), rng.normal(size=20)
            assert len(np.unique(np.abs(x - y))) == 20
            exact = wilcoxon_signed_rank(x, y, method="exact").p_value
            approx = wilcoxon_signed_rank(x, y, method="approx").p_value
            worst = max(worst, abs(exact - approx))
        assert worst <= 0.01, f"max exact-normal gap {worst:.4f}"
        z = wilcoxon_signed_rank([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert z.n_effective == 0 and z.p_value == 1


def test_11_simulate_deterministic(criterion, tmp_path):
    with criterion(11, "simulate command twice gives byte-identical CSV", 5.0):
        argv = ["simulate", "--subjects", "294", "--seed", "42", "--share-selfish", "0.56",
                "--ab", "0.5:8", "--eta", "0.2:0.9", "--noise-sd", "1.0"]
        assert cli.main(argv + ["--out", str(tmp_path / "a.csv")]) == 0
        assert cli.main(argv + ["--out", str(tmp_path / "b.csv")]) == 0
        a, b = (tmp_path / "a.csv").read_bytes(), (tmp_path / "b.csv").read_bytes()
        assert a == b and a.count(b"\n") == 1471
