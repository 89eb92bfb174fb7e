"""Acceptance gate: one test per primary criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one
``[acceptance] <criterion>: PASS/FAIL`` line per criterion.
"""

import functools
import math
from contextlib import contextmanager

import numpy as np
from click.testing import CliRunner

from adpulse import (
    ProblemSpec,
    RewardModel,
    Schedule,
    SigmoidBase,
    SolveMode,
    base_reward,
    eval_gradient,
    eval_loss,
    make_schedule,
    solve,
)
from adpulse.cli import main
from adpulse.counts import optimize_count
from adpulse.oracle import minimize_loss

GRID_M = range(3, 11)
GRID_T = (10.0, 20.0, 100.0)
GRID_DELTA = (0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


@functools.cache
def solved(m, horizon, delta):
    return solve(ProblemSpec(m, horizon, delta))


def test_oracle_equivalence():
    with criterion("oracle-equivalence"):
        for m in GRID_M:
            time_tol = max(0.5 ** (m - 1), 1e-6)
            for horizon in GRID_T:
                for delta in GRID_DELTA:
                    spec = ProblemSpec(m, horizon, delta)
                    report = solved(m, horizon, delta)
                    numeric = minimize_loss(spec)
                    assert abs(report.loss - numeric.loss) <= 1e-6, (m, horizon, delta)
                    deviation = np.abs(
                        report.schedule.times - numeric.schedule.times
                    ).max()
                    assert deviation <= time_tol, (m, horizon, delta, deviation)


def test_stationarity():
    with criterion("stationarity"):
        step = 1e-6
        for m in GRID_M:
            for horizon in GRID_T:
                for delta in GRID_DELTA:
                    report = solved(m, horizon, delta)
                    if report.mode != SolveMode.INTERIOR:
                        continue
                    spec = ProblemSpec(m, horizon, delta)
                    grad = eval_gradient(spec, report.schedule)
                    a, n = report.boundary_count, m - 1
                    bound = 1e-8 * abs(math.log(delta)) * m
                    for i in range(a, n - a + 1):
                        assert abs(grad[i]) <= bound, (m, horizon, delta, i)
                        up = report.schedule.times.copy()
                        down = report.schedule.times.copy()
                        up[i] += step
                        down[i] -= step
                        fd = (
                            eval_loss(spec, Schedule(np.sort(up)))
                            - eval_loss(spec, Schedule(np.sort(down)))
                        ) / (2 * step)
                        assert abs(grad[i] - fd) <= 1e-6, (m, horizon, delta, i)


def test_structural_invariants():
    with criterion("structural-invariants"):
        for m in GRID_M:
            for horizon in GRID_T:
                for delta in GRID_DELTA:
                    report = solved(m, horizon, delta)
                    if report.mode != SolveMode.INTERIOR:
                        continue
                    times = report.schedule.times
                    a, n = report.boundary_count, m - 1
                    if a == 1:
                        end_gap = abs((times[1] - times[0]) - (times[-1] - times[-2]))
                        assert end_gap <= 1e-9
                    interior_gaps = np.diff(times[a : n - a + 1])
                    if interior_gaps.size >= 2:
                        assert interior_gaps.max() - interior_gaps.min() <= 1e-9
                    x = report.decay_root
                    for i in range(0, n - 2 * a + 1):
                        predicted = (a * x) ** (i + 1) / ((a * x + 1) ** i * a)
                        actual = delta ** times[a + i]
                        assert abs(actual / predicted - 1) <= 1e-10, (m, horizon, delta, i)


def test_delta_to_zero_uniform_limit():
    with criterion("delta-to-zero-uniform-limit"):
        report = solve(ProblemSpec(8, 20.0, 1e-6))
        uniform = np.arange(8) * 20.0 / 7
        assert np.abs(report.schedule.times - uniform).max() <= 0.02


def test_fig1_schedule_shape_vs_delta():
    with criterion("fig1-schedule-vs-delta"):
        horizon, m = 20.0, 8
        uniform = np.arange(m) * horizon / (m - 1)
        previous_mass = -1
        for delta in [round(0.05 * k, 2) for k in range(1, 20)]:
            times = solve(ProblemSpec(m, horizon, delta)).schedule.times
            if delta <= 0.4:
                assert np.abs(times - uniform).max() <= 0.05 * horizon, delta
            at_ends = int(
                np.count_nonzero(times == 0.0) + np.count_nonzero(times == horizon)
            )
            assert at_ends >= previous_mass, delta
            previous_mass = at_ends


def test_fig2_dominance_over_baselines():
    with criterion("fig2-dominance"):
        for m, horizon in ((16, 100.0), (7, 60.0)):
            for delta in np.linspace(1 / 51, 50 / 51, 50):
                spec = ProblemSpec(m, horizon, float(delta))
                best = solve(spec).loss
                for kind in ("uniform", "corner", "random"):
                    other = eval_loss(spec, make_schedule(kind, spec, seed=42))
                    assert best <= other + 1e-9, (m, horizon, delta, kind)


def test_fig3_loss_growth_with_count():
    with criterion("fig3-loss-vs-count"):
        losses = {
            (delta, m): solve(ProblemSpec(m, 100.0, delta)).loss
            for delta in (0.7, 0.9, 0.99)
            for m in range(4, 25)
        }
        for delta in (0.7, 0.9, 0.99):
            for m in range(4, 24):
                assert losses[(delta, m + 1)] >= losses[(delta, m)], (delta, m)
        for m in range(4, 25):
            assert losses[(0.7, m)] <= losses[(0.9, m)] <= losses[(0.99, m)], m


def test_fig4_reward_peaks_at_interior_count():
    with criterion("fig4-reward-vs-count"):
        families = (
            RewardModel(gamma=1.0, base=SigmoidBase(k=1.0, c=1 / 5)),
            RewardModel(gamma=1.0, base=base_reward("satexp", k=2.0, c=1 / 10)),
        )
        for model in families:
            best, rows = optimize_count(model, 60.0, 0.9, max_ads=30)
            rewards = [row.reward for row in rows]
            peak = rewards.index(max(rewards))
            assert best == rows[peak].m_ads
            assert 1 < best < 30
            assert all(rewards[i] < rewards[i + 1] for i in range(peak))
            assert all(
                rewards[i] > rewards[i + 1] for i in range(peak, len(rewards) - 1)
            )


def test_degenerate_contracts():
    with criterion("degenerate-contracts"):
        m, horizon = 6, 12.0
        frozen = ProblemSpec(m, horizon, 1.0)
        for kind in ("uniform", "corner", "random", "optimal"):
            sched = make_schedule(kind, frozen, seed=42)
            assert eval_loss(frozen, sched) == m * (m - 1) / 2, kind

        memoryless = solve(ProblemSpec(m, horizon, 0.0))
        assert memoryless.mode == SolveMode.DEGENERATE
        assert memoryless.schedule.times.tolist() == np.linspace(0, horizon, m).tolist()
        assert memoryless.loss == 0.0
        spec0 = ProblemSpec(4, horizon, 0.0)
        stacked = Schedule([0.0, 0.0, horizon, horizon])
        assert eval_loss(spec0, stacked) == 2.0  # coincident pairs only

        pair = solve(ProblemSpec(2, horizon, 0.35))
        assert pair.schedule.times.tolist() == [0.0, horizon]
        assert pair.loss == 0.35 ** horizon


def test_cli_determinism():
    with criterion("cli-determinism"):
        runner = CliRunner()
        invocations = [
            ["solve", "--ads", "8", "--horizon", "20", "--delta", "0.9"],
            [
                "sweep-delta", "--ads", "7", "--horizon", "60", "--delta-min", "0.5",
                "--delta-max", "0.95", "--steps", "6",
                "--strategies", "optimal,uniform,corner,random", "--seed", "42",
            ],
            ["sweep-n", "--horizon", "40", "--delta-list", "0.8,0.95",
             "--ads-min", "2", "--ads-max", "8"],
            ["optimize-count", "--horizon", "60", "--delta", "0.9", "--b-kind",
             "satexp", "--k", "2", "--c", "0.1", "--gamma", "1", "--max-ads", "12"],
            ["verify", "--ads", "5", "--horizon", "10", "--delta", "0.9"],
        ]
        for args in invocations:
            first = runner.invoke(main, args)
            second = runner.invoke(main, args)
            assert first.exit_code == 0, (args, first.output)
            assert first.output == second.output, args
