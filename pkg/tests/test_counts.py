"""Linear search for the reward-maximizing ad count."""

import math

import pytest

from adpulse import ProblemSpec, RewardModel, SigmoidBase, TabularBase, base_reward, solve
from adpulse.counts import optimize_count


def test_zero_gamma_takes_every_ad():
    model = RewardModel(gamma=0.0, base=SigmoidBase(1.0, 0.2))
    best, rows = optimize_count(model, 60.0, 0.9, max_ads=12)
    assert best == 12
    assert len(rows) == 12


def test_zero_base_takes_one_ad():
    model = RewardModel(gamma=1.0, base=SigmoidBase(0.0, 0.2))
    best, _ = optimize_count(model, 60.0, 0.9, max_ads=12)
    assert best == 1


def test_rows_are_self_consistent():
    model = RewardModel(gamma=1.5, base=base_reward("satexp", 2.0, 0.1))
    best, rows = optimize_count(model, 60.0, 0.9, max_ads=20)
    for row in rows:
        assert row.error is None
        assert row.reward == pytest.approx(
            row.base_sum - 1.5 * row.loss, rel=1e-12, abs=1e-12
        )
        assert row.loss == pytest.approx(
            solve(ProblemSpec(row.m_ads, 60.0, 0.9)).loss, rel=1e-12
        )
    recomputed = max(rows, key=lambda r: r.reward).m_ads
    assert best == recomputed


def test_interior_peak_with_sigmoid_base():
    model = RewardModel(gamma=1.0, base=SigmoidBase(1.0, 0.2))
    best, rows = optimize_count(model, 60.0, 0.9, max_ads=30)
    assert 1 < best < 30
    rewards = [r.reward for r in rows]
    peak = rewards.index(max(rewards))
    assert all(rewards[i] < rewards[i + 1] for i in range(peak))
    assert all(rewards[i] > rewards[i + 1] for i in range(peak, len(rewards) - 1))


def test_ties_break_toward_fewer_ads():
    # Flat zero base with zero gamma makes every count tie at reward 0.
    model = RewardModel(gamma=0.0, base=TabularBase([0.0] * 10))
    best, _ = optimize_count(model, 30.0, 0.5, max_ads=10)
    assert best == 1


def test_loss_column_nondecreasing_in_delta():
    model = RewardModel(gamma=1.0, base=SigmoidBase(1.0, 0.2))
    _, lo = optimize_count(model, 50.0, 0.7, max_ads=10)
    _, hi = optimize_count(model, 50.0, 0.9, max_ads=10)
    for row_lo, row_hi in zip(lo, hi):
        assert row_hi.loss >= row_lo.loss - 1e-12


def test_infeasible_counts_marked_and_skipped():
    # Ads of size 2 in a horizon of 10: five ads still fit but their first
    # gap drops below the ad size, and counts above five cannot fit at all.
    model = RewardModel(gamma=0.0, base=SigmoidBase(1.0, 0.2))
    best, rows = optimize_count(model, 10.0, 0.2, max_ads=8, ad_size=2.0)
    assert [r.error is None for r in rows] == [True] * 4 + [False] * 4
    assert all(math.isnan(r.reward) for r in rows if r.error is not None)
    assert best == 4  # gamma=0: largest schedulable count wins


def test_max_ads_validated():
    model = RewardModel(gamma=0.0, base=SigmoidBase(1.0, 0.2))
    with pytest.raises(ValueError):
        optimize_count(model, 10.0, 0.5, max_ads=0)
