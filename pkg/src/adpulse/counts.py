"""Reward-maximizing ad count via linear search over counts."""

from __future__ import annotations

import math
from dataclasses import dataclass

from adpulse.errors import AdpulseError
from adpulse.model import ProblemSpec, RewardModel
from adpulse.solver import solve


@dataclass(frozen=True)
class CountSweepRow:
    """One evaluated count: reward = base_sum - gamma * loss.

    A non-None ``error`` marks a count the solver rejected (for example,
    sized ads that no longer fit); such rows carry NaN metrics and are
    excluded from the argmax.
    """

    m_ads: int
    loss: float
    base_sum: float
    reward: float
    error: str | None = None


def optimize_count(
    model: RewardModel,
    horizon: float,
    delta: float,
    max_ads: int,
    ad_size: float = 0.0,
) -> tuple[int, list[CountSweepRow]]:
    """Evaluate every count from 1 to max_ads and return the best one.

    Ties break toward the smaller count (fewer ads at equal reward).
    """
    if max_ads < 1:
        raise ValueError(f"max_ads must be at least 1, got {max_ads}")
    rows: list[CountSweepRow] = []
    best_m: int | None = None
    best_reward = -math.inf
    for m in range(1, max_ads + 1):
        try:
            report = solve(ProblemSpec(m, horizon, delta, ad_size))
            base_sum = model.base_sum(m)
            reward = base_sum - model.gamma * report.loss
        except (AdpulseError, ValueError) as exc:
            rows.append(CountSweepRow(m, math.nan, math.nan, math.nan, str(exc)))
            continue
        rows.append(CountSweepRow(m, report.loss, base_sum, reward))
        if reward > best_reward:
            best_reward = reward
            best_m = m
    if best_m is None:
        raise AdpulseError("no feasible ad count in range")
    return best_m, rows
