"""Problem data types and exact evaluation of loss, reward, and gradient.

An instance shows ``m_ads`` ads inside ``[0, horizon]``. Each pair of ads
(j before i) contributes ``delta ** (t_i - t_j)`` to the satiation loss;
the reward adds a concave per-ad base term and subtracts ``gamma`` times
the loss. All operations here are pure functions: safe to call from
multiple threads, no hidden state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from adpulse import kernels
from adpulse.errors import DegenerateDeltaError, InfeasibleError

# Tolerance on second differences when validating tabular concavity.
_CONCAVITY_TOL = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    """One scheduling instance.

    ``m_ads`` is the user-facing total number of ads; internally the last
    ad index is n = m_ads - 1. ``ad_size`` of 0 means instantaneous ads;
    a positive size requires m_ads * ad_size <= horizon so the ads fit.
    """

    m_ads: int
    horizon: float
    delta: float
    ad_size: float = 0.0

    def __post_init__(self) -> None:
        if int(self.m_ads) != self.m_ads or self.m_ads < 1:
            raise ValueError(f"m_ads must be a positive integer, got {self.m_ads}")
        if not self.horizon > 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")
        if self.ad_size < 0:
            raise ValueError(f"ad_size must be nonnegative, got {self.ad_size}")
        if self.ad_size > 0 and self.m_ads * self.ad_size > self.horizon:
            raise InfeasibleError(
                f"{self.m_ads} ads of size {self.ad_size} do not fit in "
                f"horizon {self.horizon}"
            )

    @property
    def n(self) -> int:
        """Index of the last ad (m_ads - 1)."""
        return self.m_ads - 1


@dataclass(frozen=True, eq=False)
class Schedule:
    """Sorted display times t_0 .. t_n."""

    times: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.times, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("schedule needs a one-dimensional, nonempty time vector")
        if np.any(np.diff(arr) < 0):
            raise ValueError("schedule times must be nondecreasing")
        object.__setattr__(self, "times", arr)

    def __len__(self) -> int:
        return self.times.size


class SolveMode(str, enum.Enum):
    """How a schedule was produced by the solver."""

    INTERIOR = "interior"
    ENDPOINT_ONLY = "endpoint_only"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SolveReport:
    """Solver output for one instance.

    ``boundary_count`` is the number of ads clustered at each of t=0 and
    t=horizon. ``decay_root`` is delta raised to the first positive display
    time (the root-finding variable); NaN when the mode has no such time.
    """

    boundary_count: int
    decay_root: float
    schedule: Schedule
    loss: float
    iterations: int
    mode: SolveMode


class SigmoidBase:
    """Base reward k / (1 + exp(-c * i)) for the i-th ad; concave on i >= 0."""

    def __init__(self, k: float, c: float):
        if not (k >= 0 and c > 0):
            raise ValueError("sigmoid base needs k >= 0 and c > 0")
        self.k = float(k)
        self.c = float(c)

    def values(self, m: int) -> np.ndarray:
        idx = np.arange(m, dtype=np.float64)
        return self.k / (1.0 + np.exp(-self.c * idx))


class SaturatingExpBase:
    """Base reward k * (1 - exp(-c * i)) for the i-th ad."""

    def __init__(self, k: float, c: float):
        if not (k >= 0 and c > 0):
            raise ValueError("saturating-exp base needs k >= 0 and c > 0")
        self.k = float(k)
        self.c = float(c)

    def values(self, m: int) -> np.ndarray:
        idx = np.arange(m, dtype=np.float64)
        return self.k * (1.0 - np.exp(-self.c * idx))


class TabularBase:
    """Explicit nondecreasing concave list of base rewards."""

    def __init__(self, values):
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("tabular base needs a nonempty value list")
        if np.any(vals < 0):
            raise ValueError("tabular base values must be nonnegative")
        if vals.size >= 2 and np.any(np.diff(vals) < -_CONCAVITY_TOL):
            raise ValueError("tabular base values must be nondecreasing")
        if vals.size >= 3 and np.any(np.diff(vals, 2) > _CONCAVITY_TOL):
            raise ValueError("tabular base values must be concave in the index")
        self._values = vals

    def values(self, m: int) -> np.ndarray:
        if m > self._values.size:
            raise ValueError(
                f"tabular base has {self._values.size} entries, {m} requested"
            )
        return self._values[:m].copy()


def base_reward(kind: str, k: float, c: float):
    """Build a base-reward family from its CLI name ('sigmoid' or 'satexp')."""
    kind = kind.strip().lower()
    if kind == "sigmoid":
        return SigmoidBase(k, c)
    if kind == "satexp":
        return SaturatingExpBase(k, c)
    raise ValueError(f"unknown base reward kind: {kind!r}")


@dataclass(frozen=True)
class RewardModel:
    """Concave per-ad base reward plus satiation weight gamma."""

    gamma: float
    base: object = field(default_factory=lambda: SigmoidBase(1.0, 0.2))

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")

    def base_sum(self, m: int) -> float:
        """Sum of the base reward over the first m ads."""
        return float(self.base.values(m).sum())


def uniform_times(m: int, horizon: float) -> np.ndarray:
    """Equally spaced times 0, horizon/n, ..., horizon (just [0] for m=1)."""
    if m == 1:
        return np.zeros(1)
    return np.linspace(0.0, horizon, m)


def _checked_times(spec: ProblemSpec, sched: Schedule) -> np.ndarray:
    times = sched.times
    if times.size != spec.m_ads:
        raise ValueError(
            f"schedule has {times.size} times but the instance shows {spec.m_ads} ads"
        )
    if times[0] < 0.0 or times[-1] > spec.horizon:
        raise ValueError("schedule times must lie inside [0, horizon]")
    return times


def eval_loss(spec: ProblemSpec, sched: Schedule) -> float:
    """Pairwise satiation loss of a schedule, exact O(m^2) sum.

    For sized ads each pair term becomes delta ** (gap - ad_size), i.e. the
    instantaneous loss scaled by delta ** (-ad_size).

    Degenerate deltas follow the continuous-limit conventions: at delta=1
    every pair contributes 1 (loss m*(m-1)/2 whatever the times); at delta=0
    a pair contributes 1 only when its shifted gap is exactly zero, and a
    negative shifted gap (sized ads overlapping) yields an infinite loss.
    """
    times = _checked_times(spec, sched)
    m = times.size
    if m == 1:
        return 0.0
    if spec.delta == 1.0:
        return m * (m - 1) / 2.0
    if spec.delta == 0.0:
        i_idx, j_idx = np.tril_indices(m, -1)
        shifted = times[i_idx] - times[j_idx] - spec.ad_size
        if np.any(shifted < 0):
            return math.inf
        return float(np.count_nonzero(shifted == 0.0))
    return kernels.pair_loss(times, spec.delta, spec.ad_size)


def eval_reward(spec: ProblemSpec, model: RewardModel, sched: Schedule) -> float:
    """Total reward: sum of base rewards minus gamma times the loss."""
    return model.base_sum(spec.m_ads) - model.gamma * eval_loss(spec, sched)


def eval_gradient(spec: ProblemSpec, sched: Schedule) -> np.ndarray:
    """Partial derivatives of eval_loss with respect to each display time.

    Defined for delta strictly inside (0, 1); the loss is constant at
    delta=1 and discontinuous at delta=0, so both are rejected.
    """
    if spec.delta in (0.0, 1.0):
        raise DegenerateDeltaError(
            f"gradient undefined at delta={spec.delta}; use the analytic conventions"
        )
    times = _checked_times(spec, sched)
    grad = kernels.pair_gradient(times, spec.delta)
    if spec.ad_size > 0:
        grad = grad * spec.delta ** (-spec.ad_size)
    return grad
