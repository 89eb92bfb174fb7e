"""Near-optimal schedule construction for a fixed ad count.

The minimizer of the pairwise decay loss clusters some count ``a`` of ads
at each end of the horizon. Working in the decay-transformed variable
x = delta**t, the construction runs in three steps:

1. Linear scan for the smallest ``a`` whose transformed stationarity
   equation has a root inside the bracket [delta**horizon, 1]; both
   solvability conditions are evaluated in log space so delta**horizon may
   underflow freely.
2. Bisection for that root (the decay value at the first positive display
   time).
3. Closed-form assembly: ``a`` ads at 0 and at the horizon, the first
   positive time mirrored at the end, and the remaining ads equally spaced
   between the two (the transformed times form a constant-ratio chain,
   which is exactly equal spacing in ordinary time).

If no ``a`` is accepted, every ad belongs at an endpoint: half at 0, half
at the horizon, and for an odd count the leftover ad at horizon/2.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from adpulse.errors import (
    BracketError,
    ClosedFormInfeasibleError,
    DegenerateDeltaError,
)
from adpulse.model import (
    ProblemSpec,
    Schedule,
    SolveMode,
    SolveReport,
    eval_loss,
    uniform_times,
)

# Bisection round cap and the width below which further halving is moot.
_MAX_ROUNDS = 200
_WIDTH_FLOOR = 1e-15


@dataclass(frozen=True)
class BoundaryScan:
    """Result of the boundary-count scan.

    ``a`` is the smallest accepted count, or None when every candidate
    fails and the all-endpoints fallback applies. The log fields hold the
    transformed-equation values at the bracket ends for the accepted
    count (NaN for the fallback): acceptance means
    log_h_at_one > log_target > log_h_at_floor.
    """

    a: int | None
    log_h_at_one: float
    log_h_at_floor: float
    log_target: float


@dataclass(frozen=True)
class RootTrace:
    """Final bisection bracket for the decay root."""

    low: float
    high: float
    root: float
    rounds: int


def _log_h_at_one(n: int, a: int) -> float:
    return (n - 2 * a) * (math.log(a) - math.log(a + 1))


def _log_h(n: int, a: int, log_x: float) -> float:
    """log of the transformed stationarity function at decay value exp(log_x)."""
    log_ax = math.log(a) + log_x
    return (
        -2.0 * math.log(a)
        + (n - 2 * a + 2) * log_ax
        - (n - 2 * a) * float(np.logaddexp(0.0, log_ax))
    )


def find_boundary_count(spec: ProblemSpec) -> BoundaryScan:
    """Smallest endpoint-cluster size whose root bracket is valid.

    Scans a = 1, 2, ..., ceil(n/2) and accepts the first count where both
    strict log-space inequalities hold; equality falls through to the next
    candidate. Returns a=None when the scan is exhausted (all ads at the
    endpoints).
    """
    if spec.delta in (0.0, 1.0):
        raise DegenerateDeltaError("boundary scan needs delta strictly in (0, 1)")
    if spec.m_ads < 3:
        raise ValueError("boundary scan applies to 3 or more ads; fewer are forced")
    n = spec.n
    log_target = spec.horizon * math.log(spec.delta)
    for a in range(1, (n + 1) // 2 + 1):
        lhs_one = _log_h_at_one(n, a)
        lhs_floor = _log_h(n, a, log_target)
        if lhs_one > log_target and lhs_floor < log_target:
            return BoundaryScan(a, lhs_one, lhs_floor, log_target)
    return BoundaryScan(None, math.nan, math.nan, log_target)


def solve_decay_root(spec: ProblemSpec, a: int) -> RootTrace:
    """Bisect for the decay value of the first positive display time.

    The bracket is [delta**horizon, 1] and the transformed function is
    strictly increasing, so plain bisection converges. Runs at least
    ceil(3n + horizon*log2(1/delta)) rounds (capped at 200), then keeps
    halving until the bracket is under 1e-15 wide or no representable
    midpoint remains; tiny roots need the extra rounds to keep the
    recovered time accurate.
    """
    n, horizon, delta = spec.n, spec.horizon, spec.delta
    if delta in (0.0, 1.0):
        raise DegenerateDeltaError("root solve needs delta strictly in (0, 1)")
    log_target = horizon * math.log(delta)
    if not (_log_h_at_one(n, a) > log_target and _log_h(n, a, log_target) < log_target):
        raise BracketError(
            f"a={a} does not bracket the decay root for n={n}; "
            "run find_boundary_count first"
        )
    low = math.exp(log_target)
    high = 1.0
    target_rounds = min(math.ceil(3 * n + horizon * math.log2(1.0 / delta)), _MAX_ROUNDS)
    rounds = 0
    while rounds < _MAX_ROUNDS:
        mid = 0.5 * (low + high)
        if not low < mid < high:
            break
        rounds += 1
        residual = _log_h(n, a, math.log(mid)) - log_target
        if residual == 0.0:
            low = high = mid
            break
        if residual < 0.0:
            low = mid
        else:
            high = mid
        if rounds >= target_rounds and high - low < _WIDTH_FLOOR:
            break
    return RootTrace(low, high, 0.5 * (low + high), rounds)


def build_schedule(spec: ProblemSpec, a: int, decay_root: float) -> Schedule:
    """Assemble the full schedule from the cluster size and decay root."""
    n, horizon, delta = spec.n, spec.horizon, spec.delta
    if not 0.0 < decay_root <= 1.0:
        raise BracketError(f"decay root {decay_root} outside (0, 1]")
    if decay_root < math.exp(horizon * math.log(delta)):
        raise BracketError(f"decay root {decay_root} below delta**horizon")
    times = np.empty(spec.m_ads)
    times[:a] = 0.0
    times[n - a + 1 :] = horizon
    if 2 * a == n:
        # The first positive time coincides with its mirror image.
        times[a] = horizon / 2.0
    elif 2 * a < n:
        t_first = math.log(decay_root) / math.log(delta)
        t_last = horizon - t_first
        if t_first > t_last:
            raise BracketError(
                f"decay root {decay_root} puts the first positive time past its mirror"
            )
        times[a : n - a + 1] = np.linspace(t_first, t_last, n - 2 * a + 1)
    return Schedule(times)


def _endpoint_only_times(m: int, horizon: float) -> np.ndarray:
    half = m // 2
    times = np.empty(m)
    times[:half] = 0.0
    times[m - half :] = horizon
    if m % 2 == 1:
        times[half] = horizon / 2.0
    return times


def _solve_instant(spec: ProblemSpec) -> SolveReport:
    m, horizon = spec.m_ads, spec.horizon
    if spec.delta in (0.0, 1.0):
        # All schedules tie at delta=1 and (up to coincidences) at delta=0;
        # return the canonical uniform one.
        sched = Schedule(uniform_times(m, horizon))
        return SolveReport(
            boundary_count=1,
            decay_root=math.nan,
            schedule=sched,
            loss=eval_loss(spec, sched),
            iterations=0,
            mode=SolveMode.DEGENERATE,
        )
    if m == 1:
        return SolveReport(1, math.nan, Schedule(np.zeros(1)), 0.0, 0, SolveMode.ENDPOINT_ONLY)
    if m == 2:
        sched = Schedule(np.array([0.0, horizon]))
        return SolveReport(
            1, math.nan, sched, eval_loss(spec, sched), 0, SolveMode.ENDPOINT_ONLY
        )
    scan = find_boundary_count(spec)
    if scan.a is None:
        sched = Schedule(_endpoint_only_times(m, horizon))
        return SolveReport(
            boundary_count=(spec.n + 1) // 2,
            decay_root=math.nan,
            schedule=sched,
            loss=eval_loss(spec, sched),
            iterations=0,
            mode=SolveMode.ENDPOINT_ONLY,
        )
    trace = solve_decay_root(spec, scan.a)
    sched = build_schedule(spec, scan.a, trace.root)
    return SolveReport(
        boundary_count=scan.a,
        decay_root=trace.root,
        schedule=sched,
        loss=eval_loss(spec, sched),
        iterations=trace.rounds,
        mode=SolveMode.INTERIOR,
    )


def solve(spec: ProblemSpec) -> SolveReport:
    """Near-optimal schedule for the instance; dispatches sized ads."""
    if spec.ad_size > 0:
        return solve_sized(spec)
    return _solve_instant(spec)


def solve_sized(spec: ProblemSpec) -> SolveReport:
    """Schedule for ads that each occupy ``ad_size`` time units.

    Solves the instantaneous problem on the reduced horizon
    horizon - ad_size (so the last ad still finishes in time) and accepts
    the result only when the first gap is at least one ad length; the
    constant-ratio structure then guarantees every other gap is too.
    Outside that regime the closed form carries no optimality guarantee,
    so the instance is rejected instead of approximated.
    """
    size = spec.ad_size
    if size == 0:
        return _solve_instant(spec)
    if spec.m_ads == 1:
        return SolveReport(
            1, math.nan, Schedule(np.zeros(1)), 0.0, 0, SolveMode.ENDPOINT_ONLY
        )
    inner = ProblemSpec(spec.m_ads, spec.horizon - size, spec.delta, 0.0)
    report = _solve_instant(inner)
    times = report.schedule.times
    if times[1] - times[0] < size:
        raise ClosedFormInfeasibleError(
            f"first gap {times[1] - times[0]} is below the ad size {size}; "
            "no closed-form schedule in this regime"
        )
    return dataclasses.replace(report, loss=eval_loss(spec, report.schedule))
