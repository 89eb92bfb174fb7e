"""Independent numeric minimizers used to validate the closed-form solver.

Strict convexity of the pairwise decay loss over the ordered-times polytope
means any descent method that stalls only at stationary points finds the
global minimum; these routines exist purely as a cross-check and make no
attempt to be fast on large instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from adpulse import kernels
from adpulse.errors import DegenerateDeltaError
from adpulse.model import ProblemSpec, Schedule, eval_loss, uniform_times


@dataclass(frozen=True)
class OracleResult:
    schedule: Schedule
    loss: float
    iterations: int
    converged: bool


def minimize_loss(
    spec: ProblemSpec, tol: float = 1e-10, max_iters: int = 200_000
) -> OracleResult:
    """Projected first-order descent on the interior display times.

    Starts from the uniform schedule with the first and last times pinned
    at 0 and the horizon. The projection clamps to [0, horizon] and
    re-sorts; sorting is a valid feasibility repair because the loss is
    symmetric under reordering of the times (unit-tested). Stops when the
    unit-step projected gradient has max-norm <= tol; hitting max_iters
    only clears the converged flag, it never raises.

    A positive ad_size scales the loss by a constant, so the minimizing
    schedule is unchanged; the min-gap feasibility of sized ads is not
    enforced here.
    """
    if spec.delta in (0.0, 1.0):
        raise DegenerateDeltaError("oracle descent needs delta strictly in (0, 1)")
    if spec.m_ads < 2:
        raise ValueError("oracle descent needs at least 2 ads")
    if spec.m_ads == 2:
        sched = Schedule(np.array([0.0, spec.horizon]))
        return OracleResult(sched, eval_loss(spec, sched), 0, True)
    times0 = uniform_times(spec.m_ads, spec.horizon)
    times, _, iters, converged = kernels.pgd_minimize(
        times0, spec.horizon, spec.delta, tol, max_iters
    )
    sched = Schedule(times)
    return OracleResult(sched, eval_loss(spec, sched), iters, bool(converged))


def grid_search(spec: ProblemSpec, grid_points: int) -> OracleResult:
    """Exhaustive search over ordered interior times on a uniform grid.

    Combinatorial, hence the hard caps: m_ads <= 5 and grid_points <= 200.
    """
    if spec.m_ads > 5:
        raise ValueError("grid search is capped at 5 ads")
    if not 2 <= grid_points <= 200:
        raise ValueError("grid_points must lie in [2, 200]")
    m, horizon = spec.m_ads, spec.horizon
    if m == 1:
        return OracleResult(Schedule(np.zeros(1)), 0.0, 1, True)
    if m == 2 or spec.delta in (0.0, 1.0):
        # Two ads are forced; at degenerate delta every non-coincident
        # schedule ties, so report the uniform one.
        sched = Schedule(uniform_times(m, horizon))
        return OracleResult(sched, eval_loss(spec, sched), 1, True)

    grid = np.linspace(0.0, horizon, grid_points)
    combos = np.array(
        list(itertools.combinations_with_replacement(range(grid_points), m - 2))
    )
    candidates = np.empty((combos.shape[0], m))
    candidates[:, 0] = 0.0
    candidates[:, -1] = horizon
    candidates[:, 1:-1] = grid[combos]

    losses = np.zeros(combos.shape[0])
    for i in range(1, m):
        for j in range(i):
            gaps = candidates[:, i] - candidates[:, j]
            losses += spec.delta ** (gaps - spec.ad_size)
    best = int(np.argmin(losses))
    sched = Schedule(np.sort(candidates[best]))
    return OracleResult(sched, eval_loss(spec, sched), combos.shape[0], True)
