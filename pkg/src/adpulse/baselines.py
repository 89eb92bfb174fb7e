"""Reference scheduling strategies for comparison sweeps.

Strategy names double as the CLI strings: uniform, corner, random, optimal.
The random strategy draws from numpy's PCG64 generator, a documented
algorithm with fixed constants, so a given seed reproduces the same
schedule across runs and toolchain upgrades.
"""

from __future__ import annotations

import numpy as np

from adpulse.model import ProblemSpec, Schedule, uniform_times
from adpulse.solver import solve

STRATEGIES = ("corner", "optimal", "random", "uniform")


def make_schedule(kind: str, spec: ProblemSpec, seed: int | None = None) -> Schedule:
    """Build the schedule for a named strategy.

    uniform: equal spacing over [0, horizon].
    corner:  first ceil(m/2) ads at 0, the rest at the horizon (needs m >= 2).
    random:  endpoints fixed, interior times i.i.d. uniform then sorted;
             requires an explicit seed (needs m >= 2).
    optimal: delegates to the solver.
    """
    kind = kind.strip().lower()
    if kind == "uniform":
        return Schedule(uniform_times(spec.m_ads, spec.horizon))
    if kind == "corner":
        if spec.m_ads < 2:
            raise ValueError("corner strategy needs at least 2 ads")
        times = np.full(spec.m_ads, spec.horizon)
        times[: (spec.m_ads + 1) // 2] = 0.0
        return Schedule(times)
    if kind == "random":
        if spec.m_ads < 2:
            raise ValueError("random strategy needs at least 2 ads")
        if seed is None:
            raise ValueError("random strategy requires an explicit seed")
        rng = np.random.Generator(np.random.PCG64(seed))
        times = np.empty(spec.m_ads)
        times[0] = 0.0
        times[-1] = spec.horizon
        times[1:-1] = np.sort(rng.uniform(0.0, spec.horizon, spec.m_ads - 2))
        return Schedule(times)
    if kind == "optimal":
        return solve(spec).schedule
    raise ValueError(f"unknown strategy {kind!r}; choose from {', '.join(STRATEGIES)}")
