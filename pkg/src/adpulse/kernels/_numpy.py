"""Pure-numpy kernel implementations (fallback backend).

Semantics must mirror ``adpulse.kernels._numba`` exactly; only the
execution strategy differs (vectorized arrays here, jitted loops there).
All kernels assume delta strictly inside (0, 1); degenerate deltas are
handled by the callers. Pair terms use direct powers of delta, which
round better than exp(gap * log(delta)) and underflow harmlessly to 0.
"""

from __future__ import annotations

import math

import numpy as np

# Armijo sufficient-decrease factor and smallest step worth trying.
_ARMIJO = 1e-4
_MIN_STEP = 1e-20
_MAX_STEP = 1e12


def pair_loss(times: np.ndarray, delta: float, shift: float) -> float:
    """Sum of delta ** (t_i - t_j - shift) over ordered pairs j < i."""
    i_idx, j_idx = np.tril_indices(times.shape[0], -1)
    gaps = times[i_idx] - times[j_idx]
    return float((delta ** (gaps - shift)).sum())


def pair_gradient(times: np.ndarray, delta: float) -> np.ndarray:
    """Gradient of pair_loss(times, delta, 0) with respect to each time.

    Component i collects +w for pairs where i is the later ad and -w where
    it is the earlier one, with w = delta ** (t_i - t_j), all scaled by
    log(delta).
    """
    diffs = times[:, None] - times[None, :]
    weights = np.tril(delta ** diffs, -1)
    return math.log(delta) * (weights.sum(axis=1) - weights.sum(axis=0))


def _project(times: np.ndarray, horizon: float) -> np.ndarray:
    """Clamp to [0, horizon], restore ordering by sorting, pin endpoints."""
    out = np.sort(np.clip(times, 0.0, horizon))
    out[0] = 0.0
    out[-1] = horizon
    return out


def pgd_minimize(
    times0: np.ndarray,
    horizon: float,
    delta: float,
    tol: float,
    max_iters: int,
) -> tuple[np.ndarray, float, int, bool]:
    """Projected gradient descent on the pairwise decay loss.

    First and last times stay pinned at 0 and horizon. Backtracking halves
    the step until the Armijo condition holds; the accepted step seeds the
    next trial (doubled) so flat regions do not stall progress. Stops when
    the unit-step projected gradient has max-norm <= tol.
    """
    times = times0.copy()
    loss = pair_loss(times, delta, 0.0)
    trial_step = 1.0
    iters = 0
    converged = False
    while iters < max_iters:
        grad = pair_gradient(times, delta)
        grad[0] = 0.0
        grad[-1] = 0.0
        if np.abs(times - _project(times - grad, horizon)).max() <= tol:
            converged = True
            break
        step = trial_step
        accepted = False
        while step > _MIN_STEP:
            trial = _project(times - step * grad, horizon)
            if not np.any(trial != times):
                break  # smaller steps cannot move the iterate either
            trial_loss = pair_loss(trial, delta, 0.0)
            if trial_loss <= loss + _ARMIJO * float(grad @ (trial - times)):
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # no certifiable descent step at float resolution
        times = trial
        loss = trial_loss
        trial_step = min(step * 2.0, _MAX_STEP)
        iters += 1
    return times, loss, iters, converged
