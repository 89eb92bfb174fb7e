"""Jitted kernel implementations (default backend).

Loop-style twins of ``adpulse.kernels._numpy``; see that module for the
contract each kernel satisfies.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_ARMIJO = 1e-4
_MIN_STEP = 1e-20
_MAX_STEP = 1e12


@njit(cache=True)
def pair_loss(times, delta, shift):
    m = times.shape[0]
    total = 0.0
    for i in range(m):
        for j in range(i):
            total += delta ** (times[i] - times[j] - shift)
    return total


@njit(cache=True)
def pair_gradient(times, delta):
    m = times.shape[0]
    out = np.zeros(m)
    for i in range(m):
        for j in range(i):
            w = delta ** (times[i] - times[j])
            out[i] += w
            out[j] -= w
    ln_delta = np.log(delta)
    for i in range(m):
        out[i] *= ln_delta
    return out


@njit(cache=True)
def _project(times, horizon):
    m = times.shape[0]
    out = np.empty(m)
    for i in range(m):
        v = times[i]
        if v < 0.0:
            v = 0.0
        elif v > horizon:
            v = horizon
        out[i] = v
    out = np.sort(out)
    out[0] = 0.0
    out[m - 1] = horizon
    return out


@njit(cache=True)
def pgd_minimize(times0, horizon, delta, tol, max_iters):
    m = times0.shape[0]
    times = times0.copy()
    loss = pair_loss(times, delta, 0.0)
    trial_step = 1.0
    iters = 0
    converged = False
    while iters < max_iters:
        grad = pair_gradient(times, delta)
        grad[0] = 0.0
        grad[m - 1] = 0.0
        unit = _project(times - grad, horizon)
        pg = 0.0
        for i in range(m):
            d = abs(times[i] - unit[i])
            if d > pg:
                pg = d
        if pg <= tol:
            converged = True
            break
        step = trial_step
        accepted = False
        trial = times
        trial_loss = loss
        while step > _MIN_STEP:
            trial = _project(times - step * grad, horizon)
            moved = False
            dot = 0.0
            for i in range(m):
                if trial[i] != times[i]:
                    moved = True
                dot += grad[i] * (trial[i] - times[i])
            if not moved:
                break  # smaller steps cannot move the iterate either
            trial_loss = pair_loss(trial, delta, 0.0)
            if trial_loss <= loss + _ARMIJO * dot:
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
