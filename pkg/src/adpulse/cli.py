"""Command-line surface: single solves, sweeps, count search, verification.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 infeasible
instance. All numeric CSV fields use the shortest round-trip decimal
representation so identical flags (and seed) reproduce byte-identical
output. Every subcommand also accepts --config FILE, a flat key=value file
mirroring the flag names; explicit flags override config values.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from adpulse.baselines import STRATEGIES, make_schedule
from adpulse.counts import optimize_count
from adpulse.errors import InfeasibleError
from adpulse.model import (
    ProblemSpec,
    RewardModel,
    SolveMode,
    base_reward,
    eval_loss,
    eval_reward,
    uniform_times,
)
from adpulse.oracle import grid_search, minimize_loss
from adpulse.solver import solve

SWEEP_DELTA_HEADER = "delta,m_ads,horizon,strategy,loss,reward"
SWEEP_N_HEADER = "delta,m_ads,horizon,strategy,loss,log10_loss"
COUNT_HEADER = "m_ads,loss,base_sum,reward"

EXIT_VERIFY_FAILED = 1
EXIT_INFEASIBLE = 3


def _fmt(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


def _load_config(ctx: click.Context, param: click.Parameter, value: str | None):
    if not value:
        return
    defaults: dict[str, str] = {}
    with open(value, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise click.UsageError(
                    f"{value}:{lineno}: expected key=value, got {raw.strip()!r}"
                )
            defaults[key.strip().replace("-", "_")] = val.strip()
    ctx.default_map = {**defaults, **(ctx.default_map or {})}


def _config_option(f):
    return click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False),
        callback=_load_config,
        is_eager=True,
        expose_value=False,
        help="Flat key=value file mirroring the flags; flags override it.",
    )(f)


def _model_options(required: bool):
    def deco(f):
        f = click.option(
            "--gamma",
            type=float,
            default=1.0 if required else None,
            required=False,
            help="Satiation weight in the reward.",
        )(f)
        f = click.option("--c", type=float, default=None, help="Base-reward rate.")(f)
        f = click.option("--k", type=float, default=None, help="Base-reward scale.")(f)
        f = click.option(
            "--b-kind",
            type=click.Choice(["sigmoid", "satexp"]),
            default=None,
            required=required,
            help="Base-reward family.",
        )(f)
        return f

    return deco


def _build_model(b_kind, k, c, gamma) -> RewardModel | None:
    if b_kind is None:
        if any(v is not None for v in (k, c, gamma)):
            raise click.UsageError("--k/--c/--gamma need --b-kind to take effect")
        return None
    if k is None or c is None:
        raise click.UsageError(f"--b-kind {b_kind} needs both --k and --c")
    try:
        return RewardModel(
            gamma=1.0 if gamma is None else gamma, base=base_reward(b_kind, k, c)
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _make_spec(m_ads: int, horizon: float, delta: float, ad_size: float) -> ProblemSpec:
    try:
        return ProblemSpec(m_ads, horizon, delta, ad_size)
    except InfeasibleError as exc:
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _solve_or_exit(spec: ProblemSpec):
    try:
        return solve(spec)
    except InfeasibleError as exc:
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(EXIT_INFEASIBLE)


@click.group()
def main():
    """Near-optimal ad scheduling under exponential satiation decay.

    --ads always means the total number of ads displayed (so a schedule
    for --ads M has M entries, the first at t=0 and the last at the
    horizon whenever M >= 2).
    """


@main.command(name="solve")
@_config_option
@click.option("--ads", type=int, required=True, help="Total ads to display.")
@click.option("--horizon", type=float, required=True, help="Length of the window.")
@click.option("--delta", type=float, required=True, help="Decay parameter in [0, 1].")
@click.option("--size", type=float, default=0.0, help="Duration of one ad.")
@_model_options(required=False)
def cmd_solve(ads, horizon, delta, size, b_kind, k, c, gamma):
    """Print the near-optimal schedule for one instance as JSON."""
    model = _build_model(b_kind, k, c, gamma)
    spec = _make_spec(ads, horizon, delta, size)
    report = _solve_or_exit(spec)
    doc = {
        "schedule": [float(t) for t in report.schedule.times],
        "a": report.boundary_count,
        "loss": report.loss,
        "mode": report.mode.value,
        "iterations": report.iterations,
    }
    if model is not None:
        doc["reward"] = eval_reward(spec, model, report.schedule)
    click.echo(json.dumps(doc))


@main.command(name="sweep-delta")
@_config_option
@click.option("--ads", type=int, required=True)
@click.option("--horizon", type=float, required=True)
@click.option("--delta-min", type=float, required=True)
@click.option("--delta-max", type=float, required=True)
@click.option("--steps", type=int, required=True, help="Grid size, at least 2.")
@click.option(
    "--strategies",
    default="corner,optimal,uniform",
    show_default=True,
    help="Comma-separated subset of: " + ", ".join(STRATEGIES),
)
@click.option(
    "--seed",
    type=int,
    default=None,
    envvar="ADPULSE_SEED",
    help="Seed for the random strategy (env ADPULSE_SEED is the fallback).",
)
@_model_options(required=False)
def cmd_sweep_delta(ads, horizon, delta_min, delta_max, steps, strategies, seed,
                    b_kind, k, c, gamma):
    """CSV of loss (and reward, when a model is given) per (delta, strategy)."""
    model = _build_model(b_kind, k, c, gamma)
    if steps < 2:
        raise click.UsageError("--steps must be at least 2")
    if not delta_min < delta_max:
        raise click.UsageError("--delta-min must be strictly below --delta-max")
    names = sorted({s.strip().lower() for s in strategies.split(",") if s.strip()})
    if not names:
        raise click.UsageError("--strategies must name at least one strategy")
    for name in names:
        if name not in STRATEGIES:
            raise click.UsageError(f"unknown strategy {name!r}")
    if "random" in names and seed is None:
        raise click.UsageError("the random strategy needs --seed or ADPULSE_SEED")

    lines = [SWEEP_DELTA_HEADER]
    for delta in np.linspace(delta_min, delta_max, steps):
        spec = _make_spec(ads, horizon, float(delta), 0.0)
        for name in names:
            sched = make_schedule(name, spec, seed=seed)
            loss = eval_loss(spec, sched)
            reward = "" if model is None else _fmt(eval_reward(spec, model, sched))
            lines.append(
                f"{_fmt(delta)},{ads},{_fmt(horizon)},{name},{_fmt(loss)},{reward}"
            )
    click.echo("\n".join(lines))


@main.command(name="sweep-n")
@_config_option
@click.option("--horizon", type=float, required=True)
@click.option("--delta-list", required=True, help="Comma-separated decay values.")
@click.option("--ads-min", type=int, required=True)
@click.option("--ads-max", type=int, required=True)
def cmd_sweep_n(horizon, delta_list, ads_min, ads_max):
    """CSV of the solver's loss as the ad count grows, per delta."""
    try:
        deltas = sorted(float(tok) for tok in delta_list.split(",") if tok.strip())
    except ValueError as exc:
        raise click.UsageError(f"bad --delta-list: {exc}") from exc
    if not deltas:
        raise click.UsageError("--delta-list must contain at least one value")
    if ads_min < 1 or ads_min > ads_max:
        raise click.UsageError("need 1 <= --ads-min <= --ads-max")

    lines = [SWEEP_N_HEADER]
    for delta in deltas:
        for m in range(ads_min, ads_max + 1):
            spec = _make_spec(m, horizon, delta, 0.0)
            loss = _solve_or_exit(spec).loss
            log_loss = math.log10(loss) if loss > 0 else -math.inf
            lines.append(
                f"{_fmt(delta)},{m},{_fmt(horizon)},optimal,{_fmt(loss)},{_fmt(log_loss)}"
            )
    click.echo("\n".join(lines))


@main.command(name="optimize-count")
@_config_option
@click.option("--horizon", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--size", type=float, default=0.0)
@click.option("--max-ads", type=int, default=30, show_default=True)
@_model_options(required=True)
def cmd_optimize_count(horizon, delta, size, max_ads, b_kind, k, c, gamma):
    """CSV of reward per ad count plus a best_m summary line."""
    if k is None or c is None:
        raise click.UsageError("--b-kind needs both --k and --c")
    model = _build_model(b_kind, k, c, gamma)
    if max_ads < 1:
        raise click.UsageError("--max-ads must be at least 1")
    _make_spec(1, horizon, delta, size)
    try:
        best_m, rows = optimize_count(model, horizon, delta, max_ads, size)
    except InfeasibleError as exc:
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    lines = [COUNT_HEADER]
    for row in rows:
        lines.append(
            f"{row.m_ads},{_fmt(row.loss)},{_fmt(row.base_sum)},{_fmt(row.reward)}"
        )
    lines.append(f"best_m={best_m}")
    click.echo("\n".join(lines))


@main.command(name="verify")
@_config_option
@click.option("--ads", type=int, required=True)
@click.option("--horizon", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option(
    "--grid",
    type=int,
    default=None,
    help="Use exhaustive grid search with this many points instead of descent "
    "(only for --ads <= 5); tolerances widen by the grid resolution.",
)
def cmd_verify(ads, horizon, delta, grid):
    """Cross-check the solver against the independent numeric oracle."""
    spec = _make_spec(ads, horizon, delta, 0.0)
    report = _solve_or_exit(spec)

    loss_tol = 1e-6
    time_tol = max(0.5 ** spec.n, 1e-6)
    if spec.delta in (0.0, 1.0):
        # Every schedule ties at degenerate delta; check the analytic loss.
        oracle_times = uniform_times(ads, horizon)
        expected = ads * (ads - 1) / 2.0 if delta == 1.0 else 0.0
        oracle_loss = expected
        converged = True
    else:
        try:
            if grid is not None:
                result = grid_search(spec, grid)
                step = horizon / (grid - 1)
                loss_tol += step * ads
                time_tol += step
            else:
                result = minimize_loss(spec)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        oracle_times = result.schedule.times
        oracle_loss = result.loss
        converged = result.converged

    loss_dev = abs(report.loss - oracle_loss)
    time_dev = float(np.abs(report.schedule.times - oracle_times).max())
    passed = loss_dev <= loss_tol and time_dev <= time_tol
    doc = {
        "m_ads": ads,
        "horizon": horizon,
        "delta": delta,
        "mode": report.mode.value,
        "a": report.boundary_count,
        "solver_loss": report.loss,
        "oracle_loss": oracle_loss,
        "loss_deviation": loss_dev,
        "max_time_deviation": time_dev,
        "loss_tolerance": loss_tol,
        "time_tolerance": time_tol,
        "oracle_converged": converged,
        "passed": passed,
    }
    click.echo(json.dumps(doc))
    if not passed:
        sys.exit(EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    main()
