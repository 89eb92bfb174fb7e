"""Near-optimal ad scheduling under exponential satiation decay."""

from adpulse.baselines import STRATEGIES, make_schedule
from adpulse.counts import CountSweepRow, optimize_count
from adpulse.errors import (
    AdpulseError,
    BracketError,
    ClosedFormInfeasibleError,
    DegenerateDeltaError,
    InfeasibleError,
)
from adpulse.model import (
    ProblemSpec,
    RewardModel,
    SaturatingExpBase,
    Schedule,
    SigmoidBase,
    SolveMode,
    SolveReport,
    TabularBase,
    base_reward,
    eval_gradient,
    eval_loss,
    eval_reward,
    uniform_times,
)
from adpulse.oracle import OracleResult, grid_search, minimize_loss
from adpulse.solver import (
    BoundaryScan,
    RootTrace,
    build_schedule,
    find_boundary_count,
    solve,
    solve_decay_root,
    solve_sized,
)

__version__ = "0.1.0"

__all__ = [
    "AdpulseError",
    "BoundaryScan",
    "BracketError",
    "ClosedFormInfeasibleError",
    "CountSweepRow",
    "DegenerateDeltaError",
    "InfeasibleError",
    "OracleResult",
    "ProblemSpec",
    "RewardModel",
    "RootTrace",
    "STRATEGIES",
    "SaturatingExpBase",
    "Schedule",
    "SigmoidBase",
    "SolveMode",
    "SolveReport",
    "TabularBase",
    "base_reward",
    "build_schedule",
    "eval_gradient",
    "eval_loss",
    "eval_reward",
    "find_boundary_count",
    "grid_search",
    "make_schedule",
    "minimize_loss",
    "optimize_count",
    "solve",
    "solve_decay_root",
    "solve_sized",
    "uniform_times",
    "__version__",
]
