"""Collect per-delta schedules from the adpulse CLI into a CSV.

The schedule-vs-delta figure needs one row per (delta, ad index, time);
the adpulse CLI reports schedules as JSON, one solve at a time. This
helper runs ``adpulse solve`` across a delta grid and transcribes the
schedules, computing nothing itself.

Usage:
    adpulse-figs-collect --ads 8 --horizon 20 \
        --deltas 0.05:0.95:19 --output schedules.csv
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys

HEADER = "delta,index,time"


def parse_grid(spec: str) -> list[float]:
    """Either a comma list ('0.1,0.5') or start:stop:count ('0.05:0.95:19')."""
    if ":" in spec:
        start, stop, count = spec.split(":")
        start, stop, count = float(start), float(stop), int(count)
        if count < 2 or not start < stop:
            raise ValueError(f"bad grid {spec!r}")
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    values = [float(tok) for tok in spec.split(",") if tok.strip()]
    if not values:
        raise ValueError(f"bad grid {spec!r}")
    return values


def collect(ads: int, horizon: float, deltas: list[float], solver: str) -> list[str]:
    lines = [HEADER]
    for delta in deltas:
        cmd = solver.split() + [
            "solve", "--ads", str(ads), "--horizon", repr(horizon),
            "--delta", repr(delta),
        ]
        out = subprocess.run(cmd, capture_output=True, text=True)
        if out.returncode != 0:
            raise RuntimeError(f"{' '.join(cmd)} failed: {out.stderr.strip()}")
        schedule = json.loads(out.stdout)["schedule"]
        for index, time in enumerate(schedule):
            lines.append(f"{delta!r},{index},{time!r}")
    return lines


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ads", type=int, required=True)
    parser.add_argument("--horizon", type=float, required=True)
    parser.add_argument("--deltas", required=True, help="comma list or start:stop:count")
    parser.add_argument("--output", required=True)
    parser.add_argument(
        "--solver",
        default="adpulse",
        help="command used to invoke the scheduling CLI",
    )
    args = parser.parse_args(argv)
    try:
        deltas = parse_grid(args.deltas)
        lines = collect(args.ads, args.horizon, deltas, args.solver)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
