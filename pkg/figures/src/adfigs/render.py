"""Render adpulse CSV outputs into experiment figures.

Usage:
    adpulse-figs --input sweep.csv --kind loss_vs_delta --output fig.png

The script holds no numerical logic: every plotted quantity comes straight
from the input CSV, produced by the adpulse CLI. Output is deterministic
(fixed style, no timestamps), so re-running overwrites the image with
identical bytes. Exit codes: 0 success, 1 schema mismatch or empty input,
2 bad flags.
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "adpulse-figs"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

EXPECTED_HEADERS = {
    "schedule_vs_delta": ["delta", "index", "time"],
    "loss_vs_delta": ["delta", "m_ads", "horizon", "strategy", "loss", "reward"],
    "loss_vs_n": ["delta", "m_ads", "horizon", "strategy", "loss", "log10_loss"],
    "reward_vs_n": ["m_ads", "loss", "base_sum", "reward"],
}


class SchemaError(Exception):
    pass


def read_rows(path: str, kind: str) -> list[dict[str, str]]:
    expected = EXPECTED_HEADERS[kind]
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != expected:
            raise SchemaError(
                f"{path}: header {','.join(header)!r} does not match the "
                f"{kind} contract {','.join(expected)!r}"
            )
        rows = []
        for cells in reader:
            if not cells or cells[0].startswith("best_m="):
                continue  # summary trailer emitted by optimize-count
            if len(cells) != len(expected):
                raise SchemaError(f"{path}: row {cells!r} has wrong arity")
            rows.append(dict(zip(expected, cells)))
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def draw_schedule_vs_delta(rows, ax):
    ax.scatter(
        [float(r["delta"]) for r in rows],
        [float(r["time"]) for r in rows],
        s=12,
        color="tab:blue",
    )
    ax.set_xlabel("delta")
    ax.set_ylabel("time")


def draw_loss_vs_delta(rows, ax):
    by_strategy = defaultdict(list)
    for r in rows:
        by_strategy[r["strategy"]].append((float(r["delta"]), float(r["loss"])))
    for strategy in sorted(by_strategy):
        pts = sorted(by_strategy[strategy])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=strategy)
    ax.set_xlabel("delta")
    ax.set_ylabel("loss")
    ax.legend()


def draw_loss_vs_n(rows, axes):
    ax_loss, ax_log = axes
    by_delta = defaultdict(list)
    for r in rows:
        by_delta[r["delta"]].append(
            (int(r["m_ads"]), float(r["loss"]), float(r["log10_loss"]))
        )
    for delta in sorted(by_delta, key=float):
        pts = sorted(by_delta[delta])
        label = f"delta={delta}"
        ax_loss.plot([p[0] for p in pts], [p[1] for p in pts], label=label)
        ax_log.plot([p[0] for p in pts], [p[2] for p in pts], label=label)
    for ax, ylabel in ((ax_loss, "loss"), (ax_log, "log10_loss")):
        ax.set_xlabel("m_ads")
        ax.set_ylabel(ylabel)
        ax.legend()


def draw_reward_vs_n(rows, ax):
    pts = sorted((int(r["m_ads"]), float(r["reward"])) for r in rows)
    ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", markersize=3)
    ax.set_xlabel("m_ads")
    ax.set_ylabel("reward")


def render(input_csv: str, kind: str, output_path: str) -> None:
    rows = read_rows(input_csv, kind)
    if kind == "loss_vs_n":
        fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6), constrained_layout=True)
        draw_loss_vs_n(rows, axes)
    else:
        fig, ax = plt.subplots(figsize=(5.0, 3.6), constrained_layout=True)
        {
            "schedule_vs_delta": draw_schedule_vs_delta,
            "loss_vs_delta": draw_loss_vs_delta,
            "reward_vs_n": draw_reward_vs_n,
        }[kind](rows, ax)
    metadata = {"Date": None} if output_path.endswith(".svg") else None
    fig.savefig(output_path, dpi=150, metadata=metadata)
    plt.close(fig)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="CSV produced by the adpulse CLI")
    parser.add_argument("--kind", required=True, choices=sorted(EXPECTED_HEADERS))
    parser.add_argument("--output", required=True, help="image file to (over)write")
    args = parser.parse_args(argv)
    try:
        render(args.input, args.kind, args.output)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
