#!/usr/bin/env python3
"""Recompute summary.csv from metrics.csv and compare.

Usage: recompute_summary.py <experiment output dir>

Reads metrics.csv once, rebuilds every (env, agent, lambda) cell with the
same tail window (final quarter of units, at least one) and sample standard
deviation across seeds, and checks it against summary.csv to a relative
tolerance of 1e-9. Exit status 0 on agreement, 1 otherwise.
"""

import csv
import math
import sys
from collections import OrderedDict
from pathlib import Path

TOL = 1e-9


def mean(xs):
    return sum(xs) / len(xs)


def sample_std(xs):
    if len(xs) < 2:
        return 0.0
    m = mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / (len(xs) - 1))


def recompute(metrics_path):
    runs = OrderedDict()
    with open(metrics_path, newline="") as f:
        for row in csv.DictReader(f):
            key = (row["env"], row["agent"], float(row["lambda"]))
            runs.setdefault(key, OrderedDict()).setdefault(row["run_id"], []).append(float(row["avg_reward"]))
    cells = []
    for (env, agent, lam), by_run in runs.items():
        fulls, tails, units = [], [], 0
        for rewards in by_run.values():
            units = len(rewards)
            tail = max(1, math.ceil(units / 4))
            fulls.append(mean(rewards))
            tails.append(mean(rewards[-tail:]))
        cells.append({
            "env": env, "agent": agent, "lambda": lam, "n_seeds": len(by_run), "units": units,
            "tail_units": max(1, math.ceil(units / 4)),
            "full_mean": mean(fulls), "full_std": sample_std(fulls),
            "tail_mean": mean(tails), "tail_std": sample_std(tails),
        })
    return cells


def close(a, b):
    return abs(a - b) <= TOL * max(1.0, abs(a), abs(b))


def main():
    if len(sys.argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    out = Path(sys.argv[1])
    want = recompute(out / "metrics.csv")
    with open(out / "summary.csv", newline="") as f:
        got = list(csv.DictReader(f))
    if len(got) != len(want):
        print(f"cell count differs: summary has {len(got)}, recomputed {len(want)}")
        return 1
    bad = 0
    for g, w in zip(got, want):
        for k in ("env", "agent"):
            if g[k] != w[k]:
                print(f"{k} differs: {g[k]} vs {w[k]}")
                bad += 1
        for k in ("n_seeds", "units", "tail_units"):
            if int(g[k]) != w[k]:
                print(f"{w['agent']} {k}: {g[k]} vs {w[k]}")
                bad += 1
        for k in ("lambda", "full_mean", "full_std", "tail_mean", "tail_std"):
            if not close(float(g[k]), w[k]):
                print(f"{w['agent']} lambda={w['lambda']} {k}: {g[k]} vs {w[k]!r}")
                bad += 1
    print(f"{len(want)} cells checked, {bad} mismatches")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
