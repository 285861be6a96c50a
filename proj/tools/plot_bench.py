#!/usr/bin/env python3
# Copyright 2026 The Model Transparency Kit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Log-log plots of mtk bench CSV files.

Usage: plot_bench.py CSV [CSV ...] --out-dir DIR
Writes one PNG per experiment found in the inputs.
"""

import argparse
import collections
import csv
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

LABELS = {
    "hash": ("model size (bytes)", "median wall time (s)"),
    "zks": ("committed elements", "median wall time (s)"),
}


def load(paths):
    series = collections.defaultdict(lambda: collections.defaultdict(list))
    for path in paths:
        with open(path, newline="") as f:
            for row in csv.DictReader(f):
                if row["note"].startswith("skipped") or not row["runs"] or row["runs"] == "0":
                    continue
                series[row["experiment"]][row["operation"]].append(
                    (int(row["param"]), float(row["median_seconds"]),
                     float(row["min_seconds"]), float(row["max_seconds"])))
    return series


def plot(experiment, ops, out_dir):
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for op, points in sorted(ops.items()):
        points.sort()
        xs = [p[0] for p in points]
        med = [p[1] for p in points]
        err = [[p[1] - p[2] for p in points], [p[3] - p[1] for p in points]]
        ax.errorbar(xs, med, yerr=err, marker="o", capsize=3, label=op)
    ax.set_xscale("log")
    ax.set_yscale("log")
    xlabel, ylabel = LABELS.get(experiment, ("param", "median wall time (s)"))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(f"mtk bench: {experiment}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    out = out_dir / f"bench_{experiment}.png"
    fig.savefig(out, dpi=120)
    plt.close(fig)
    print(out)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv", nargs="+", type=pathlib.Path)
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("."))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for experiment, ops in sorted(load(args.csv).items()):
        plot(experiment, ops, args.out_dir)


if __name__ == "__main__":
    main()
