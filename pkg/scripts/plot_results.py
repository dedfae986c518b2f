#!/usr/bin/env python3
"""Render the CSV outputs of the experiment scripts as matplotlib figures.

Purely cosmetic helper; all quantitative artifacts are the CSVs themselves.
"""

import argparse
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


def plot_sigma_sweep(path, out):
    header, rows = load_csv(path)
    functions = sorted({r[0] for r in rows})
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for fn in functions:
        pts = [(float(r[1]), float(r[2]), float(r[3])) for r in rows if r[0] == fn]
        pts.sort()
        sigmas = [p[0] for p in pts]
        axes[0].plot(sigmas, [p[1] for p in pts], marker="o", label=fn)
        axes[1].semilogy(sigmas, [max(p[2], 1e-16) for p in pts], marker="o", label=fn)
    axes[0].set_xlabel("sigma"), axes[0].set_ylabel("success rate")
    axes[1].set_xlabel("sigma"), axes[1].set_ylabel("mean fitness gap")
    axes[0].legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_cbo_limit(path, out):
    header, rows = load_csv(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = sorted({(r[4], r[0]) for r in rows}, key=lambda t: (t[0], -float(t[1])))
    for method, eps in labels:
        pts = sorted(
            (float(r[1]), float(r[3])) for r in rows if (r[4], r[0]) == (method, eps)
        )
        label = "cbo" if method == "cbo" else f"eps={eps}"
        style = "k--" if method == "cbo" else "-"
        ax.semilogy([p[0] for p in pts], [max(p[1], 1e-16) for p in pts], style,
                    marker=".", label=label)
    ax.set_xlabel("sigma_tilde"), ax.set_ylabel("mean unit max-norm error")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_chaos(path, out):
    header, rows = load_csv(path)
    data = {}
    for r in rows:
        data.setdefault(int(r[0]), []).append(float(r[2]))
    ns = sorted(data)
    means = [np.mean(data[n]) for n in ns]
    slope, intercept = np.polyfit(np.log(ns), np.log(means), 1)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(ns, means, "o-", label="coupled error")
    ax.loglog(ns, np.exp(intercept) * np.asarray(ns, float) ** slope, "k--",
              label=f"fit slope {slope:.2f}")
    ax.loglog(ns, means[0] * (np.asarray(ns, float) / ns[0]) ** -0.5, ":",
              label="reference -1/2")
    ax.set_xlabel("N"), ax.set_ylabel("coupled error at horizon")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("kind", choices=["sigma-sweep", "cbo-limit", "chaos"])
    p.add_argument("csv")
    p.add_argument("--out", default=None)
    args = p.parse_args()
    out = args.out or os.path.splitext(args.csv)[0] + ".png"
    {"sigma-sweep": plot_sigma_sweep, "cbo-limit": plot_cbo_limit,
     "chaos": plot_chaos}[args.kind](args.csv, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
