//! Generic plotting helper emitted next to the data files.

pub const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Plot every CSV table in this directory.

Generic companion script for loopeig scenario outputs: two-column tables
become line plots, wider tables plot each column against the first, and
map2d.csv is rendered as an intensity image. Requires matplotlib.
"""
import csv
import glob
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_table(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    return header, data


def numeric(data, idx):
    out = []
    for row in data:
        try:
            out.append(float(row[idx]))
        except ValueError:
            return None
    return out


def plot_map2d(path):
    header, data = read_table(path)
    xs = sorted({float(r[0]) for r in data})
    ys = sorted({float(r[1]) for r in data})
    grid = {(float(r[0]), float(r[1])): float(r[2]) for r in data}
    img = [[grid[(x, y)] for x in xs] for y in ys]
    plt.figure(figsize=(6, 5))
    plt.imshow(img, origin="lower", aspect="auto",
               extent=[min(xs), max(xs), min(ys), max(ys)])
    plt.colorbar(label=header[2])
    plt.xlabel(header[0])
    plt.ylabel(header[1])
    plt.title(os.path.basename(path))
    out = path.replace(".csv", ".png")
    plt.savefig(out, dpi=150, bbox_inches="tight")
    plt.close()
    print("wrote", out)


def plot_table(path):
    header, data = read_table(path)
    if not data:
        return
    x = numeric(data, 0)
    if x is None:
        return
    plt.figure(figsize=(7, 4))
    plotted = False
    for col in range(1, len(header)):
        y = numeric(data, col)
        if y is None:
            continue
        plt.plot(x, y, label=header[col], lw=1)
        plotted = True
    if not plotted:
        plt.close()
        return
    plt.xlabel(header[0])
    plt.legend(fontsize=7)
    plt.title(os.path.basename(path))
    out = path.replace(".csv", ".png")
    plt.savefig(out, dpi=150, bbox_inches="tight")
    plt.close()
    print("wrote", out)


def main():
    directory = sys.argv[1] if len(sys.argv) > 1 else "."
    for path in sorted(glob.glob(os.path.join(directory, "*.csv"))):
        if os.path.basename(path) == "map2d.csv":
            plot_map2d(path)
        else:
            plot_table(path)


if __name__ == "__main__":
    main()
"#;
