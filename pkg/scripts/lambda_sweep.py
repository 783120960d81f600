#!/usr/bin/env python3
"""Index from the g-only solver along the scaled-metric family G > G' > K'.

The factor on p' is swept over a grid; the metric is normal at 1 and the
p' fields become parallel at 2. Writes a CSV and prints the table.
"""
from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from symindex.catalog import aloff_wallach, unit_tangent_bundle
from symindex.killing import cartan_subspace

FAMILIES = {
    "t1s3": lambda lam: unit_tangent_bundle(3, lam=lam),
    "t1s4": lambda lam: unit_tangent_bundle(4, lam=lam),
    "aloff-wallach": lambda lam: aloff_wallach(lam=lam),
}


@dataclass(frozen=True)
class SweepConfig:
    lam_min: float = 0.25
    lam_max: float = 4.0
    points: int = 16
    extra: tuple = (1.0, 2.0)
    families: tuple = field(default=tuple(FAMILIES))
    out: str = "results/lambda_sweep.csv"


def sweep(cfg: SweepConfig):
    grid = sorted(set(np.round(np.linspace(cfg.lam_min, cfg.lam_max, cfg.points), 6)) | set(cfg.extra))
    rows = []
    for lam in grid:
        row = {"lambda": lam}
        for name in cfg.families:
            space = FAMILIES[name](lam)
            cs = cartan_subspace(space)
            row[name] = cs.index
            row[f"{name}_floor"] = cs.operator_floor
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=SweepConfig.points)
    ap.add_argument("--out", default=SweepConfig.out)
    args = ap.parse_args()
    cfg = SweepConfig(points=args.points, out=args.out)
    rows = sweep(cfg)
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    print("lambda   " + "  ".join(f"{n:>13}" for n in cfg.families))
    for r in rows:
        print(f"{r['lambda']:<8.4g} " + "  ".join(f"{r[n]:>13d}" for n in cfg.families))


if __name__ == "__main__":
    main()
