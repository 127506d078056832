#!/usr/bin/env python3
"""Rerun the random-DAG oracle study and compare with the published table means.

    python3 scripts/reproduce_tables.py                   # n in {20, 60}, d in {2, 3, 5}
    python3 scripts/reproduce_tables.py --n 100 --d 2 3 4 5 --workers 4 --csv-dir out/

Prints one line per cell and metric with the tolerance used by the test suite,
max(10% relative, 3 standard errors of our mean).
"""

import argparse
import json
from pathlib import Path

from loci.experiments import ExperimentConfig, records_to_csv, run_experiment

REFERENCE = Path(__file__).resolve().parents[1] / "data" / "reference_tables.json"


def compare(ours, se, published):
    tol = max(0.10 * abs(published), 3 * se)
    return abs(ours - published) <= tol, tol


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[20, 60])
    ap.add_argument("--d", type=float, nargs="+", default=[2, 3, 5])
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv-dir", type=Path)
    args = ap.parse_args()

    cells = {(c["n"], c["d"]): c for c in json.loads(REFERENCE.read_text())["cells"]}
    failures = 0
    for n in args.n:
        for d in args.d:
            cfg = ExperimentConfig(n=n, d=d, k=args.k, trials=args.trials, seed=args.seed)
            summary = run_experiment(cfg, workers=args.workers)
            if args.csv_dir:
                args.csv_dir.mkdir(parents=True, exist_ok=True)
                (args.csv_dir / f"n{n}_d{d:g}_k{args.k}.csv").write_text(records_to_csv(summary))
            ref = cells.get((n, d)) if args.k == 1 else None
            rows = [(m, summary.mean[m], summary.sem[m]) for m in ("edges_01", "edges_G", "edges_D")]
            rows += [(f"{m}/n", summary.vs_per_node[m], summary.vs_per_node_sem[m]) for m in ("vs_G", "vs_D", "vs_both")]
            published = (ref["edges"] + ref["vs_per_node"]) if ref else [None] * 6
            for (name, ours, se), published in zip(rows, published):
                line = f"n={n:<4} d={d:<4g} {name:<10} {ours:10.3f} +- {se:7.3f}"
                if published is not None:
                    ok, tol = compare(ours, se, published)
                    failures += not ok
                    line += f"   published {published:10.3f}  tol {tol:8.3f}  {'ok' if ok else 'OUT'}"
                print(line, flush=True)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
