#!/usr/bin/env python3
"""Check LOCI against the brute-force representation on every DAG with n vertices."""

import argparse
import time

from loci.ci import generate_from_dag
from loci.engine import run_loci
from loci.faithfulness import all_dags, brute_force_representation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4, choices=range(2, 6))
    args = ap.parse_args()

    start = time.perf_counter()
    dags = all_dags(args.n)
    bad = 0
    for k in range(args.n - 1):
        for d in dags:
            s = generate_from_dag(d, k)
            if run_loci(s).graph != brute_force_representation(s):
                bad += 1
                print(f"mismatch k={k}: {d}")
    print(f"{len(dags)} DAGs x {args.n - 1} orders, {bad} mismatches, {time.perf_counter() - start:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
