#!/usr/bin/env python3
"""Compare the boundary algorithm with LOCI on random marginal-independence sets.

Also reports how often the Meek stage oriented anything (it should never).
"""

import argparse
import random

from loci.ci import generate_from_dag
from loci.engine import loci_trace
from loci.faithfulness import boundary_algorithm_k0
from loci.graph import Graph


def random_dag(rng, n, p):
    order = list(range(n))
    rng.shuffle(order)
    return Graph.from_arcs(n, [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    disagree = meek_moved = 0
    for _ in range(args.cases):
        n = rng.randint(2, args.max_n)
        s = generate_from_dag(random_dag(rng, n, rng.uniform(0.05, 0.6)), 0)
        t = loci_trace(s)
        disagree += boundary_algorithm_k0(s) != t.final
        meek_moved += t.oriented != t.final
    print(f"{args.cases} cases: {disagree} disagreements, Meek stage changed {meek_moved} graphs")
    return 1 if disagree or meek_moved else 0


if __name__ == "__main__":
    raise SystemExit(main())
