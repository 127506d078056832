"""Oracle-model study on random sparse DAGs.

Each trial draws a DAG, reads off every CI statement of order at most ``k``,
runs LOCI, and records adjacency and v-structure counts for the 0-1 graph
(the k-partial graph), the learned representation ``G`` and the true DAG
``D``.  Trial ``t`` of a run with master seed ``s`` uses the PCG64 stream
seeded by ``SeedSequence([s, t])``, so records do not depend on how trials
are distributed over workers.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .ci import generate_from_dag
from .engine import k_partial_graph, run_loci
from .graph import Graph, count_v_structures, v_structures

CSV_COLUMNS = ["trial", "n", "d", "k", "seed", "edges_01", "edges_G", "edges_D", "vs_G", "vs_D", "vs_both"]
METRICS = ["edges_01", "edges_G", "edges_D", "vs_G", "vs_D", "vs_both"]


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    d: float
    k: int = 1
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if not 0 <= self.d <= max(self.n - 1, 0):
            raise ValueError(f"expected degree d={self.d} outside [0, {self.n - 1}]")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not 0 <= self.k <= max(self.n - 2, 0):
            raise ValueError(f"order k={self.k} outside [0, {max(self.n - 2, 0)}]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class ExperimentRecord:
    trial: int
    edges_01: int
    edges_G: int
    edges_D: int
    vs_G: int
    vs_D: int
    vs_both: int


@dataclass(frozen=True)
class ExperimentSummary:
    config: ExperimentConfig
    records: tuple[ExperimentRecord, ...]
    mean: dict[str, float]
    # standard error of each mean; 0 for a single trial
    sem: dict[str, float]

    @property
    def vs_per_node(self) -> dict[str, float]:
        return {m: self.mean[m] / self.config.n for m in ("vs_G", "vs_D", "vs_both")}

    @property
    def vs_per_node_sem(self) -> dict[str, float]:
        return {m: self.sem[m] / self.config.n for m in ("vs_G", "vs_D", "vs_both")}


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_dag(n: int, d: float, rng: np.random.Generator) -> Graph:
    """Keep each vertex pair with probability ``d / (n - 1)``, then orient along a random order."""
    if not 0 <= d <= max(n - 1, 0):
        raise ValueError(f"expected degree d={d} outside [0, {n - 1}]")
    if n < 2:
        return Graph.empty(n)
    p = d / (n - 1)
    keep = np.triu(rng.random((n, n)) < p, 1)
    order = rng.permutation(n)
    # order[i] precedes order[j] whenever i < j
    arcs = [(int(order[i]), int(order[j])) for i, j in zip(*np.nonzero(keep))]
    return Graph.from_arcs(n, arcs)


def run_trial(cfg: ExperimentConfig, trial: int) -> ExperimentRecord:
    dag = random_dag(cfg.n, cfg.d, trial_rng(cfg.seed, trial))
    k = min(cfg.k, max(cfg.n - 2, 0))
    s = generate_from_dag(dag, k)
    g = run_loci(s).graph
    vs_g = v_structures(g)
    vs_d = v_structures(dag)
    return ExperimentRecord(
        trial=trial,
        edges_01=k_partial_graph(s).num_adjacencies(),
        edges_G=g.num_adjacencies(),
        edges_D=dag.num_adjacencies(),
        vs_G=count_v_structures(g),
        vs_D=len(vs_d),
        vs_both=len(vs_g & vs_d),
    )


def _run_chunk(args: tuple[ExperimentConfig, list[int]]) -> list[ExperimentRecord]:
    cfg, trials = args
    return [run_trial(cfg, t) for t in trials]


def run_records(cfg: ExperimentConfig, workers: int = 1) -> list[ExperimentRecord]:
    trials = list(range(cfg.trials))
    if workers <= 1:
        return _run_chunk((cfg, trials))
    chunks = [(cfg, trials[i::workers]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        records = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    return sorted(records, key=lambda r: r.trial)


def summarize(cfg: ExperimentConfig, records: list[ExperimentRecord]) -> ExperimentSummary:
    mean, sem = {}, {}
    for m in METRICS:
        vals = np.array([getattr(r, m) for r in records], dtype=float)
        mean[m] = float(vals.mean())
        sem[m] = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
    return ExperimentSummary(cfg, tuple(records), mean, sem)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentSummary:
    return summarize(cfg, run_records(cfg, workers))


def records_to_csv(summary: ExperimentSummary) -> str:
    """One row per trial plus a final ``trial=mean`` row of plain column means."""
    cfg = summary.config
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in summary.records:
        w.writerow([r.trial, cfg.n, cfg.d, cfg.k, cfg.seed, *(getattr(r, m) for m in METRICS)])
    w.writerow(["mean", cfg.n, cfg.d, cfg.k, cfg.seed, *(f"{summary.mean[m]:.6g}" for m in METRICS)])
    return buf.getvalue()


def record_as_dict(r: ExperimentRecord) -> dict[str, int]:
    return asdict(r)

