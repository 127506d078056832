"""Command-line interface.

Exit codes: 0 success, 1 semantic negative (not representable, no
extension, algorithms disagree), 2 input error, 3 contract violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .ci import CIError, format_ci, generate_from_dag, parse_ci
from .engine import run_loci
from .experiments import ExperimentConfig, records_to_csv, run_experiment
from .faithfulness import check_k0_equivalence, decide_representable
from .graph import GraphError, format_graph, is_dag, parse_graph
from .meek import consistent_extension

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CONTRACT = 0, 1, 2, 3


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _names(arg: str | None, n: int) -> list[str] | None:
    if arg is None:
        return None
    names = [t for t in arg.replace(",", " ").split() if t]
    if len(names) != n or len(set(names)) != n:
        raise CLIError(f"--names needs {n} distinct names, got {len(names)}", EXIT_INPUT)
    return names


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_INPUT) from None


def _load_ci(path: str):
    try:
        return parse_ci(_read(path))
    except CIError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_INPUT) from None


def cmd_oracle(args) -> int:
    g = _load_graph(args.dag_file)
    if not is_dag(g):
        raise CLIError(f"{args.dag_file}: not a DAG (undirected edge or directed cycle)", EXIT_CONTRACT)
    if not 0 <= args.k <= max(g.n - 2, 0):
        raise CLIError(f"--k must lie in 0..{max(g.n - 2, 0)}", EXIT_INPUT)
    s = generate_from_dag(g, args.k)
    names = _names(args.names, g.n)
    if names is not None:
        s = s.with_names(names)
    _write(args.out, format_ci(s))
    return EXIT_OK


def cmd_learn(args) -> int:
    s = _load_ci(args.ci_file)
    names = _names(args.names, s.n)
    if args.decide:
        ok, rep = decide_representable(s)
    else:
        ok, rep = None, run_loci(s)
    g = rep.graph.with_names(names) if names is not None else rep.graph
    _write(args.out, format_graph(g))
    if ok is None:
        return EXIT_OK
    print(f"representable: {'true' if ok else 'false'}", file=sys.stdout if args.out not in (None, "-") else sys.stderr)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_extend(args) -> int:
    g = _load_graph(args.graph_file)
    d = consistent_extension(g)
    if d is None:
        print("no consistent extension exists", file=sys.stderr)
        return EXIT_NEGATIVE
    names = _names(args.names, g.n)
    if names is not None:
        d = d.with_names(names)
    _write(args.out, format_graph(d))
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        cfg = ExperimentConfig(n=args.n, d=args.d, k=args.k, trials=args.trials, seed=args.seed)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INPUT) from None
    summary = run_experiment(cfg, workers=args.workers)
    _write(args.out, records_to_csv(summary))
    per_node = summary.vs_per_node
    print(
        "edges 0-1 / G / D: {:.2f} / {:.2f} / {:.2f};  v-structures per node G / D / both: "
        "{:.3f} / {:.3f} / {:.3f}".format(
            summary.mean["edges_01"], summary.mean["edges_G"], summary.mean["edges_D"],
            per_node["vs_G"], per_node["vs_D"], per_node["vs_both"],
        ),
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_compare_k0(args) -> int:
    s = _load_ci(args.ci_file)
    if s.k != 0:
        raise CLIError(f"{args.ci_file}: compare-k0 needs a file with 'k 0', got k = {s.k}", EXIT_CONTRACT)
    same = check_k0_equivalence(s)
    print(f"equivalent: {'true' if same else 'false'}")
    return EXIT_OK if same else EXIT_NEGATIVE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CLIError(f"{self.prog}: {message}", EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="loci", description="Learn CPDAGs from low-order conditional independencies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    o = sub.add_parser("oracle", help="write every CI statement of order <= k that holds in a DAG")
    o.add_argument("dag_file")
    o.add_argument("--k", type=int, default=1)
    o.add_argument("--out", "-o")
    o.add_argument("--names")
    o.set_defaults(func=cmd_oracle)

    l = sub.add_parser("learn", help="run LOCI on a CI file")
    l.add_argument("ci_file")
    l.add_argument("--out", "-o")
    l.add_argument("--decide", action="store_true", help="also decide DAG-representability (exit 1 if not)")
    l.add_argument("--names")
    l.set_defaults(func=cmd_learn)

    e = sub.add_parser("extend", help="write one consistent extension of a PDAG")
    e.add_argument("graph_file")
    e.add_argument("--out", "-o")
    e.add_argument("--names")
    e.set_defaults(func=cmd_extend)

    x = sub.add_parser("experiment", help="random-DAG oracle study, CSV output")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--d", type=float, required=True)
    x.add_argument("--k", type=int, default=1)
    x.add_argument("--trials", type=int, default=100)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--out", "-o")
    x.set_defaults(func=cmd_experiment)

    c = sub.add_parser("compare-k0", help="compare LOCI with the boundary algorithm on a k=0 CI file")
    c.add_argument("ci_file")
    c.set_defaults(func=cmd_compare_k0)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
