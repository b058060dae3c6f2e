"""Command-line entry point: gen, sparsify, bench, oracle.

Exit codes: 0 success, 2 input parse failure, 3 auction non-termination,
1 anything else.  No output file is written unless the run succeeds, so a
failing invocation never leaves partial artifacts behind.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .auction import AuctionNonTermination, auction_assign, resolve_epsilon
from .engine import run_parallel_auction
from .graph import apply_selection, to_bipartite_shadow
from .ingest import (MatrixMarketError, gen_two_moons, gen_uniform_bipartite,
                     gen_uniform_unipartite, load_matrix_market, save_edge_list,
                     save_matrix_market, save_points)
from .metrics import evaluate
from .oracle import exact_bmatching
from .sparsify import (SparsifyConfig, auction_b_rounds, auction_multibid,
                       knn_select, percentile_repair, symmetrize_max,
                       symmetrize_min)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NONTERMINATION = 3


def _bipartite_to_graph(problem):
    """Lay a bipartite problem out as one graph: objects after the buyers."""
    from .graph import WeightedGraph
    half = problem.buyer_count
    n = half + problem.object_count
    return WeightedGraph(n, problem.buyers, problem.objects + half,
                         problem.weights, directed=False)


def cmd_gen(args):
    if args.type == "moons":
        pts = gen_two_moons(args.n, args.seed)
        save_points(pts, args.output)
        print(f"type: moons")
        print(f"n: {args.n}")
        print(f"points: {len(pts)}")
        return EXIT_OK
    if args.type == "bipartite":
        problem = gen_uniform_bipartite(args.n, args.seed)
        graph = _bipartite_to_graph(problem)
        nnz = problem.directed_edge_count
    else:
        graph = gen_uniform_unipartite(args.n, args.seed)
        nnz = graph.directed_edge_count
    save_matrix_market(graph, args.output)
    print(f"type: {args.type}")
    print(f"n: {args.n}")
    print(f"edges: {nnz}")
    return EXIT_OK


def _echo_config(pairs, report_lines):
    for key, value in pairs:
        line = f"config.{key}: {value}"
        print(line)
        report_lines.append(line)


def cmd_sparsify(args):
    graph = load_matrix_market(args.input)
    config = SparsifyConfig(b=args.b, epsilon=args.epsilon,
                            method=args.method, symmetrize=args.symmetrize,
                            partitions=args.partitions,
                            max_rounds=args.max_rounds)

    problem = to_bipartite_shadow(graph)
    eps = resolve_epsilon(problem, config.epsilon)
    report_lines = []
    _echo_config([
        ("input", args.input), ("b", config.b), ("method", config.method),
        ("epsilon", config.epsilon), ("epsilon_resolved", repr(eps)),
        ("symmetrize", config.symmetrize), ("partitions", config.partitions),
        ("max_rounds", config.max_rounds),
    ], report_lines)

    t0 = time.perf_counter()
    prices = None
    iterations = 0
    if config.method == "knn":
        sel = knn_select(graph, config.b)
    elif config.method == "auction_rounds":
        sel = auction_b_rounds(problem, config)
    else:
        sel, prices, iterations = run_parallel_auction(problem, config)

    if config.symmetrize == "max":
        sel = symmetrize_max(sel)
    elif config.symmetrize == "min":
        sel = symmetrize_min(sel)
    elif config.symmetrize == "percentile":
        sel = percentile_repair(graph, sel)
    wall = time.perf_counter() - t0

    report = evaluate(graph, sel, prices=prices, iterations=iterations,
                      wall_time_seconds=wall, epsilon_used=eps)
    result = apply_selection(graph, sel)

    if args.output:
        save_edge_list(result, args.output)
    text = "\n".join(report_lines) + "\n" + report.to_text()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    print(report.to_text(), end="")
    return EXIT_OK


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    methods = args.methods.split(",")
    partitions = [int(p) for p in args.partitions.split(",")]
    for m in methods:
        if m not in ("knn", "auction_rounds", "auction_multibid"):
            raise ValueError(f"unknown method {m!r}")

    lines = []

    def emit(text):
        print(text)
        lines.append(text)

    emit(f"config.sizes: {sizes}")
    emit(f"config.b: {args.b}")
    emit(f"config.methods: {methods}")
    emit(f"config.partitions: {partitions}")
    emit(f"config.repeats: {args.repeats}")
    emit(f"config.seed: {args.seed}")
    emit(f"config.epsilon: {args.epsilon}")

    columns = []
    for m in methods:
        if m == "knn":
            columns.append((m, 1))
        else:
            columns.extend((m, L) for L in partitions)

    header = ["n"] + [f"{m}/L{L}" if m != "knn" else m for m, L in columns]
    emit("\t".join(header))
    for n in sizes:
        graph = gen_uniform_unipartite(n, args.seed)
        problem = to_bipartite_shadow(graph)
        eps = resolve_epsilon(problem, args.epsilon)
        emit(f"# n={n} epsilon_resolved={eps!r}")
        row = [str(n)]
        for m, L in columns:
            config = SparsifyConfig(b=args.b, epsilon=eps, method=m,
                                    partitions=L)
            times = []
            for rep in range(args.repeats):
                t0 = time.perf_counter()
                if m == "knn":
                    knn_select(graph, config.b)
                elif m == "auction_rounds":
                    auction_b_rounds(problem, config)
                else:
                    run_parallel_auction(problem, config)
                dt = time.perf_counter() - t0
                times.append(dt)
                emit(f"# run n={n} method={m} L={L} rep={rep} seconds={dt!r}")
            row.append(repr(sum(times) / len(times)))
        emit("\t".join(row))

    if args.report:
        with open(args.report, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_oracle(args):
    graph = load_matrix_market(args.input)
    weight = exact_bmatching(graph, args.b)
    print(f"oracle_bmatching_b: {args.b}")
    print(f"oracle_bmatching_weight: {weight!r}")
    return EXIT_OK


def _epsilon_arg(text):
    if text == "auto":
        return "auto"
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive or 'auto'")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="auctiongraph",
        description="Sparse nearly b-regular subgraphs via auction matching")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark instance")
    p.add_argument("--type", choices=("bipartite", "unipartite", "moons"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sparsify", help="sparsify a graph to degree <= b")
    p.add_argument("--input", required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--method", default="auction_multibid",
                   choices=("knn", "auction_rounds", "auction_multibid"))
    p.add_argument("--epsilon", type=_epsilon_arg, default="auto")
    p.add_argument("--symmetrize", default="none",
                   choices=("none", "max", "min", "percentile"))
    p.add_argument("--partitions", type=int, default=1)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("bench", help="time the methods on seeded instances")
    p.add_argument("--sizes", default="100,200")
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--methods", default="knn,auction_multibid")
    p.add_argument("--partitions", default="1")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=_epsilon_arg, default="auto")
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="exact small-instance b-matching weight")
    p.add_argument("--input", required=True)
    p.add_argument("--b", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixMarketError, FileNotFoundError) as exc:
        print(f"error [ingest]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AuctionNonTermination as exc:
        print(f"error [auction]: {exc}", file=sys.stderr)
        return EXIT_NONTERMINATION
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
