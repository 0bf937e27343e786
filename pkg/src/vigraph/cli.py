"""Command-line front end.

Exit codes: 0 success, 1 "no" / not found, 2 input error, 3 probabilistic
failure. Every subcommand is deterministic for a fixed ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import cycles, matching, subgraph4
from .apsp import KERNELS, UNREACHABLE, apsp, apsp_bounded_diameter
from .blocks import square_on_edges_array
from .decomposition import (
    SeparatorDecomposition,
    build_decomposition,
    exact_vertex_integrity,
    greedy_separator,
)
from .errors import InputError, PreconditionError, ProbabilisticFailure
from .fourgraphs import four_graph
from .graph import Graph, generate_planted, read_separator, separator_to_text
from .suites import SUITES

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_PROBABILISTIC = 0, 1, 2, 3
AUTO_SEP_BUDGET = 5
AUTO_SEP_MAX_N = 200
CSV_HEADER = ["command", "n", "m", "k", "kernel", "seed", "wall_ms", "result"]


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.lines: list[str] = []

    def print(self, *parts) -> None:
        self.lines.append(" ".join(str(p) for p in parts))

    def flush(self) -> None:
        text = "".join(line + "\n" for line in self.lines)
        if self.path:
            Path(self.path).write_text(text)
        else:
            sys.stdout.write(text)


def auto_separator(g: Graph, budget: int = AUTO_SEP_BUDGET) -> tuple[list[int], int, str]:
    """Exact integrity when it is small, otherwise greedy peeling."""
    if g.n <= AUTO_SEP_MAX_N:
        found = exact_vertex_integrity(g, budget)
        if found is not None:
            k, sep = found
            return sep, k, "exact"
    sep, k = greedy_separator(g)
    return sep, k, "greedy"


def _load(args, out: Optional[_Output] = None) -> tuple[Graph, SeparatorDecomposition]:
    g = Graph.read(args.graph)
    if args.sep:
        sep, k = read_separator(args.sep)
    elif args.auto_sep:
        sep, k, how = auto_separator(g, args.budget)
        if out is not None:
            out.print(f"# separator {how} k={k}")
    else:
        raise InputError("give --sep FILE or --auto-sep")
    return g, build_decomposition(g, sep, k)


def _print_cycle(out: _Output, rep) -> int:
    if rep is None:
        out.print("none")
        return EXIT_NO
    out.print(rep.length)
    out.print(*rep.vertices)
    return EXIT_OK


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    inst = generate_planted(args.n, args.sep_size, args.comp, args.p_in, args.p_cross, args.seed,
                            edge_prob_sep=args.p_sep)
    out = _Output(args.out)
    out.print(inst.graph.to_text().rstrip("\n"))
    out.flush()
    if args.sep_out:
        Path(args.sep_out).write_text(separator_to_text(inst.separator, inst.k))
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = Graph.read(args.graph)
    out = _Output(args.out)
    if args.sep:
        sep, k = read_separator(args.sep)
    else:
        sep, k, how = auto_separator(g, args.budget)
        print(f"# separator {how} k={k}", file=sys.stderr)
    d = build_decomposition(g, sep, k)
    out.print(separator_to_text(d.separator, d.k).rstrip("\n"))
    for part in d.parts:
        out.print("part", *part)
    out.flush()
    return EXIT_OK


def cmd_girth(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    code = _print_cycle(out, cycles.girth(g, d))
    out.flush()
    return code


def cmd_even_girth(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    code = _print_cycle(out, cycles.even_girth(g, d))
    out.flush()
    return code


def cmd_cycle(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    code = _print_cycle(out, cycles.find_cycle_of_length(g, d, args.len, args.fail_prob, args.seed))
    out.flush()
    return code


def cmd_subgraph(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    token = args.h.lower()
    if token in ("k4", "co-k4"):
        finder = subgraph4.find_clique if token == "k4" else subgraph4.find_independent_set
        found = finder(g, d, 4)
        out.print("found" if found else "none")
        if found:
            out.print(*found)
        out.flush()
        return EXIT_OK if found else EXIT_NO
    h = four_graph(token)
    if args.count:
        residue, q = subgraph4.count_mod(g, d, h)
        out.print(f"{residue} mod {q}")
        out.flush()
        return EXIT_OK
    emb = subgraph4.find_induced(g, d, h, args.fail_prob, args.seed)
    out.print("found" if emb else "none")
    if emb:
        out.print(*emb.vertices)
    out.flush()
    return EXIT_OK if emb else EXIT_NO


def cmd_matching(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    if args.perfect:
        stats: dict = {}
        found = matching.find_perfect_matching(g, d, seed=args.seed, stats=stats)
        if found is None:
            err = 0.0 if g.n % 2 else stats["failure_bound"]
            out.print(f"no perfect matching (confidence >= {1 - err:.6f})")
            out.flush()
            return EXIT_NO
    else:
        found = matching.max_matching(g, d, seed=args.seed)
    out.print(found.size)
    out.print(found.to_text().rstrip("\n"))
    out.flush()
    return EXIT_OK


def cmd_apsp(args) -> int:
    out = _Output(args.out)
    g, d = _load(args, out)
    if args.d_max is not None:
        dist = apsp_bounded_diameter(g, d, args.d_max)
    else:
        dist = apsp(g, d, args.kernel)
    out.print(dist.to_text().rstrip("\n"))
    out.flush()
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        for tally in SUITES[name](args.cases, args.n, args.seed):
            print(f"{name} {tally.line()}")
            ok &= tally.ok
    return EXIT_OK if ok else EXIT_NO


def _bench_one(command: str, n: int, k: int, seed: int, kernel: str) -> tuple[int, int, float, str]:
    sep_size = max(k // 2, 1)
    inst = generate_planted(n, sep_size, k - sep_size, 0.3, 0.1, seed)
    g = inst.graph
    d = build_decomposition(g, inst.separator, inst.k)
    start = time.perf_counter()
    if command == "girth":
        rep = cycles.girth(g, d)
        result = str(rep.length if rep else "none")
    elif command == "square":
        result = str(int(square_on_edges_array(g, d).sum()))
    elif command == "dense-square":
        a = g.dense(np.float32)
        sq = a @ a
        e = g.edge_array
        result = str(int(sq[e[:, 0], e[:, 1]].sum()))
    elif command == "apsp":
        dist = apsp(g, d, kernel)
        result = str(int(dist.entries[dist.entries < UNREACHABLE].sum()))
    elif command == "matching":
        result = str(matching.max_matching(g, d, seed=seed).size)
    else:
        raise InputError(f"unknown bench command {command!r}")
    wall = (time.perf_counter() - start) * 1000
    return g.n, g.m, wall, result


BENCH_COMMANDS = ("girth", "square", "dense-square", "apsp", "matching")


def cmd_bench(args) -> int:
    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for command in args.commands:
            for n in args.n:
                nn, m, wall, result = _bench_one(command, n, args.k, args.seed, args.kernel)
                writer.writerow([command, nn, m, args.k, args.kernel, args.seed, f"{wall:.3f}", result])
    finally:
        if args.out:
            handle.close()
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------

def _probability(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file ('p n m' header, one 'u v' edge per line)")
    p.add_argument("--sep", help="separator file (vertex ids, then 'k <k>')")
    p.add_argument("--auto-sep", action="store_true", help="compute a separator")
    p.add_argument("--budget", type=int, default=AUTO_SEP_BUDGET, help="largest k tried exactly by --auto-sep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write results here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vigraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a planted instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sep-size", type=int, default=4)
    p.add_argument("--comp", type=int, default=8)
    p.add_argument("--p-in", type=float, default=0.3)
    p.add_argument("--p-cross", type=float, default=0.1)
    p.add_argument("--p-sep", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--sep-out", help="also write the planted separator here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="print the separator and packed parts")
    p.add_argument("graph")
    p.add_argument("--sep")
    p.add_argument("--budget", type=int, default=AUTO_SEP_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    for name, func, text in (("girth", cmd_girth, "shortest cycle"),
                             ("even-girth", cmd_even_girth, "shortest even cycle")):
        p = sub.add_parser(name, help=text)
        _graph_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("cycle", help="find a cycle of a given length (3..8)")
    _graph_args(p)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--fail-prob", type=_probability, default=0.05)
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("subgraph", help="find or count an induced four-vertex graph")
    _graph_args(p)
    p.add_argument("--h", required=True, help="k4, co-k4, diamond, co-diamond, c4, co-c4, paw, co-paw, claw, co-claw, p4")
    p.add_argument("--count", action="store_true", help="print the induced count modulo its modulus")
    p.add_argument("--fail-prob", type=_probability, default=0.05)
    p.set_defaults(func=cmd_subgraph)

    p = sub.add_parser("matching", help="maximum (or perfect) matching")
    _graph_args(p)
    p.add_argument("--perfect", action="store_true")
    p.set_defaults(func=cmd_matching)

    p = sub.add_parser("apsp", help="all-pairs hop distances (-1 = unreachable)")
    _graph_args(p)
    p.add_argument("--kernel", choices=KERNELS, default="naive")
    p.add_argument("--d-max", type=int, help="stop at this distance")
    p.set_defaults(func=cmd_apsp)

    p = sub.add_parser("verify", help="run oracle suites on planted corpora")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--n", type=int, default=40, help="largest instance size")
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time kernels on planted instances, CSV to stdout")
    p.add_argument("--commands", nargs="+", choices=BENCH_COMMANDS, default=["girth", "square"])
    p.add_argument("--n", type=int, nargs="+", default=[1024, 4096])
    p.add_argument("--k", type=int, default=32)
    p.add_argument("--kernel", choices=KERNELS, default="naive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ProbabilisticFailure as exc:
        print(f"probabilistic failure: {exc}", file=sys.stderr)
        return EXIT_PROBABILISTIC


if __name__ == "__main__":
    sys.exit(main())
