"""Oracle-versus-fast-path suites over seeded planted corpora."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import cycles, matching, subgraph4
from .apsp import apsp, bfs_distances, nice_partition
from .decomposition import build_decomposition
from .fourgraphs import four_graph
from .gf import FieldSpec
from .oracles import (
    UNREACHABLE,
    matchable_case,
    oracle_apsp,
    oracle_census,
    oracle_cycle_lengths,
    oracle_even_girth,
    oracle_girth,
    oracle_max_matching,
    planted_case,
)


@dataclass
class Tally:
    name: str
    passed: int = 0
    total: int = 0

    def record(self, ok: bool) -> None:
        self.total += 1
        self.passed += bool(ok)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} {'PASS' if self.ok else 'FAIL'}"


def _corpus(cases: int, n_max: int, seed: int, make=planted_case):
    for i in range(cases):
        inst = make(seed + i, 4, n_max)
        yield inst.graph, build_decomposition(inst.graph, inst.separator, inst.k), seed + i


def suite_decomposition(cases: int, n_max: int, seed: int) -> list[Tally]:
    sizes = Tally("decomposition part sizes")
    for g, d, _ in _corpus(cases, n_max, seed):
        k = max(d.k, 1)
        ok = all(len(p) <= 2 * k - 1 for p in d.parts)
        ok &= all(len(p) >= k for p in d.parts[:-1])
        sizes.record(ok)
    return [sizes]


def suite_girth(cases: int, n_max: int, seed: int) -> list[Tally]:
    gt, et = Tally("girth equals oracle"), Tally("even girth equals oracle")
    for g, d, _ in _corpus(cases, n_max, seed):
        rep = cycles.girth(g, d)
        gt.record((rep.length if rep else None) == oracle_girth(g))
        rep = cycles.even_girth(g, d)
        et.record((rep.length if rep else None) == oracle_even_girth(g))
    return [gt, et]


def suite_cycles(cases: int, n_max: int, seed: int, failure_prob: float = 0.05) -> list[Tally]:
    out = []
    for ell in range(3, cycles.MAX_CYCLE_LENGTH + 1):
        found, clean = Tally(f"C{ell} detected when present"), Tally(f"C{ell} never reported when absent")
        for g, d, s in _corpus(cases, n_max, seed):
            truth = oracle_cycle_lengths(g, [ell])[ell]
            rep = cycles.find_cycle_of_length(g, d, ell, failure_prob, s)
            (found if truth else clean).record((rep is not None) == truth)
        out += [found, clean]
    return out


def suite_subgraph(cases: int, n_max: int, seed: int) -> list[Tally]:
    counts, detect = Tally("count_mod equals census"), Tally("detection agrees with census")
    for g, d, s in _corpus(cases, n_max, seed):
        census = oracle_census(g)
        for name, q in subgraph4.Q_H.items():
            counts.record(subgraph4.count_mod(g, d, name)[0] == census[name] % q)
        for name in list(subgraph4.Q_H) + ["C4", "coC4"]:
            detect.record(subgraph4.detect_induced(g, d, four_graph(name), 0.05, s) == (census[name] > 0))
    return [counts, detect]


def suite_matching(cases: int, n_max: int, seed: int) -> list[Tally]:
    field = FieldSpec.of_degree(32)
    size, yes = Tally("max matching size equals oracle"), Tally("perfect-matching test agrees")
    half = cases // 2
    corpus = [*_corpus(half, n_max, seed), *_corpus(cases - half, n_max, seed + half, matchable_case)]
    for g, d, s in corpus:
        opt = len(oracle_max_matching(g))
        size.record(matching.max_matching(g, d, field, s).size == opt)
        yes.record(matching.has_perfect_matching(g, d, 3, field, s) == (2 * opt == g.n))
    return [size, yes]


def suite_apsp(cases: int, n_max: int, seed: int) -> list[Tally]:
    exact, cert = Tally("apsp equals BFS oracle"), Tally("bounded-difference certificate")
    for g, d, _ in _corpus(cases, n_max, seed):
        ref = oracle_apsp(g)
        exact.record(np.array_equal(apsp(g, d).entries, ref))
        nice = nice_partition(g, d)
        dist = bfs_distances(nice.graph)
        ok = True
        for path in nice.parts:
            rows = dist[path]
            finite = rows < UNREACHABLE
            ok &= bool(np.all(finite[1:] == finite[:-1]))
            ok &= bool(np.all(np.abs(np.diff(np.where(finite, rows, 0), axis=0)) <= 1))
        cert.record(ok)
    return [exact, cert]


SUITES: dict[str, Callable[[int, int, int], list[Tally]]] = {
    "decomposition": suite_decomposition,
    "girth": suite_girth,
    "cycles": suite_cycles,
    "subgraph": suite_subgraph,
    "matching": suite_matching,
    "apsp": suite_apsp,
}
