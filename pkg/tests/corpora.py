"""Seeded instance streams shared by the test modules."""

from __future__ import annotations

from itertools import count

from vigraph.decomposition import build_decomposition, greedy_separator
from vigraph.oracles import (
    enumerate_all_graphs,
    matchable_case,
    oracle_census,
    oracle_cycle_lengths,
    plant_cycle,
    plant_induced,
    planted_case,
)


def decomposed(inst):
    return inst.graph, build_decomposition(inst.graph, inst.separator, inst.k)


def planted(cases: int, n_max: int, start: int = 0, n_min: int = 4, make=planted_case):
    for seed in range(start, start + cases):
        g, d = decomposed(make(seed, n_min, n_max))
        yield seed, g, d


def matching_corpus(cases: int, n_max: int, start: int = 0):
    half = cases // 2
    yield from planted(half, n_max, start)
    yield from planted(cases - half, n_max, start + half, make=matchable_case)


def exhaustive(n_values=range(0, 7)):
    """Every labeled graph on each ``n`` paired with a greedy separator."""
    for n in n_values:
        for g in enumerate_all_graphs(n):
            s, k = greedy_separator(g)
            yield g, build_decomposition(g, s, k)


def with_cycle(ell: int, cases: int, n_max: int = 40, start: int = 0):
    found = 0
    for seed in count(start):
        if found == cases:
            return
        inst = plant_cycle(planted_case(seed, 8, n_max), ell, seed)
        if inst is None:
            continue
        found += 1
        yield (seed, *decomposed(inst))


def without_cycle(ell: int, cases: int, n_max: int = 40, start: int = 10_000):
    found = 0
    for seed in count(start):
        if found == cases:
            return
        inst = planted_case(seed, 8, n_max)
        if oracle_cycle_lengths(inst.graph, [ell])[ell]:
            continue
        found += 1
        yield (seed, *decomposed(inst))


def with_induced(h, cases: int, n_max: int = 40, start: int = 0):
    found = 0
    for seed in count(start):
        if found == cases:
            return
        inst = plant_induced(planted_case(seed, 8, n_max), h, seed)
        if inst is None:
            continue
        found += 1
        yield (seed, *decomposed(inst))


def without_induced(h, cases: int, n_max: int = 40, start: int = 20_000, scan: int = 2000):
    """Up to ``cases`` h-free planted instances among the next ``scan`` seeds."""
    found = 0
    for seed in range(start, start + scan):
        if found == cases:
            return
        inst = planted_case(seed, 4, n_max)
        if oracle_census(inst.graph)[h.name]:
            continue
        found += 1
        yield (seed, *decomposed(inst))
