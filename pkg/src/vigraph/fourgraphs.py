"""The eleven graphs on four vertices, up to isomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .errors import InputError

PAIRS = tuple(combinations(range(4), 2))


@dataclass(frozen=True)
class FourGraph:
    name: str
    edges: tuple[tuple[int, int], ...]
    adjacency: np.ndarray = field(repr=False, compare=False)

    @property
    def token(self) -> str:
        return TOKENS[self.name]

    @property
    def complement(self) -> "FourGraph":
        return FOUR_GRAPHS[COMPLEMENT[self.name]]

    def is_isomorphic_to_induced(self, adjacent) -> bool:
        """True if ``adjacent(i, j)`` on positions 0..3 matches this graph under the identity map."""
        return all(bool(adjacent(i, j)) == bool(self.adjacency[i, j]) for i, j in PAIRS)


def _make(name: str, edges) -> FourGraph:
    a = np.zeros((4, 4), dtype=np.int64)
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    a.setflags(write=False)
    return FourGraph(name, tuple(edges), a)


_BASE = {
    "K4": PAIRS,
    "diamond": ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)),
    "C4": ((0, 1), (1, 2), (2, 3), (0, 3)),
    "paw": ((0, 1), (0, 2), (1, 2), (2, 3)),
    "claw": ((0, 1), (0, 2), (0, 3)),
    "P4": ((0, 1), (1, 2), (2, 3)),
}

FOUR_GRAPHS: dict[str, FourGraph] = {}
COMPLEMENT: dict[str, str] = {}
for _name, _edges in _BASE.items():
    FOUR_GRAPHS[_name] = _make(_name, _edges)
    if _name == "P4":
        COMPLEMENT["P4"] = "P4"
        continue
    _co = "co" + _name[0].upper() + _name[1:]
    FOUR_GRAPHS[_co] = _make(_co, tuple(p for p in PAIRS if p not in _edges))
    COMPLEMENT[_name], COMPLEMENT[_co] = _co, _name

TOKENS = {
    name: (("co-" + name[2:].lower()) if name.startswith("co") else name.lower())
    for name in FOUR_GRAPHS
}
_BY_TOKEN = {tok: name for name, tok in TOKENS.items()}


def four_graph(name: str) -> FourGraph:
    """Look up by canonical name (``"coPaw"``) or CLI token (``"co-paw"``)."""
    if name in FOUR_GRAPHS:
        return FOUR_GRAPHS[name]
    if name.lower() in _BY_TOKEN:
        return FOUR_GRAPHS[_BY_TOKEN[name.lower()]]
    raise InputError(f"unknown four-vertex graph {name!r}; expected one of {sorted(_BY_TOKEN)}")


def _canonical(bits: int) -> int:
    # smallest 6-bit code over all relabelings
    best = 64
    for perm in permutations(range(4)):
        code = 0
        for idx, (i, j) in enumerate(PAIRS):
            a, b = sorted((perm[i], perm[j]))
            if bits >> PAIRS.index((a, b)) & 1:
                code |= 1 << idx
        best = min(best, code)
    return best


def _pattern(g: FourGraph) -> int:
    return sum(1 << idx for idx, p in enumerate(PAIRS) if g.adjacency[p])


_CANON_NAME = {_canonical(_pattern(g)): g.name for g in FOUR_GRAPHS.values()}

# PATTERN_CLASS[bits] is the name of the graph induced by the 6-bit pattern over PAIRS
PATTERN_CLASS: tuple[str, ...] = tuple(_CANON_NAME[_canonical(b)] for b in range(64))


def classify(adjacent, vertices) -> str:
    """Name of the graph induced on four vertices by predicate ``adjacent``."""
    bits = 0
    for idx, (i, j) in enumerate(PAIRS):
        if adjacent(vertices[i], vertices[j]):
            bits |= 1 << idx
    return PATTERN_CLASS[bits]


def witness_order(h: FourGraph, adjacent, vertices) -> tuple[int, ...] | None:
    """Order ``vertices`` so that position ``i`` plays vertex ``i`` of ``h``, if possible."""
    for perm in permutations(vertices):
        if h.is_isomorphic_to_induced(lambda i, j: adjacent(perm[i], perm[j])):
            return perm
    return None
