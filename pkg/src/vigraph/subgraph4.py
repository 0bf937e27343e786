"""Induced four-vertex subgraphs: modular counting, detection, finding.

Counting uses linear identities over a handful of graph statistics (degrees,
edge codegrees, per-vertex triangle counts). Every identity is exact up to an
integer multiple of the induced ``C4`` and ``K4`` counts, which vanish modulo
the per-graph modulus ``Q_H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np
from numba import njit

from .blocks import BlockTutteMatrix, square_on_edges_array
from .decomposition import SeparatorDecomposition, build_decomposition
from .errors import InputError, InternalError
from .fourgraphs import FourGraph, four_graph, witness_order
from .graph import Graph

# modulus of the count returned by count_mod, per supported graph
Q_H = {"diamond": 6, "paw": 6, "claw": 4, "coClaw": 4, "P4": 4, "coPaw": 4, "coDiamond": 2}

BRUTE_FORCE_SIZE = 12
FIND_BUDGET_CONSTANT = 40


@dataclass(frozen=True)
class InducedEmbedding:
    """``vertices[i]`` plays vertex ``i`` of ``target``."""

    target: FourGraph
    vertices: tuple[int, int, int, int]

    def verify(self, g: Graph) -> None:
        vs = self.vertices
        if len(set(vs)) != 4:
            raise InternalError(f"embedding repeats a vertex: {vs}")
        if not self.target.is_isomorphic_to_induced(lambda i, j: g.has_edge(vs[i], vs[j])):
            raise InternalError(f"{vs} does not induce {self.target.name}")


def _embedding(g: Graph, h: FourGraph, vertices) -> InducedEmbedding:
    emb = InducedEmbedding(h, tuple(int(v) for v in vertices))
    emb.verify(g)
    return emb


def _resolve(h) -> FourGraph:
    return h if isinstance(h, FourGraph) else four_graph(h)


# -- counting ------------------------------------------------------------------

def _statistics(g: Graph, d: SeparatorDecomposition) -> dict[str, int]:
    """Non-induced counts of the four-vertex graphs with at most one cycle."""
    n, m = g.n, g.m
    deg = g.degrees
    e = g.edge_array
    codeg = square_on_edges_array(g, d)
    # per-vertex triangle count: half the diagonal of A^3
    tri_v = np.zeros(n, dtype=np.int64)
    np.add.at(tri_v, e[:, 0], codeg)
    np.add.at(tri_v, e[:, 1], codeg)
    tri_v //= 2
    triangles = int(codeg.sum()) // 3
    p2 = int((deg * (deg - 1) // 2).sum())
    stats = {
        "coDiamond": m * math.comb(max(n - 2, 0), 2),
        "coPaw": p2 * max(n - 3, 0),
        "claw": int((deg * (deg - 1) * (deg - 2) // 6).sum()),
        "coClaw": triangles * max(n - 3, 0),
        "coC4": math.comb(m, 2) - p2,
        "P4": int(((deg[e[:, 0]] - 1) * (deg[e[:, 1]] - 1)).sum()) - 3 * triangles if m else 0,
        "paw": int((tri_v * (deg - 2)).sum()),
        "diamond": int((codeg * (codeg - 1) // 2).sum()),
    }
    return stats


def count_mod(g: Graph, d: SeparatorDecomposition, h) -> tuple[int, int]:
    """Number of induced copies of ``h`` modulo ``Q_H[h]``; returns ``(residue, modulus)``."""
    h = _resolve(h)
    if h.name not in Q_H:
        raise InputError(f"count_mod does not support {h.token}; supported: {sorted(Q_H)}")
    d.check(g)
    s = _statistics(g, d)
    n1, n2, n3, n4 = s["coDiamond"], s["coPaw"], s["claw"], s["coClaw"]
    n5, n6, n7, n9 = s["coC4"], s["P4"], s["paw"], s["diamond"]
    value = {
        "diamond": n9,
        "paw": n7 - 4 * n9,
        "claw": n3 - n7 + 2 * n9,
        "coClaw": n4 - n7 + 2 * n9,
        "P4": n6 - 2 * n7 + 2 * n9,
        "coPaw": n2 - 3 * n3 - 3 * n4 - 2 * n6 + 5 * n7 - 4 * n9,
        "coDiamond": n1 - 2 * n2 + 3 * n3 + 3 * n4 - 2 * n5 + 3 * n6 - 4 * n7 + n9,
    }[h.name]
    q = Q_H[h.name]
    return value % q, q


# -- C4 and its complement -----------------------------------------------------

@njit(cache=True)
def _induced_c4(adj):
    """Induced C4 in a dense 0/1 matrix as (a, b, c, d) in cycle order, or all -1."""
    n = adj.shape[0]
    common = np.empty(n, dtype=np.int64)
    for x in range(n):
        for y in range(x + 1, n):
            if adj[x, y]:
                continue
            c = 0
            for w in range(n):
                if adj[x, w] and adj[y, w]:
                    common[c] = w
                    c += 1
            for i in range(c):
                for j in range(i + 1, c):
                    if not adj[common[i], common[j]]:
                        return x, common[i], y, common[j]
    return -1, -1, -1, -1


def _dense_c4(g: Graph, vertices, complement: bool) -> Optional[tuple[int, ...]]:
    sub, labels = g.induced_subgraph(vertices)
    a = sub.dense(dtype=np.int64)
    if complement:
        a = 1 - a
        np.fill_diagonal(a, 0)
    hit = _induced_c4(a)
    if hit[0] < 0:
        return None
    return tuple(labels[i] for i in hit)


def _pair_counts(blocks: BlockTutteMatrix, i: int) -> np.ndarray:
    beta = blocks.betas[i].astype(np.float64)
    return np.rint(beta @ beta.T).astype(np.int64)


def detect_c4(g: Graph, d: SeparatorDecomposition) -> Optional[InducedEmbedding]:
    d.check(g)
    h = four_graph("C4")
    sep = list(d.separator)
    for part in d.parts or [()]:
        hit = _dense_c4(g, sep + list(part), complement=False)
        if hit:
            return _embedding(g, h, hit)
    if len(sep) < 2 or d.nu < 2:
        return None
    blocks = BlockTutteMatrix.adjacency(g, d)
    nonadj = blocks.gamma == 0
    np.fill_diagonal(nonadj, False)
    first = np.full((len(sep), len(sep)), -1, dtype=np.int64)
    for i in range(d.nu):
        shared = (_pair_counts(blocks, i) > 0) & nonadj
        second = shared & (first >= 0)
        if second.any():
            a, b = map(int, np.argwhere(second)[0])
            j = int(first[a, b])
            u, w = sep[a], sep[b]
            x = next(t for t in d.parts[j] if g.has_edge(u, t) and g.has_edge(w, t))
            y = next(t for t in d.parts[i] if g.has_edge(u, t) and g.has_edge(w, t))
            return _embedding(g, h, (u, x, w, y))
        first[shared & (first < 0)] = i
    return None


def detect_co_c4(g: Graph, d: SeparatorDecomposition) -> Optional[InducedEmbedding]:
    d.check(g)
    h = four_graph("coC4")
    sep = list(d.separator)
    inner_edges = []
    for i, part in enumerate(d.parts):
        members = set(part)
        edge = next(((u, w) for u in part for w in g.adjacency[u] if w > u and w in members), None)
        if edge:
            inner_edges.append((i, edge))
            if len(inner_edges) == 2:
                (_, (a, b)), (_, (c, e)) = inner_edges
                return _embedding(g, h, (a, c, b, e))
    anchor = inner_edges[0][0] if inner_edges else 0
    if d.nu <= 1:
        hit = _dense_c4(g, sep + [v for p in d.parts for v in p], complement=True)
        return _embedding(g, h, hit) if hit else None
    for i in range(d.nu):
        if i == anchor:
            continue
        hit = _dense_c4(g, sep + list(d.parts[anchor]) + list(d.parts[i]), complement=True)
        if hit:
            return _embedding(g, h, hit)
    # private neighbours of two non-adjacent separator vertices in different parts
    if len(sep) < 2:
        return None
    blocks = BlockTutteMatrix.adjacency(g, d)
    nonadj = blocks.gamma == 0
    np.fill_diagonal(nonadj, False)
    k = len(sep)
    own = np.zeros((k, k), dtype=np.int64)  # parts where the row vertex has a private neighbour
    either = np.zeros((k, k), dtype=np.int64)
    witness_part = np.full((k, k), -1, dtype=np.int64)
    for i in range(d.nu):
        deg_i = blocks.betas[i].sum(axis=1)
        private = deg_i[:, None] > _pair_counts(blocks, i)
        own += private
        either += private | private.T
        witness_part[private & (witness_part < 0)] = i
    ok = nonadj & (own >= 1) & (own.T >= 1) & (either >= 2)
    if not ok.any():
        return None
    a, b = map(int, np.argwhere(ok)[0])
    u, v = sep[a], sep[b]

    def private_in(x, y, i):
        return [t for t in d.parts[i] if g.has_edge(x, t) and not g.has_edge(y, t)]

    for i in range(d.nu):
        xs = private_in(u, v, i)
        if not xs:
            continue
        for j in range(d.nu):
            if j == i:
                continue
            ys = private_in(v, u, j)
            if ys:
                return _embedding(g, h, (u, v, xs[0], ys[0]))
    raise InternalError("private-neighbour counts disagree with the witness search")


# -- randomized detection ------------------------------------------------------

def amplification_rounds(failure_prob: float) -> int:
    return math.ceil(math.log(1 / failure_prob) / math.log(16 / 15))


def _check_h(h: FourGraph) -> None:
    if h.name in ("K4", "coK4"):
        raise InputError(f"{h.token} is only available through detect_clique / detect_independent_set")


def detect_induced(
    g: Graph,
    d: SeparatorDecomposition,
    h,
    failure_prob: float = 0.05,
    seed: int = 0,
) -> bool:
    """One-sided test for an induced copy of ``h``.

    ``True`` is always correct. Besides a round on ``g`` itself, each of the
    random rounds keeps every vertex with probability 1/2 and checks the
    residue of the induced count.
    """
    h = _resolve(h)
    _check_h(h)
    if not 0 < failure_prob < 1:
        raise InputError(f"failure probability must lie in (0, 1), got {failure_prob}")
    if h.name == "C4":
        return detect_c4(g, d) is not None
    if h.name == "coC4":
        return detect_co_c4(g, d) is not None
    if g.n < 4:
        return False
    if count_mod(g, d, h)[0]:
        return True
    rounds = amplification_rounds(failure_prob)
    sep = set(d.separator)
    for r in range(rounds):
        keep = np.flatnonzero(np.random.default_rng([seed, r]).random(g.n) < 0.5)
        if len(keep) < 4:
            continue
        sub, labels = g.induced_subgraph(keep.tolist())
        sub_sep = [i for i, v in enumerate(labels) if v in sep]
        sd = build_decomposition(sub, sub_sep, d.k)
        if count_mod(sub, sd, h)[0]:
            return True
    return False


# -- finding by self-reduction -------------------------------------------------

def _brute_force(g: Graph, h: FourGraph, vertices) -> Optional[tuple[int, ...]]:
    for quad in combinations(sorted(vertices), 4):
        order = witness_order(h, g.has_edge, quad)
        if order is not None:
            return order
    return None


def _find_once(g: Graph, d: SeparatorDecomposition, h: FourGraph, rng: np.random.Generator):
    def detect(vertices) -> bool:
        sub, labels = g.induced_subgraph(vertices)
        sep = set(d.separator)
        sd = build_decomposition(sub, [i for i, v in enumerate(labels) if v in sep], d.k)
        return detect_induced(sub, sd, h, 0.25, int(rng.integers(2**63)))

    current = list(range(g.n))
    if not detect(current):
        return None
    budget = 4 * FIND_BUDGET_CONSTANT * g.n
    spent = g.n
    while len(current) > BRUTE_FORCE_SIZE:
        chunks = np.array_split(np.array(current), 5)
        found = False
        i = 0
        while not found:
            rest = np.setdiff1d(current, chunks[i % 5]).tolist()
            spent += len(rest)
            if spent > budget:
                return None
            if detect(rest):
                current = rest
                found = True
            i += 1
    return _brute_force(g, h, current)


def find_induced(
    g: Graph,
    d: SeparatorDecomposition,
    h,
    failure_prob: float = 0.05,
    seed: int = 0,
) -> Optional[InducedEmbedding]:
    """An induced copy of ``h`` or None; a returned copy is always genuine.

    Repeats a self-reduction with error at most 1/2, so that the overall
    probability of missing an existing copy is at most ``failure_prob``.
    """
    h = _resolve(h)
    _check_h(h)
    if not 0 < failure_prob < 1:
        raise InputError(f"failure probability must lie in (0, 1), got {failure_prob}")
    d.check(g)
    if g.n < 4:
        return None
    repeats = max(1, math.ceil(math.log2(1 / failure_prob)))
    for r in range(repeats):
        hit = _find_once(g, d, h, np.random.default_rng([seed, r]))
        if hit is not None:
            return _embedding(g, h, hit)
    return None


# -- cliques and independent sets ----------------------------------------------

def _clique_in(adj_masks: dict[int, int], candidates: int, size: int) -> Optional[list[int]]:
    if size == 0:
        return []
    while candidates:
        if bin(candidates).count("1") < size:
            return None
        v = candidates.bit_length() - 1
        candidates &= ~(1 << v)
        rest = _clique_in(adj_masks, candidates & adj_masks[v], size - 1)
        if rest is not None:
            return rest + [v]
    return None


def _find_clique(g: Graph, vertices, size: int, complement: bool = False) -> Optional[list[int]]:
    vs = sorted(vertices)
    members = 0
    for v in vs:
        members |= 1 << v
    masks = {}
    for v in vs:
        nb = 0
        for w in g.adjacency[v]:
            nb |= 1 << w
        masks[v] = (members & ~nb & ~(1 << v)) if complement else (members & nb)
    found = _clique_in(masks, members, size)
    return sorted(found) if found is not None else None


def find_clique(g: Graph, d: SeparatorDecomposition, ell: int) -> Optional[list[int]]:
    if ell < 1:
        raise InputError(f"clique size must be positive, got {ell}")
    d.check(g)
    sep = list(d.separator)
    for part in d.parts or [()]:
        found = _find_clique(g, sep + list(part), ell)
        if found is not None:
            return found
    return None


def detect_clique(g: Graph, d: SeparatorDecomposition, ell: int) -> bool:
    return find_clique(g, d, ell) is not None


def find_independent_set(g: Graph, d: SeparatorDecomposition, ell: int) -> Optional[list[int]]:
    if ell < 1:
        raise InputError(f"independent set size must be positive, got {ell}")
    d.check(g)
    if ell > g.n:
        return None
    comps = g.components(d.separator)
    if (d.k and g.n >= d.k * ell) or len(comps) >= ell:
        # n >= k * ell forces at least ell components of G - S
        return sorted(c[0] for c in comps[:ell])
    return _find_clique(g, range(g.n), ell, complement=True)


def detect_independent_set(g: Graph, d: SeparatorDecomposition, ell: int) -> bool:
    return find_independent_set(g, d, ell) is not None
