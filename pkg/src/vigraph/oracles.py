"""Brute-force reference implementations used to certify the fast paths.

Everything here favours obviousness over speed and shares no code with the
separator-based algorithms beyond the ``Graph`` type.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np
from numba import njit

from .errors import InputError
from .fourgraphs import FOUR_GRAPHS, PAIRS, PATTERN_CLASS, FourGraph
from .graph import Graph, PlantedInstance, generate_planted

UNREACHABLE = np.iinfo(np.int64).max // 4


# -- cycles --------------------------------------------------------------------

def _bfs_layers(g: Graph, root: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    return dist, parent


def oracle_girth(g: Graph) -> Optional[int]:
    """Shortest cycle length via BFS from every vertex, or None for forests."""
    best = None
    for root in range(g.n):
        dist, parent = _bfs_layers(g, root)
        for u, v in g.edges:
            if dist[u] < 0 or parent[u] == v or parent[v] == u:
                continue
            length = dist[u] + dist[v] + 1
            if best is None or length < best:
                best = length
    return best


def _has_cycle_of_length(g: Graph, length: int) -> bool:
    # DFS for a simple cycle whose smallest vertex is the start
    adj = g.adjacency
    for start in range(g.n):
        on_path = [False] * g.n
        on_path[start] = True

        def extend(x: int, depth: int) -> bool:
            for y in adj[x]:
                if y == start and depth == length and length >= 3:
                    return True
                if y <= start or on_path[y] or depth >= length:
                    continue
                on_path[y] = True
                if extend(y, depth + 1):
                    return True
                on_path[y] = False
            return False

        if extend(start, 1):
            return True
    return False


def oracle_cycle_lengths(g: Graph, lengths) -> dict[int, bool]:
    return {ell: _has_cycle_of_length(g, ell) for ell in lengths}


def oracle_even_girth(g: Graph) -> Optional[int]:
    """Shortest even cycle by exhaustive search over increasing lengths."""
    for length in range(4, g.n + 1, 2):
        if _has_cycle_of_length(g, length):
            return length
    return None


def oracle_girth_enumerate(g: Graph) -> Optional[int]:
    for length in range(3, g.n + 1):
        if _has_cycle_of_length(g, length):
            return length
    return None


def is_cycle(g: Graph, vertices) -> bool:
    vs = list(vertices)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


# -- induced four-vertex census ------------------------------------------------

def oracle_census(g: Graph) -> dict[str, int]:
    """Induced counts of all eleven four-vertex graphs by enumerating 4-subsets."""
    counts = dict.fromkeys(FOUR_GRAPHS, 0)
    if g.n < 4:
        return counts
    a = g.dense(dtype=np.int64)
    quads = np.array(list(itertools.combinations(range(g.n), 4)), dtype=np.int64)
    bits = np.zeros(len(quads), dtype=np.int64)
    for idx, (i, j) in enumerate(PAIRS):
        bits |= a[quads[:, i], quads[:, j]] << idx
    hist = np.bincount(bits, minlength=64)
    for pattern, c in enumerate(hist):
        counts[PATTERN_CLASS[pattern]] += int(c)
    return counts


def oracle_count_induced(g: Graph, h: FourGraph) -> int:
    return oracle_census(g)[h.name]


def oracle_count_induced_by_permutation(g: Graph, h: FourGraph) -> int:
    """Second census: test each 4-subset against ``h`` under all 24 relabelings."""
    total = 0
    for quad in itertools.combinations(range(g.n), 4):
        for perm in itertools.permutations(quad):
            if all(g.has_edge(perm[i], perm[j]) == bool(h.adjacency[i, j]) for i, j in PAIRS):
                total += 1
                break
    return total


def is_induced_copy(g: Graph, h: FourGraph, vertices) -> bool:
    vs = list(vertices)
    if len(vs) != 4 or len(set(vs)) != 4 or not all(0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(vs[i], vs[j]) == bool(h.adjacency[i, j]) for i, j in PAIRS)


# -- matching ------------------------------------------------------------------

@njit(cache=True)
def _matching_dp(n, nbr_mask):
    size = 1 << n
    best = np.zeros(size, dtype=np.int8)
    for mask in range(1, size):
        low = 0
        while not (mask >> low) & 1:
            low += 1
        rest = mask ^ (1 << low)
        b = best[rest]
        cand = nbr_mask[low] & rest
        w = 0
        while cand:
            if cand & 1:
                v = best[rest ^ (1 << w)] + 1
                if v > b:
                    b = v
            cand >>= 1
            w += 1
        best[mask] = b
    return best


def oracle_matching_dp(g: Graph) -> list[tuple[int, int]]:
    """Maximum matching by dynamic programming over vertex subsets (n <= 22)."""
    if g.n > 22:
        raise InputError(f"subset DP supports n <= 22, got {g.n}")
    if g.n == 0:
        return []
    nbr = np.array([sum(1 << w for w in g.adjacency[v]) for v in range(g.n)], dtype=np.int64)
    best = _matching_dp(g.n, nbr)
    mask = (1 << g.n) - 1
    out = []
    while mask:
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        if best[mask] == best[rest]:
            mask = rest
            continue
        for w in g.adjacency[low]:
            if rest >> w & 1 and best[rest ^ (1 << w)] + 1 == best[mask]:
                out.append((low, w))
                mask = rest ^ (1 << w)
                break
    return sorted(out)


def oracle_matching_blossom(g: Graph) -> list[tuple[int, int]]:
    """Edmonds' blossom algorithm, O(n^3)."""
    n = g.n
    adj = g.adjacency
    match = [-1] * n

    def augment_from(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] < 0:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        x = to
                        while x >= 0:
                            px = parent[x]
                            nxt = match[px]
                            match[x] = px
                            match[px] = x
                            x = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] < 0:
            augment_from(v)
    return sorted((u, match[u]) for u in range(n) if match[u] > u)


def oracle_max_matching(g: Graph) -> list[tuple[int, int]]:
    if g.n <= 22:
        return oracle_matching_dp(g)
    if g.n > 200:
        raise InputError(f"matching oracle supports n <= 200, got {g.n}")
    return oracle_matching_blossom(g)


def is_matching(g: Graph, edges, perfect: bool = False) -> bool:
    seen = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return len(seen) == g.n if perfect else True


# -- shortest paths ------------------------------------------------------------

def oracle_apsp(g: Graph) -> np.ndarray:
    """Hop distances by BFS from every vertex; ``UNREACHABLE`` across components."""
    out = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    for root in range(g.n):
        dist, _ = _bfs_layers(g, root)
        row = np.array(dist, dtype=np.int64)
        out[root] = np.where(row < 0, UNREACHABLE, row)
    return out


def oracle_apsp_floyd(g: Graph) -> np.ndarray:
    d = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in g.edges:
        d[u, v] = d[v, u] = 1
    for k in range(g.n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return np.minimum(d, UNREACHABLE)


def oracle_weighted_apsp(weights: np.ndarray) -> np.ndarray:
    """Dijkstra from every vertex of a weighted graph given as a matrix.

    Off-diagonal entries equal to ``UNREACHABLE`` mean "no edge".
    """
    w = np.asarray(weights, dtype=np.int64)
    n = w.shape[0]
    out = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for src in range(n):
        dist = [UNREACHABLE] * n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v in range(n):
                if v != u and w[u, v] < UNREACHABLE and du + w[u, v] < dist[v]:
                    dist[v] = du + int(w[u, v])
                    heapq.heappush(heap, (dist[v], v))
        out[src] = dist
    return out


# -- corpora -------------------------------------------------------------------

def enumerate_all_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on ``n <= 6`` vertices."""
    if not 0 <= n <= 6:
        raise InputError(f"exhaustive enumeration supports 0 <= n <= 6, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (p for i, p in enumerate(pairs) if mask >> i & 1))


@dataclass(frozen=True)
class Corpus:
    """Deterministic family of planted instances.

    Each seed in ``seeds`` fixes ``n`` in ``[n_min, n_max]``, the separator
    and component sizes, and the edge probabilities.
    """

    name: str
    seeds: range
    n_min: int
    n_max: int
    connected_bias: float = 0.5

    def instances(self):
        make = GENERATORS.get(self.name)
        if make is None:
            raise InputError(f"unknown generator {self.name!r}; expected one of {sorted(GENERATORS)}")
        for seed in self.seeds:
            yield make(seed, self.n_min, self.n_max, self.connected_bias)

    def to_text(self) -> str:
        return (
            f"generator {self.name}\nseeds {self.seeds.start} {self.seeds.stop}\n"
            f"n {self.n_min} {self.n_max}\nbias {self.connected_bias}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "Corpus":
        fields = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            parts = line.split()
            if not parts:
                continue
            fields[parts[0]] = (parts[1:], lineno)
        try:
            name = fields["generator"][0][0]
            s0, s1 = map(int, fields["seeds"][0])
            n0, n1 = map(int, fields["n"][0])
            bias = float(fields["bias"][0][0]) if "bias" in fields else 0.5
        except (KeyError, ValueError, IndexError):
            raise InputError("corpus manifest needs 'generator', 'seeds a b' and 'n lo hi' lines") from None
        return cls(name, range(s0, s1), n0, n1, bias)

    @classmethod
    def read(cls, path) -> "Corpus":
        return cls.from_text(Path(path).read_text())


def planted_case(seed: int, n_min: int, n_max: int, connected_bias: float = 0.5):
    """One planted instance with parameters drawn from ``seed``."""
    rng = np.random.default_rng([seed, n_min, n_max])
    n = int(rng.integers(n_min, n_max + 1))
    sep = int(rng.integers(0, max(1, n // 4) + 1))
    comp = int(rng.integers(1, max(1, min(n - sep, 12)) + 1)) if n > sep else 0
    p_in = float(rng.choice([0.2, 0.35, 0.5, 0.8]))
    p_cross = float(rng.choice([0.0, 0.05, 0.15, 0.3])) if rng.random() > connected_bias / 4 else 0.0
    p_sep = float(rng.choice([0.0, 0.2, 0.5]))
    return generate_planted(n, sep, comp, p_in, p_cross, seed, edge_prob_sep=p_sep)


def matchable_case(seed: int, n_min: int, n_max: int, connected_bias: float = 0.5):
    """A planted instance with a perfect matching added on top.

    Vertices are paired inside components of ``G - S`` first, then odd
    leftovers with separator vertices, then separator vertices with each
    other. Vertices that cannot be paired are deleted, which keeps the
    separator valid for the same ``k``.
    """
    base = planted_case(seed, n_min, n_max, connected_bias)
    g, sep = base.graph, list(base.separator)
    pairs, leftovers = [], []
    for comp in g.components(sep):
        for i in range(0, len(comp) - 1, 2):
            pairs.append((comp[i], comp[i + 1]))
        if len(comp) % 2:
            leftovers.append(comp[-1])
    free_sep = list(sep)
    while leftovers and free_sep:
        pairs.append((leftovers.pop(), free_sep.pop()))
    while len(free_sep) >= 2:
        pairs.append((free_sep.pop(), free_sep.pop()))
    dropped = set(leftovers) | set(free_sep)
    keep = [v for v in range(g.n) if v not in dropped]
    full = Graph(g.n, list(g.edges) + pairs)
    sub, labels = full.induced_subgraph(keep)
    index = {v: i for i, v in enumerate(labels)}
    new_sep = tuple(sorted(index[v] for v in sep if v in index))
    return PlantedInstance(sub, new_sep, base.k, seed)


def _side_map(inst: PlantedInstance) -> np.ndarray:
    """Component id of every vertex of ``G - S``; separator vertices get -1."""
    side = np.full(inst.graph.n, -1, dtype=np.int64)
    for c, comp in enumerate(inst.graph.components(inst.separator)):
        side[comp] = c
    return side


def plant_cycle(inst: PlantedInstance, ell: int, seed: int, attempts: int = 50) -> Optional[PlantedInstance]:
    """Add the edges of an ``ell``-cycle without breaking the planted separator.

    The cycle alternates between separator vertices and runs of vertices taken
    from a single component, so no added edge joins two components.
    """
    g, sep = inst.graph, list(inst.separator)
    side = _side_map(inst)
    comps = [list(map(int, np.flatnonzero(side == c))) for c in range(int(side.max()) + 1)]
    rng = np.random.default_rng([seed, ell])
    for _ in range(attempts):
        r = int(rng.integers(0, min(len(sep), ell) + 1))
        if r == 0:
            big = [c for c in comps if len(c) >= ell]
            if not big:
                continue
            cyc = [int(v) for v in rng.permutation(big[int(rng.integers(len(big)))])[:ell]]
        else:
            hubs = [int(v) for v in rng.permutation(sep)[:r]]
            cuts = np.sort(rng.integers(0, ell - r + 1, size=r - 1))
            gaps = np.diff(np.concatenate([[0], cuts, [ell - r]]))
            pool = [list(rng.permutation(c)) for c in comps]
            cyc = []
            for hub, gap in zip(hubs, gaps):
                cyc.append(hub)
                if gap == 0:
                    continue
                fits = [c for c in pool if len(c) >= gap]
                if not fits:
                    break
                chosen = fits[int(rng.integers(len(fits)))]
                cyc.extend(int(chosen.pop()) for _ in range(gap))
            if len(cyc) != ell:
                continue
        extra = [(cyc[i], cyc[(i + 1) % ell]) for i in range(ell)]
        return PlantedInstance(Graph(g.n, list(g.edges) + extra), inst.separator, inst.k, inst.seed)
    return None


def plant_induced(inst: PlantedInstance, h: FourGraph, seed: int, attempts: int = 200) -> Optional[PlantedInstance]:
    """Overwrite the adjacency of four vertices so they induce ``h``.

    Only vertex pairs inside ``S`` plus one component may gain an edge, which
    keeps the planted separator valid.
    """
    g = inst.graph
    if g.n < 4:
        return None
    side = _side_map(inst)
    rng = np.random.default_rng([seed, len(h.edges), int(h.adjacency.sum())])
    for _ in range(attempts):
        quad = [int(v) for v in rng.choice(g.n, size=4, replace=False)]
        ok = all(side[quad[i]] < 0 or side[quad[j]] < 0 or side[quad[i]] == side[quad[j]] for i, j in h.edges)
        if not ok:
            continue
        pairs = {(min(quad[i], quad[j]), max(quad[i], quad[j])) for i, j in PAIRS}
        edges = [e for e in g.edges if e not in pairs]
        edges += [(quad[i], quad[j]) for i, j in h.edges]
        return PlantedInstance(Graph(g.n, edges), inst.separator, inst.k, inst.seed)
    return None


GENERATORS = {"planted": planted_case, "matchable": matchable_case}
