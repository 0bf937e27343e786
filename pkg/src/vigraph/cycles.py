"""Girth, even girth and fixed-length cycles with a separator decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .decomposition import SEPARATOR, SeparatorDecomposition, build_decomposition
from .errors import InputError, InternalError
from .graph import Graph

MAX_CYCLE_LENGTH = 8


@dataclass(frozen=True)
class CycleReport:
    length: int
    vertices: tuple[int, ...]
    kind: str

    def verify(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) != self.length or self.length < 3 or len(set(vs)) != len(vs):
            raise InternalError(f"malformed cycle {vs}")
        for i in range(len(vs)):
            if not g.has_edge(vs[i], vs[(i + 1) % len(vs)]):
                raise InternalError(f"cycle {vs} uses non-edge {vs[i]}-{vs[(i + 1) % len(vs)]}")
        if self.kind == "even-girth" and self.length % 2:
            raise InternalError(f"even-girth report of odd length {self.length}")


def _report(g: Graph, vertices, kind: str) -> CycleReport:
    rep = CycleReport(len(vertices), tuple(int(v) for v in vertices), kind)
    rep.verify(g)
    return rep


def _csr_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    return g.csr_arrays


def _cycle_from_tree(parent: np.ndarray, x: int, y: int) -> list[int]:
    """Cycle closed by the non-tree edge ``xy`` in a BFS forest."""
    path_x = [x]
    while parent[path_x[-1]] >= 0:
        path_x.append(int(parent[path_x[-1]]))
    on_x = {v: i for i, v in enumerate(path_x)}
    path_y = [y]
    while path_y[-1] not in on_x:
        path_y.append(int(parent[path_y[-1]]))
    meet = on_x[path_y[-1]]
    return path_x[: meet + 1] + path_y[-2::-1]


# -- kernels -------------------------------------------------------------------

@njit(cache=True)
def _group_girth(indptr, indices, group, roots):
    """Exact girth of each group's induced subgraph, minimised over all groups.

    BFS from every root stays inside ``group[root]``; returns
    ``(length, root, x, y)`` with ``xy`` the closing non-tree edge, or length -1.
    """
    n = len(group)
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    best, best_root, best_x, best_y = -1, -1, -1, -1
    for r in roots:
        gr = group[r]
        head, tail = 0, 1
        queue[0] = r
        dist[r] = 0
        stop = False
        while head < tail and not stop:
            x = queue[head]
            head += 1
            if best >= 0 and 2 * dist[x] + 1 >= best:
                break
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if group[y] != gr:
                    continue
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue[tail] = y
                    tail += 1
                elif y != parent[x]:
                    length = dist[x] + dist[y] + 1
                    if best < 0 or length < best:
                        best, best_root, best_x, best_y = length, r, x, y
                        if best == 3:
                            stop = True
                            break
        for i in range(tail):
            dist[queue[i]] = -1
            parent[queue[i]] = -1
    return best, best_root, best_x, best_y


@njit(cache=True)
def _truncated_probe(indptr, indices, v):
    """BFS from ``v`` that stops at the first non-tree edge met.

    Returns ``(x, y, dist, parent)`` with ``x = -1`` if the component of ``v``
    is a tree. All vertices up to the depth of ``x`` carry final distances.
    """
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head, tail = 0, 1
    queue[0] = v
    dist[v] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue[tail] = y
                tail += 1
            elif y != parent[x]:
                return x, y, dist, parent
    return -1, -1, dist, parent


@njit(cache=True)
def _bounded_bfs(indptr, indices, allowed, start):
    n = len(allowed)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head, tail = 0, 1
    queue[0] = start
    dist[start] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            if allowed[y] and dist[y] < 0:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1
    return dist


@njit(cache=True)
def _cycle_through(indptr, indices, allowed, dist, start, length):
    """Simple cycle of exactly ``length`` vertices through ``start`` inside ``allowed``.

    Depth-first with the pruning ``dist[y] <= length - depth``. Returns the
    vertex sequence or an empty array.
    """
    path = np.empty(length, dtype=np.int64)
    cursor = np.empty(length, dtype=np.int64)
    on_path = np.zeros(len(allowed), dtype=np.bool_)
    path[0] = start
    cursor[0] = indptr[start]
    on_path[start] = True
    depth = 0
    while depth >= 0:
        x = path[depth]
        advanced = False
        while cursor[depth] < indptr[x + 1]:
            y = indices[cursor[depth]]
            cursor[depth] += 1
            if depth == length - 1:
                if y == start:
                    return path.copy()
                continue
            if not allowed[y] or on_path[y] or dist[y] < 0 or dist[y] > length - depth - 1:
                continue
            depth += 1
            path[depth] = y
            cursor[depth] = indptr[y]
            on_path[y] = True
            advanced = True
            break
        if not advanced:
            on_path[path[depth]] = False
            depth -= 1
    return np.empty(0, dtype=np.int64)


# -- girth ---------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    cycle: Optional[tuple[int, ...]]
    walk_length: int
    dist: np.ndarray
    parent: np.ndarray

    def layer(self, depth: int) -> np.ndarray:
        return np.flatnonzero(self.dist == depth)


def bfs_cycle_probe(g: Graph, v: int) -> ProbeResult:
    """Truncated BFS from ``v``.

    Stops at the first non-tree edge; the returned cycle closes that edge
    through the BFS tree and has length at most ``walk_length``. Distances
    are final up to the depth at which the search stopped.
    """
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    indptr, indices = _csr_arrays(g)
    x, y, dist, parent = _truncated_probe(indptr, indices, v)
    if x < 0:
        return ProbeResult(None, -1, dist, parent)
    cycle = _cycle_from_tree(parent, int(x), int(y))
    return ProbeResult(tuple(cycle), int(dist[x] + dist[y] + 1), dist, parent)


def _triangle_in_parts(g: Graph, sep: list[int], parts) -> Optional[list[int]]:
    for part in parts:
        verts = sep + list(part)
        if len(verts) < 3:
            continue
        sub, labels = g.induced_subgraph(verts)
        a = sub.dense(dtype=np.float64)
        closing = (a @ a) * a
        hit = np.argwhere(closing > 0)
        if len(hit):
            u, w = hit[0]
            mid = int(np.flatnonzero(a[u] * a[w])[0])
            return [labels[u], labels[w], labels[mid]]
    return None


def find_triangle(g: Graph, d: SeparatorDecomposition) -> Optional[CycleReport]:
    """Every triangle lies inside some ``G[S + T_i]``; dense test per part."""
    parts = d.parts if d.parts else [()]
    tri = _triangle_in_parts(g, list(d.separator), parts)
    return _report(g, tri, "girth") if tri else None


def girth(g: Graph, d: SeparatorDecomposition) -> Optional[CycleReport]:
    """Shortest cycle, or None for a forest."""
    d.check(g)
    tri = find_triangle(g, d)
    if tri is not None:
        return tri
    indptr, indices = _csr_arrays(g)
    best: Optional[list[int]] = None

    # cycles inside a single part
    inner = np.flatnonzero(d.part_of != SEPARATOR)
    length, root, x, y = _group_girth(indptr, indices, d.part_of, inner)
    if length > 0:
        # re-run from the winning root to recover its BFS tree
        parent = _group_tree(indptr, indices, d.part_of, root)
        best = _cycle_from_tree(parent, int(x), int(y))

    # cycles meeting the separator
    probes: dict[int, ProbeResult] = {}
    for v in d.separator:
        res = bfs_cycle_probe(g, v)
        if res.cycle is not None:
            probes[v] = res
    if probes:
        l_min = min(len(r.cycle) for r in probes.values())
        if best is None or l_min < len(best):
            winner = min(v for v, r in probes.items() if len(r.cycle) == l_min)
            best = list(probes[winner].cycle)
            if l_min % 2 == 0:
                shorter = _odd_refinement(g, d, probes, l_min)
                if shorter is not None:
                    best = shorter
    return _report(g, best, "girth") if best is not None else None


@njit(cache=True)
def _group_tree(indptr, indices, group, root):
    n = len(group)
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head, tail = 0, 1
    queue[0] = root
    dist[root] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            if group[y] == group[root] and dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue[tail] = y
                tail += 1
    return parent


def _odd_refinement(g: Graph, d: SeparatorDecomposition, probes, l_min: int) -> Optional[list[int]]:
    """Decide between ``l_min`` and ``l_min - 1`` with a triangle test.

    Each ``v`` with ``len(cycle) == l_min`` gets a new vertex joined to all
    vertices at distance ``(l_min - 2) // 2`` from ``v``; ``G`` itself is
    triangle-free here, so any triangle uses a new vertex.
    """
    depth = (l_min - 2) // 2
    chosen = sorted(v for v, r in probes.items() if len(r.cycle) == l_min)
    extra = []
    owner = {}
    for j, v in enumerate(chosen):
        star = g.n + j
        owner[star] = v
        for w in probes[v].layer(depth).tolist():
            extra.append((star, w))
    h = Graph(g.n + len(chosen), list(g.edges) + extra)
    hd = build_decomposition(h, list(d.separator) + sorted(owner), d.k + len(chosen))
    tri = _triangle_in_parts(h, list(hd.separator), hd.parts if hd.parts else [()])
    if tri is None:
        return None
    star = next(t for t in tri if t >= g.n)
    a, b = (t for t in tri if t != star)
    cycle = _cycle_from_tree(probes[owner[star]].parent, a, b)
    if len(cycle) != l_min - 1:
        raise InternalError(f"refinement produced a cycle of length {len(cycle)}, expected {l_min - 1}")
    return cycle


# -- even girth ----------------------------------------------------------------

def _cyclic_blocks_sizes(g: Graph) -> list[tuple[int, int]]:
    """(vertices, edges) of every biconnected block with at least one cycle."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    edge_stack: list[tuple[int, int]] = []
    out = []
    adj = g.adjacency
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, px, it = stack[-1]
            advanced = False
            for y in it:
                if disc[y] < 0:
                    disc[y] = low[y] = timer
                    timer += 1
                    edge_stack.append((x, y))
                    stack.append((y, x, iter(adj[y])))
                    advanced = True
                    break
                if y != px and disc[y] < disc[x]:
                    edge_stack.append((x, y))
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    block_edges = []
                    while True:
                        e = edge_stack.pop()
                        block_edges.append(e)
                        if e == (p, x):
                            break
                    if len(block_edges) > 1:
                        verts = {v for e in block_edges for v in e}
                        out.append((len(verts), len(block_edges)))
    return out


def _even_cycle_bound(g: Graph) -> int:
    """Upper bound on the even-cycle length to search; 0 if no even cycle exists.

    A graph has no even cycle iff each block is an edge or an odd cycle.
    """
    bound = 0
    for nv, ne in _cyclic_blocks_sizes(g):
        if ne == nv and nv % 2 == 1:
            continue
        bound = max(bound, nv if nv % 2 == 0 else nv - 1)
    return bound


def even_girth(g: Graph, d: SeparatorDecomposition) -> Optional[CycleReport]:
    """Shortest even cycle, or None if every block is an edge or an odd cycle.

    Lengths are tried in increasing order; for each length the parts are
    searched first (cycles whose smallest vertex lies in ``T_i``), then cycles
    through each separator vertex.
    """
    d.check(g)
    bound = _even_cycle_bound(g)
    if bound < 4:
        return None
    indptr, indices = _csr_arrays(g)
    sep = list(d.separator)
    in_part = [np.flatnonzero(d.part_of == i) for i in range(d.nu)]
    # distances for pruning: per separator vertex over the whole graph
    everywhere = np.ones(g.n, dtype=np.bool_)
    sep_dist = {s: _bounded_bfs(indptr, indices, everywhere, s) for s in sep}
    part_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def part_start(t: int, i: int):
        if t not in part_cache:
            allowed = (d.part_of == i) & (np.arange(g.n) >= t)
            part_cache[t] = (allowed, _bounded_bfs(indptr, indices, allowed, t))
        return part_cache[t]

    for length in range(4, bound + 1, 2):
        for i, verts in enumerate(in_part):
            if len(verts) < length:
                continue
            for t in verts.tolist():
                allowed, dist = part_start(t, i)
                cyc = _cycle_through(indptr, indices, allowed, dist, t, length)
                if len(cyc):
                    return _report(g, cyc.tolist(), "even-girth")
        allowed = np.ones(g.n, dtype=np.bool_)
        for s in sep:
            # whole-graph distances stay valid lower bounds after removals
            cyc = _cycle_through(indptr, indices, allowed, sep_dist[s], s, length)
            if len(cyc):
                return _report(g, cyc.tolist(), "even-girth")
            # cycles through s are exhausted for this length
            allowed[s] = False
    return None


# -- fixed-length cycles by colour coding --------------------------------------

@njit(cache=True)
def _colourful_part_cycle(indptr, indices, part_of, colour, ell, part_verts, part_ptr, local):
    """A colourful ell-cycle inside one part: return its colour-0 start, or -1."""
    full = (1 << ell) - 1
    for i in range(len(part_ptr) - 1):
        lo, hi = part_ptr[i], part_ptr[i + 1]
        size = hi - lo
        if size < ell:
            continue
        reach = np.zeros((size, 1 << ell), dtype=np.bool_)
        for a in range(lo, hi):
            s = part_verts[a]
            if colour[s] != 0:
                continue
            reach[:, :] = False
            reach[local[s], 1] = True
            for mask in range(1, full + 1):
                if not mask & 1:
                    continue
                for b in range(lo, hi):
                    x = part_verts[b]
                    if not reach[local[x], mask]:
                        continue
                    for p in range(indptr[x], indptr[x + 1]):
                        y = indices[p]
                        if part_of[y] != i:
                            continue
                        if y == s and mask == full:
                            return s
                        bit = 1 << colour[y]
                        if mask & bit == 0:
                            reach[local[y], mask | bit] = True
    return -1


@njit(cache=True)
def _colourful_segments(indptr, indices, part_of, colour, ell, sep, sidx, part_verts, part_ptr, local):
    """Colourful separator-to-separator paths with interior inside one part.

    Returns arrays (from, to, mask, part) of distinct segments, where ``mask``
    holds the colours of all path vertices including both ends. ``to == from``
    marks a closed cycle through a single separator vertex. Part -1 marks a
    direct separator edge.
    """
    k = len(sep)
    seen = np.zeros((k, k, 1 << ell), dtype=np.bool_)
    out_from = []
    out_to = []
    out_mask = []
    out_part = []
    for a in range(k):
        s = sep[a]
        for p in range(indptr[s], indptr[s + 1]):
            y = indices[p]
            if part_of[y] == -1 and colour[y] != colour[s]:
                m = (1 << colour[s]) | (1 << colour[y])
                b = sidx[y]
                if not seen[a, b, m]:
                    seen[a, b, m] = True
                    out_from.append(a)
                    out_to.append(b)
                    out_mask.append(m)
                    out_part.append(-1)
    for i in range(len(part_ptr) - 1):
        lo, hi = part_ptr[i], part_ptr[i + 1]
        size = hi - lo
        reach = np.zeros((size, 1 << ell), dtype=np.bool_)
        for a in range(k):
            s = sep[a]
            cs = 1 << colour[s]
            touched = False
            for p in range(indptr[s], indptr[s + 1]):
                y = indices[p]
                if part_of[y] == i and colour[y] != colour[s]:
                    if not touched:
                        reach[:, :] = False
                        touched = True
                    reach[local[y], cs | (1 << colour[y])] = True
            if not touched:
                continue
            for mask in range(1 << ell):
                if mask & cs == 0:
                    continue
                for c in range(lo, hi):
                    x = part_verts[c]
                    if not reach[local[x], mask]:
                        continue
                    for p in range(indptr[x], indptr[x + 1]):
                        y = indices[p]
                        if part_of[y] == i:
                            bit = 1 << colour[y]
                            if mask & bit == 0:
                                reach[local[y], mask | bit] = True
                        elif part_of[y] == -1:
                            b = sidx[y]
                            if y == s:
                                m = mask
                                if bin_count(m) < 3:
                                    continue
                            else:
                                bit = 1 << colour[y]
                                if mask & bit:
                                    continue
                                m = mask | bit
                            if not seen[a, b, m]:
                                seen[a, b, m] = True
                                out_from.append(a)
                                out_to.append(b)
                                out_mask.append(m)
                                out_part.append(i)
    res = np.empty((len(out_from), 4), dtype=np.int64)
    for j in range(len(out_from)):
        res[j, 0] = out_from[j]
        res[j, 1] = out_to[j]
        res[j, 2] = out_mask[j]
        res[j, 3] = out_part[j]
    return res


@njit(cache=True)
def bin_count(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _chain_segments(segs, seg_ptr, sep_colour, ell):
    """Search for a colourful closed chain of segments.

    The chain starts at the separator vertex of smallest colour on the
    cycle. Returns the list of segment indices, or an empty array.
    """
    k = len(sep_colour)
    full = (1 << ell) - 1
    pred = np.full((k, 1 << ell), -1, dtype=np.int64)
    for s0 in range(k):
        c0 = sep_colour[s0]
        pred[:, :] = -1
        start_mask = 1 << c0
        pred[s0, start_mask] = -2
        for mask in range(start_mask, full + 1):
            for s in range(k):
                if pred[s, mask] == -1:
                    continue
                cs = 1 << sep_colour[s]
                for j in range(seg_ptr[s], seg_ptr[s + 1]):
                    to = segs[j, 1]
                    x = segs[j, 2]
                    if to == s0:
                        need = cs | start_mask
                        if (x & mask) == need and (mask | x) == full:
                            chain = [j]
                            cur_s, cur_m = s, mask
                            while pred[cur_s, cur_m] != -2:
                                pj = pred[cur_s, cur_m]
                                chain.append(pj)
                                cur_m = cur_m & ~segs[pj, 2] | (1 << sep_colour[segs[pj, 0]])
                                cur_s = segs[pj, 0]
                            out = np.empty(len(chain), dtype=np.int64)
                            for q in range(len(chain)):
                                out[q] = chain[len(chain) - 1 - q]
                            return out
                        continue
                    if to == s or sep_colour[to] <= c0:
                        continue
                    if (x & mask) != cs:
                        continue
                    nm = mask | x
                    if pred[to, nm] == -1:
                        pred[to, nm] = j
    return np.empty(0, dtype=np.int64)


def _colourful_path(g: Graph, colour: np.ndarray, allowed, start: int, end: int, mask: int) -> Optional[list[int]]:
    """Path ``start .. end`` whose vertices carry exactly the colours in ``mask``.

    With ``start == end`` the result is a cycle listed without repeating
    ``start``. Interior vertices must satisfy ``allowed``.
    """
    closed = start == end

    def extend(path: list[int], used: int) -> Optional[list[int]]:
        x = path[-1]
        for y in g.adjacency[x]:
            bit = 1 << int(colour[y])
            if closed:
                if y == start and used == mask and len(path) >= 3:
                    return path
            elif y == end and not used & bit and used | bit == mask:
                return path + [y]
            if y == start or y == end or used & bit or not allowed(y):
                continue
            found = extend(path + [y], used | bit)
            if found:
                return found
        return None

    return extend([start], 1 << int(colour[start]))


def cycle_trials(ell: int, failure_prob: float) -> int:
    return math.ceil(math.log(1 / failure_prob) * ell**ell / math.factorial(ell))


def find_cycle_of_length(
    g: Graph,
    d: SeparatorDecomposition,
    ell: int,
    failure_prob: float = 0.05,
    seed: int = 0,
    trials: Optional[int] = None,
) -> Optional[CycleReport]:
    """An ``ell``-cycle found by random colourings; one-sided error.

    A cycle is detected in a trial when its vertices receive pairwise distinct
    colours. Cycles inside a part are found per part; cycles meeting the
    separator are split at separator vertices into segments through single
    parts, which are then chained.
    """
    if not 3 <= ell <= MAX_CYCLE_LENGTH:
        raise InputError(f"cycle length must lie in 3..{MAX_CYCLE_LENGTH}, got {ell}")
    if not 0 < failure_prob < 1:
        raise InputError(f"failure probability must lie in (0, 1), got {failure_prob}")
    d.check(g)
    if g.n < ell or g.m < ell:
        return None
    indptr, indices = _csr_arrays(g)
    part_of = np.ascontiguousarray(d.part_of, dtype=np.int64)
    sep = np.array(d.separator, dtype=np.int64)
    sidx = np.full(g.n, -1, dtype=np.int64)
    sidx[sep] = np.arange(len(sep))
    part_verts = np.concatenate([np.array(p, dtype=np.int64) for p in d.parts]) if d.parts else np.zeros(0, np.int64)
    part_ptr = np.concatenate([[0], np.cumsum([len(p) for p in d.parts])]).astype(np.int64)
    local = np.zeros(g.n, dtype=np.int64)
    for p in d.parts:
        local[list(p)] = np.arange(len(p))
    total = trials if trials is not None else cycle_trials(ell, failure_prob)
    for t in range(total):
        colour = np.random.default_rng([seed, t]).integers(0, ell, size=g.n).astype(np.int64)
        start = _colourful_part_cycle(indptr, indices, part_of, colour, ell, part_verts, part_ptr, local)
        if start >= 0:
            i = int(part_of[start])
            full = (1 << ell) - 1
            path = _colourful_path(g, colour, lambda y: part_of[y] == i, int(start), int(start), full)
            if path is None:
                raise InternalError("colourful part cycle could not be reconstructed")
            return _report(g, path, "fixed-length")
        if len(sep) == 0:
            continue
        segs = _colourful_segments(indptr, indices, part_of, colour, ell, sep, sidx, part_verts, part_ptr, local)
        if len(segs) == 0:
            continue
        order = np.argsort(segs[:, 0], kind="stable")
        segs = segs[order]
        seg_ptr = np.searchsorted(segs[:, 0], np.arange(len(sep) + 1)).astype(np.int64)
        chain = _chain_segments(segs, seg_ptr, colour[sep], ell)
        if len(chain) == 0:
            continue
        cycle: list[int] = []
        for j in chain.tolist():
            a, b, mask, part = (int(v) for v in segs[j])
            s, e = int(sep[a]), int(sep[b])
            if part < 0:
                piece = [s, e]
            else:
                piece = _colourful_path(g, colour, lambda y, part=part: part_of[y] == part, s, e, mask)
                if piece is None:
                    raise InternalError("colourful segment could not be reconstructed")
            cycle.extend(piece[:-1] if piece[-1] == e and (a != b) else piece)
        return _report(g, cycle, "fixed-length")
    return None
