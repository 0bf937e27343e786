"""Unweighted all-pairs shortest paths on graphs with a small separator.

The pipeline first rewrites the graph so that every part is connected,
carries a Hamiltonian path and has the same size as the separator. Distance
rows taken along such a path change by at most one between neighbours,
which is what the ``bd`` min-plus kernel exploits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from numba import njit

from .blocks import BlockTutteMatrix, structured_mul
from .decomposition import SeparatorDecomposition
from .errors import InputError, InternalError
from .graph import Graph

UNREACHABLE = np.iinfo(np.int64).max // 4
SYNTHETIC = -1
KERNELS = ("naive", "bd")


@dataclass
class DistanceMatrix:
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, key):
        return self.entries[key]

    def check(self) -> None:
        """Raise ``InternalError`` unless symmetric, zero-diagonal and metric."""
        e = self.entries
        if not np.array_equal(e, e.T):
            raise InternalError("distance matrix is not symmetric")
        if np.any(np.diag(e) != 0):
            raise InternalError("distance matrix has a nonzero diagonal")
        if self.n and not np.array_equal(min_plus(e, e), e):
            raise InternalError("distance matrix violates the triangle inequality")

    def to_text(self) -> str:
        out = np.where(self.entries >= UNREACHABLE, -1, self.entries)
        return "".join(" ".join(map(str, row)) + "\n" for row in out.tolist())

    @classmethod
    def from_text(cls, text: str) -> "DistanceMatrix":
        rows = []
        for i, line in enumerate(text.splitlines(), start=1):
            try:
                rows.append([int(t) for t in line.split()])
            except ValueError:
                raise InputError("distance rows must hold integers", line=i) from None
            if len(rows[-1]) != len(rows[0]):
                raise InputError("ragged distance row", line=i)
        n = len(rows)
        if rows and len(rows[0]) != n:
            raise InputError(f"expected {n} columns, got {len(rows[0])}", line=1)
        e = np.array(rows, dtype=np.int64).reshape(n, n)
        return cls(np.where(e < 0, UNREACHABLE, e))

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())


# -- min-plus products ---------------------------------------------------------

@njit(cache=True)
def _min_plus_naive(a, b, cap):
    p, q = a.shape
    r = b.shape[1]
    out = np.full((p, r), cap, dtype=np.int64)
    for i in range(p):
        for k in range(q):
            x = a[i, k]
            if x >= cap:
                continue
            for j in range(r):
                y = x + b[k, j]
                if y < out[i, j]:
                    out[i, j] = y
    return out


@njit(cache=True)
def _row_bounded(a, i, cap):
    # row i differs from row i-1 by at most one, with matching sentinels
    for k in range(a.shape[1]):
        x, y = a[i - 1, k], a[i, k]
        if (x >= cap) != (y >= cap):
            return False
        if x < cap and abs(x - y) > 1:
            return False
    return True


@njit(cache=True)
def _min_plus_bd(a, b, cap):
    p, q = a.shape
    r = b.shape[1]
    out = np.full((p, r), cap, dtype=np.int64)
    for i in range(p):
        pruned = i > 0 and _row_bounded(a, i, cap)
        for j in range(r):
            best = cap
            floor = -1
            if pruned:
                prev = out[i - 1, j]
                if prev < cap:
                    best = prev + 1
                    floor = prev - 1
            for k in range(q):
                x = a[i, k]
                if x >= cap:
                    continue
                y = x + b[k, j]
                if y < best:
                    best = y
                    if best <= floor:
                        break
            out[i, j] = best
    return out


def min_plus(a, b, kernel: str = "naive") -> np.ndarray:
    """``C[i, j] = min_k a[i, k] + b[k, j]`` with ``UNREACHABLE`` absorbing.

    ``kernel="bd"`` prunes using the previous output row whenever consecutive
    rows of ``a`` differ by at most one; it returns exactly the naive result.
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise InputError(f"cannot min-plus multiply {a.shape} by {b.shape}")
    a = np.minimum(a, UNREACHABLE)
    b = np.minimum(b, UNREACHABLE)
    if kernel == "naive":
        return _min_plus_naive(a, b, UNREACHABLE)
    if kernel == "bd":
        return _min_plus_bd(a, b, UNREACHABLE)
    raise InputError(f"unknown min-plus kernel {kernel!r}; expected one of {KERNELS}")


@njit(cache=True)
def _floyd_warshall(w, cap):
    d = w.copy()
    n = d.shape[0]
    for i in range(n):
        d[i, i] = 0
    for k in range(n):
        for i in range(n):
            dik = d[i, k]
            if dik >= cap:
                continue
            for j in range(n):
                y = dik + d[k, j]
                if y < d[i, j]:
                    d[i, j] = y
    return d


def weighted_apsp_small(weights) -> DistanceMatrix:
    """Exact distances in a weighted graph given as a matrix; ``UNREACHABLE`` means no edge."""
    w = np.ascontiguousarray(weights, dtype=np.int64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InputError(f"weight matrix must be square, got {w.shape}")
    off = ~np.eye(w.shape[0], dtype=bool)
    if np.any(w[off] <= 0):
        raise InputError("weights must be positive integers or UNREACHABLE")
    w = np.minimum(np.minimum(w, w.T), UNREACHABLE)
    return DistanceMatrix(_floyd_warshall(w, UNREACHABLE))


@njit(cache=True)
def _bfs_all(indptr, indices, cap):
    n = len(indptr) - 1
    out = np.full((n, n), cap, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for root in range(n):
        row = out[root]
        row[root] = 0
        queue[0] = root
        head, tail = 0, 1
        while head < tail:
            x = queue[head]
            head += 1
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if row[y] == cap:
                    row[y] = row[x] + 1
                    queue[tail] = y
                    tail += 1
    return out


def bfs_distances(g: Graph) -> np.ndarray:
    indptr, indices = g.csr_arrays
    return _bfs_all(indptr, indices, UNREACHABLE)


# -- the nice partition --------------------------------------------------------

@dataclass
class NicePartition:
    """Rewritten graph whose parts are equal-size Hamiltonian-path blocks.

    Vertices ``0..n-1`` of ``graph`` are the original vertices; every other
    vertex is a copy, and ``origin`` names the original it stands for
    (``SYNTHETIC`` for padding vertices). ``parts[i]`` lists a part in
    Hamiltonian-path order.
    """

    graph: Graph
    separator: tuple[int, ...]
    parts: list[list[int]]
    origin: np.ndarray
    size: int
    n_original: int

    def check_paths(self) -> None:
        for i, path in enumerate(self.parts):
            if len(path) != self.size:
                raise InternalError(f"part {i} has {len(path)} vertices, expected {self.size}")
            for a, b in zip(path, path[1:]):
                if not self.graph.has_edge(a, b):
                    raise InternalError(f"part {i}: {a}-{b} is not an edge")
        if self.parts and len(self.separator) != self.size:
            raise InternalError(f"separator has {len(self.separator)} vertices, expected {self.size}")
        members = [v for p in self.parts for v in p]
        if len(set(members)) != len(members) or set(members) & set(self.separator):
            raise InternalError("parts overlap")


class _Builder:
    def __init__(self, g: Graph):
        self.g = g
        self.origin = list(range(g.n))
        self.edges: set[tuple[int, int]] = set(g.edges)

    def copy_of(self, v: int) -> int:
        self.origin.append(self.origin[v] if v >= 0 else SYNTHETIC)
        return len(self.origin) - 1

    def link(self, a: int, b: int) -> None:
        self.edges.add((a, b) if a < b else (b, a))


class _Group:
    """A connected vertex set of the rewritten graph, grown around a hub copy of ``s``."""

    def __init__(self, builder: _Builder, s: Optional[int]):
        self.members: list[int] = []
        self.hub = builder.copy_of(s) if s is not None else None
        if self.hub is not None:
            self.members.append(self.hub)

    def __len__(self):
        return len(self.members)


def _tree_paths(g: Graph, sep: list[int], comp_of: np.ndarray, comps: list[list[int]]):
    """BFS tree over the separator, joining separator vertices directly or through one component.

    Returns ``(order, parent, path)`` where ``path[c]`` lists the inner
    vertices of a shortest parent-to-``c`` path.
    """
    in_sep = set(sep)
    parent: dict[int, int] = {}
    path: dict[int, list[int]] = {}
    order: list[int] = []
    for root in sep:
        if root in parent:
            continue
        parent[root] = -1
        path[root] = []
        queue = deque([root])
        while queue:
            s = queue.popleft()
            order.append(s)
            for t in g.adjacency[s]:
                if t in in_sep and t not in parent:
                    parent[t], path[t] = s, []
                    queue.append(t)
            for c in sorted({int(comp_of[t]) for t in g.adjacency[s] if t not in in_sep}):
                targets = {t for x in comps[c] for t in g.adjacency[x] if t in in_sep and t not in parent}
                if not targets:
                    continue
                # BFS from s through the component
                members = set(comps[c])
                prev = {s: -1}
                bfs = deque([s])
                while bfs:
                    x = bfs.popleft()
                    for y in g.adjacency[x]:
                        if y in prev:
                            continue
                        if y in members:
                            prev[y] = x
                            bfs.append(y)
                        elif y in targets and x != s:
                            prev[y] = x
                for t in sorted(targets):
                    inner, x = [], prev[t]
                    while x != s:
                        inner.append(x)
                        x = prev[x]
                    parent[t], path[t] = s, inner[::-1]
                    queue.append(t)
    return order, parent, path


def _hamiltonise(builder: _Builder, members: list[int]) -> list[int]:
    """Euler tour of a spanning tree, later visits replaced by fresh copies."""
    inside = set(members)
    adj: dict[int, list[int]] = {v: [] for v in members}
    for a, b in builder.edges:
        if a in inside and b in inside:
            adj[a].append(b)
            adj[b].append(a)
    root = members[0]
    seen = {root}
    walk = [root]
    stack = [(root, iter(sorted(adj[root])))]
    while stack:
        v, it = stack[-1]
        nxt = next((w for w in it if w not in seen), None)
        if nxt is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
            continue
        seen.add(nxt)
        walk.append(nxt)
        stack.append((nxt, iter(sorted(adj[nxt]))))
    if len(seen) != len(members):
        raise InternalError("group is not connected")
    used: set[int] = set()
    path = []
    for v in walk:
        if v in used:
            v = builder.copy_of(v)
        used.add(v)
        if path:
            builder.link(path[-1], v)
        path.append(v)
    return path


def nice_partition(g: Graph, d: SeparatorDecomposition) -> NicePartition:
    d.check(g)
    k = max(d.k, 1)
    sep = list(d.separator)
    in_sep = set(sep)
    comps = g.components(sep)
    comp_of = np.full(g.n, -1, dtype=np.int64)
    for c, comp in enumerate(comps):
        comp_of[comp] = c
    b = _Builder(g)
    order, parent, tree_path = _tree_paths(g, sep, comp_of, comps)
    assigned: dict[int, list[int]] = {s: [] for s in sep}
    loose: list[list[int]] = []
    for c, comp in enumerate(comps):
        anchors = [t for x in comp for t in g.adjacency[x] if t in in_sep]
        if anchors:
            assigned[min(anchors)].append(c)
        else:
            loose.append(comp)

    def attach(group: _Group, s: int, vertices) -> None:
        group.members.extend(vertices)
        for x in vertices:
            if g.has_edge(s, x):
                b.link(group.hub, x)

    closed: list[_Group] = []
    last: dict[int, Optional[_Group]] = {}
    children: dict[int, list[int]] = {s: [] for s in sep}
    for s in order:
        if parent[s] >= 0:
            children[parent[s]].append(s)
    for s in reversed(order):
        current = _Group(b, s)
        for c in children[s]:
            carried = last.pop(c, None)
            copies = [b.copy_of(x) for x in tree_path[c]]
            chain = [current.hub] + copies + ([carried.hub] if carried is not None else [])
            if carried is None and not copies:
                continue
            for x, y in zip(chain, chain[1:]):
                b.link(x, y)
            current.members.extend(copies)
            if carried is not None:
                current.members.extend(carried.members)
            if len(current) > 3 * k:
                closed.append(current)
                current = _Group(b, s)
        pending = list(assigned[s])
        while pending:
            attach(current, s, comps[pending.pop(0)])
            if len(current) > k and pending:
                closed.append(current)
                current = _Group(b, s)
        last[s] = current if len(current) > 1 else None
    closed.extend(grp for grp in last.values() if grp is not None)
    groups = [grp.members for grp in closed] + loose
    paths = [_hamiltonise(b, members) for members in groups]
    size = max([len(sep)] + [len(p) for p in paths])
    for p in paths:
        while len(p) < size:
            v = b.copy_of(SYNTHETIC)
            b.link(p[-1], v)
            p.append(v)
    sep_prime = list(sep)
    if paths:
        # pendant chain of synthetic vertices hanging off one separator vertex
        anchor = sep[0] if sep else SYNTHETIC
        prev = anchor
        while len(sep_prime) < size:
            v = b.copy_of(SYNTHETIC)
            if prev != SYNTHETIC:
                b.link(prev, v)
            sep_prime.append(v)
            prev = v
    origin = np.array(b.origin, dtype=np.int64)
    g2 = Graph(len(origin), b.edges)
    return NicePartition(g2, tuple(sep_prime), paths, origin, size, g.n)


# -- the pipeline --------------------------------------------------------------

def apsp(g: Graph, d: SeparatorDecomposition, kernel: str = "naive") -> DistanceMatrix:
    """Exact hop distances; ``UNREACHABLE`` between components."""
    if kernel not in KERNELS:
        raise InputError(f"unknown min-plus kernel {kernel!r}; expected one of {KERNELS}")
    nice = nice_partition(g, d)
    g2 = nice.graph
    sep = list(nice.separator)
    s = len(sep)
    weights = np.full((s, s), UNREACHABLE, dtype=np.int64)
    local_d, cross_d = [], []
    for part in nice.parts:
        sub, labels = g2.induced_subgraph(sep + part)
        full = bfs_distances(sub)
        where = {v: i for i, v in enumerate(labels)}
        si = [where[v] for v in sep]
        ti = [where[v] for v in part]
        weights = np.minimum(weights, full[np.ix_(si, si)])
        local_d.append(full[np.ix_(ti, ti)])
        cross_d.append(full[np.ix_(ti, si)])
    if s:
        sub, labels = g2.induced_subgraph(sep)
        where = {v: i for i, v in enumerate(labels)}
        si = [where[v] for v in sep]
        adj = sub.dense()[np.ix_(si, si)]
        weights = np.where(adj == 1, 1, weights)
        np.fill_diagonal(weights, UNREACHABLE)
        d_s = _floyd_warshall(np.minimum(weights, UNREACHABLE), UNREACHABLE)
    else:
        d_s = np.zeros((0, 0), dtype=np.int64)
    n2 = g2.n
    out = np.full((n2, n2), UNREACHABLE, dtype=np.int64)
    out[np.ix_(sep, sep)] = d_s
    star = [min_plus(cross, d_s, kernel) for cross in cross_d]
    for i, part in enumerate(nice.parts):
        out[np.ix_(part, sep)] = star[i]
        out[np.ix_(sep, part)] = star[i].T
        for j in range(i, len(nice.parts)):
            block = min_plus(star[i], cross_d[j].T, kernel)
            if i == j:
                block = np.minimum(block, local_d[i])
                out[np.ix_(part, part)] = block
            else:
                out[np.ix_(part, nice.parts[j])] = block
                out[np.ix_(nice.parts[j], part)] = block.T
    n = g.n
    return DistanceMatrix(out[:n, :n].copy())


def apsp_bounded_diameter(g: Graph, d: SeparatorDecomposition, d_max: int) -> DistanceMatrix:
    """Distances up to ``d_max`` from boolean powers of the adjacency; farther pairs get ``UNREACHABLE``."""
    if d_max < 1:
        raise InputError(f"d_max must be at least 1, got {d_max}")
    d.check(g)
    a = BlockTutteMatrix.adjacency(g, d)
    out = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(out, 0)
    power = g.dense()
    for step in range(1, d_max + 1):
        if step > 1:
            power = (structured_mul(a, power) > 0).astype(np.int64)
        fresh = (power > 0) & (out == UNREACHABLE)
        if not fresh.any() and step > 1:
            break
        out[fresh] = step
    return DistanceMatrix(out)
