"""Undirected simple graphs, the edge-list text format, and planted instances."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import InputError


class Graph:
    """Immutable undirected simple graph on vertices ``0 .. n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``; neighbor lists
    are sorted ascending.
    """

    __slots__ = ("n", "edges", "adjacency", "_edge_set", "_edge_array", "_csr", "_degrees", "_arrays")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(normalized))
        self._edge_set = frozenset(self.edges)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        self._edge_array = None
        self._csr = None
        self._degrees = None
        self._arrays = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            self._degrees = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.n)
        return self._degrees

    @property
    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` int64 array of edges, rows sorted, ``u < v``."""
        if self._edge_array is None:
            if self.edges:
                self._edge_array = np.array(self.edges, dtype=np.int64)
            else:
                self._edge_array = np.zeros((0, 2), dtype=np.int64)
        return self._edge_array

    @property
    def csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` int64 arrays; neighbours sorted within each row."""
        if self._arrays is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(self.degrees, out=indptr[1:])
            indices = np.fromiter(
                (w for a in self.adjacency for w in a), dtype=np.int64, count=2 * self.m
            )
            self._arrays = (indptr, indices)
        return self._arrays

    def csr(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency as a CSR matrix (int8 data)."""
        if self._csr is None:
            e = self.edge_array
            rows = np.concatenate([e[:, 0], e[:, 1]])
            cols = np.concatenate([e[:, 1], e[:, 0]])
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
            self._csr.sort_indices()
        return self._csr

    def dense(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        e = self.edge_array
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
        return a

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Return ``G[vertices]`` relabelled to ``0..len-1`` and the label list."""
        verts = sorted(set(int(v) for v in vertices))
        index = {v: i for i, v in enumerate(verts)}
        sub = []
        for v in verts:
            iv = index[v]
            for w in self.adjacency[v]:
                if w > v and w in index:
                    sub.append((iv, index[w]))
        return Graph(len(verts), sub), verts

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            ((u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)),
        )

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of ``G - removed``.

        Components are returned in ascending order of their smallest vertex,
        each as a sorted list.
        """
        blocked = np.zeros(self.n, dtype=bool)
        for v in removed:
            blocked[v] = True
        seen = blocked.copy()
        out = []
        adj = self.adjacency
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comp.sort()
            out.append(comp)
        return out

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise InputError("empty graph file", line=1)
        head = lines[0].split(" ")
        if len(head) != 3 or head[0] != "p":
            raise InputError("expected header 'p <n> <m>'", line=1)
        try:
            n, m = int(head[1]), int(head[2])
        except ValueError:
            raise InputError("non-integer n or m in header", line=1) from None
        if n < 0 or m < 0:
            raise InputError("negative n or m in header", line=1)
        if len(lines) - 1 != m:
            raise InputError(f"header announces {m} edges, found {len(lines) - 1}", line=len(lines))
        seen = set()
        edges = []
        for i, raw in enumerate(lines[1:], start=2):
            parts = raw.split(" ")
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise InputError(f"expected '<u> <v>', got {raw!r}", line=i)
            u, v = int(parts[0]), int(parts[1])
            if not u < v:
                raise InputError(f"edge must satisfy u < v, got {u} {v}", line=i)
            if v >= n:
                raise InputError(f"vertex {v} out of range for n={n}", line=i)
            if (u, v) in seen:
                raise InputError(f"duplicate edge {u} {v}", line=i)
            seen.add((u, v))
            edges.append((u, v))
        return cls(n, edges)

    @classmethod
    def read(cls, path) -> "Graph":
        return cls.from_text(Path(path).read_text())

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())


def separator_to_text(separator: Iterable[int], k: int) -> str:
    return " ".join(str(v) for v in sorted(separator)) + f"\nk {k}\n"


def separator_from_text(text: str) -> tuple[list[int], int]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != 2:
        raise InputError("separator file must have exactly two lines", line=min(len(lines) + 1, 3))
    try:
        verts = [int(t) for t in lines[0].split()]
    except ValueError:
        raise InputError("separator line must hold integers", line=1) from None
    kline = lines[1].split(" ")
    if len(kline) != 2 or kline[0] != "k" or not kline[1].isdigit():
        raise InputError("expected 'k <k>'", line=2)
    return verts, int(kline[1])


def read_separator(path) -> tuple[list[int], int]:
    return separator_from_text(Path(path).read_text())


def write_separator(path, separator: Iterable[int], k: int) -> None:
    Path(path).write_text(separator_to_text(separator, k))


# -- named graphs used across tests and the CLI --------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# -- planted instances ---------------------------------------------------------

@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    separator: tuple[int, ...]
    k: int
    seed: int


def generate_planted(
    n: int,
    sep_size: int,
    comp_size: int,
    edge_prob_in: float,
    edge_prob_cross: float,
    seed: int,
    *,
    edge_prob_sep: float = 0.0,
    shuffle: bool = True,
) -> PlantedInstance:
    """Random graph with a designated separator of ``sep_size`` vertices.

    The remaining vertices are cut into blocks of ``comp_size``; edges appear
    inside a block with probability ``edge_prob_in`` and between a block vertex
    and a separator vertex with ``edge_prob_cross``. ``edge_prob_sep`` adds
    edges inside the separator (off by default). Labels are permuted by the
    same seeded generator unless ``shuffle`` is false.
    """
    if n < 0 or sep_size < 0 or comp_size < 0:
        raise InputError("sizes must be non-negative")
    if sep_size + comp_size > n:
        raise InputError(f"sep_size + comp_size = {sep_size + comp_size} exceeds n = {n}")
    if sep_size < n and comp_size == 0:
        raise InputError("comp_size must be positive when vertices remain outside the separator")
    for p in (edge_prob_in, edge_prob_cross, edge_prob_sep):
        if not 0.0 <= p <= 1.0:
            raise InputError(f"probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    labels = rng.permutation(n) if shuffle else np.arange(n)
    sep = np.arange(sep_size)
    rest = np.arange(sep_size, n)
    edges = []
    if sep_size > 1 and edge_prob_sep > 0:
        iu, ju = np.triu_indices(sep_size, 1)
        keep = rng.random(len(iu)) < edge_prob_sep
        edges.extend(zip(iu[keep].tolist(), ju[keep].tolist()))
    for start in range(0, len(rest), max(comp_size, 1)):
        block = rest[start:start + comp_size]
        b = len(block)
        if b > 1:
            iu, ju = np.triu_indices(b, 1)
            keep = rng.random(len(iu)) < edge_prob_in
            edges.extend(zip(block[iu[keep]].tolist(), block[ju[keep]].tolist()))
        if sep_size:
            cross = rng.random((sep_size, b)) < edge_prob_cross
            si, bi = np.nonzero(cross)
            edges.extend(zip(sep[si].tolist(), block[bi].tolist()))
    relabel = labels.tolist()
    g = Graph(n, ((relabel[u], relabel[v]) for u, v in edges))
    separator = tuple(sorted(relabel[s] for s in sep))
    return PlantedInstance(g, separator, sep_size + comp_size, seed)
