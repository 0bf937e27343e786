"""Separators of bounded vertex integrity and the packed part decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from numba import njit

from .errors import InputError, PreconditionError
from .graph import Graph

SEPARATOR = -1


@dataclass(frozen=True)
class SeparatorDecomposition:
    """A separator plus disjoint parts with no edges between distinct parts.

    ``part_of[v]`` is the index of the part holding ``v`` or ``SEPARATOR``.
    """

    separator: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    k: int
    part_of: np.ndarray = field(repr=False, compare=False)

    @property
    def nu(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return len(self.part_of)

    def closed_part(self, i: int) -> list[int]:
        """Sorted vertices of the separator together with part ``i``."""
        return sorted(self.separator + self.parts[i])

    def check(self, g: Graph) -> None:
        """Raise ``PreconditionError`` unless this is a valid decomposition of ``g``."""
        if len(self.part_of) != g.n:
            raise PreconditionError("decomposition built for a different vertex count")
        seen = np.zeros(g.n, dtype=np.int64)
        for v in self.separator:
            seen[v] += 1
        for i, part in enumerate(self.parts):
            if not part:
                raise PreconditionError(f"part {i} is empty")
            if len(part) > max(2 * self.k - 1, 1):
                raise PreconditionError(f"part {i} has {len(part)} > 2k-1 vertices")
            if i < len(self.parts) - 1 and len(part) < self.k:
                raise PreconditionError(f"part {i} has {len(part)} < k vertices")
            for v in part:
                seen[v] += 1
                if self.part_of[v] != i:
                    raise PreconditionError(f"part_of[{v}] disagrees with part {i}")
        if np.any(seen != 1):
            raise PreconditionError("separator and parts do not partition the vertex set")
        e = g.edge_array
        if len(e):
            pu, pv = self.part_of[e[:, 0]], self.part_of[e[:, 1]]
            bad = (pu != SEPARATOR) & (pv != SEPARATOR) & (pu != pv)
            if bad.any():
                u, v = e[np.argmax(bad)]
                raise PreconditionError(f"edge {u}-{v} joins two different parts")


def _check_vertices(g: Graph, s: Iterable[int]) -> list[int]:
    out = []
    for v in s:
        v = int(v)
        if not 0 <= v < g.n:
            raise InputError(f"separator vertex {v} outside 0..{g.n - 1}")
        out.append(v)
    return sorted(set(out))


@njit(cache=True)
def _label_components(indptr, indices, removed):
    n = len(removed)
    labels = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    count = 0
    for start in range(n):
        if removed[start] or labels[start] >= 0:
            continue
        labels[start] = count
        top = 1
        stack[0] = start
        while top:
            top -= 1
            x = stack[top]
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if not removed[y] and labels[y] < 0:
                    labels[y] = count
                    stack[top] = y
                    top += 1
        count += 1
    return count, labels


def component_labels(g: Graph, removed: Iterable[int] = ()) -> tuple[int, np.ndarray]:
    """Label components of ``g - removed``; removed vertices get label -1.

    Labels are ordered by the smallest vertex of each component.
    """
    mask = np.zeros(g.n, dtype=np.bool_)
    mask[list(removed)] = True
    indptr, indices = g.csr_arrays
    count, labels = _label_components(indptr, indices, mask)
    return int(count), labels


def validate_separator(g: Graph, s: Iterable[int], k: int) -> bool:
    s = _check_vertices(g, s)
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    if len(s) > k:
        return False
    count, labels = component_labels(g, s)
    if count == 0:
        return True
    largest = np.bincount(labels[labels >= 0]).max()
    return bool(largest <= k - len(s))


def violation(g: Graph, s: Iterable[int], k: int) -> Optional[str]:
    """Human-readable reason why ``s`` fails to be a ``k``-separator, or None."""
    s = _check_vertices(g, s)
    if len(s) > k:
        return f"|S| = {len(s)} exceeds k = {k}"
    count, labels = component_labels(g, s)
    if count:
        sizes = np.bincount(labels[labels >= 0])
        big = int(np.argmax(sizes))
        if sizes[big] > k - len(s):
            v = int(np.flatnonzero(labels == big)[0])
            return (
                f"component containing vertex {v} has {sizes[big]} vertices, "
                f"more than k - |S| = {k - len(s)}"
            )
    return None


def build_decomposition(g: Graph, s: Iterable[int], k: int) -> SeparatorDecomposition:
    s = _check_vertices(g, s)
    reason = violation(g, s, k)
    if reason is not None:
        raise PreconditionError(f"not a valid {k}-separator: {reason}")
    count, labels = component_labels(g, s)
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels[labels >= 0], minlength=count)
    starts = np.concatenate([[0], np.cumsum(sizes)]) + (g.n - int(sizes.sum()))
    parts: list[tuple[int, ...]] = []
    current: list[int] = []
    for c in range(count):
        current.extend(order[starts[c]:starts[c + 1]].tolist())
        if len(current) >= k:
            parts.append(tuple(sorted(current)))
            current = []
    if current:
        parts.append(tuple(sorted(current)))
    part_of = np.full(g.n, SEPARATOR, dtype=np.int64)
    for i, part in enumerate(parts):
        part_of[list(part)] = i
    part_of.setflags(write=False)
    return SeparatorDecomposition(tuple(s), tuple(parts), k, part_of)


def _bfs_prefix(g: Graph, start: int, blocked: set[int], limit: int) -> list[int]:
    order = [start]
    seen = {start}
    head = 0
    while head < len(order) and len(order) < limit:
        x = order[head]
        head += 1
        for y in g.adjacency[x]:
            if y not in seen and y not in blocked:
                seen.add(y)
                order.append(y)
                if len(order) == limit:
                    break
    return order


def exact_vertex_integrity(g: Graph, budget: int) -> Optional[tuple[int, list[int]]]:
    """Exact vertex integrity by bounded branching, or None if it exceeds ``budget``.

    Any separator for target ``t`` must hit every connected vertex set of
    size ``t - |S| + 1``; the branching set is such a set taken in BFS order
    from the smallest vertex of an oversized component.
    """
    if budget < 1:
        raise InputError(f"budget must be at least 1, got {budget}")
    if g.n == 0:
        return 0, []

    def search(target: int, chosen: list[int]) -> Optional[list[int]]:
        blocked = set(chosen)
        comps = g.components(chosen)
        room = target - len(chosen)
        oversized = next((c for c in comps if len(c) > room), None)
        if oversized is None:
            return sorted(chosen)
        if room <= 0:
            return None
        for v in _bfs_prefix(g, oversized[0], blocked, room + 1):
            found = search(target, chosen + [v])
            if found is not None:
                return found
        return None

    for target in range(1, budget + 1):
        witness = search(target, [])
        if witness is not None:
            return target, witness
    return None


def greedy_separator(g: Graph) -> tuple[list[int], int]:
    """Max-degree peeling; returns the best ``(S, |S| + largest component)`` seen.

    Peeling stops once the largest component of ``G - S`` is no bigger than
    ``|S|``. No approximation factor is guaranteed.
    """
    if g.n == 0:
        return [], 0
    deg = g.degrees.copy()
    removed = np.zeros(g.n, dtype=bool)
    chosen: list[int] = []
    best_k, best_len = None, 0
    while True:
        count, labels = component_labels(g, chosen)
        largest = int(np.bincount(labels[labels >= 0]).max()) if count else 0
        k = len(chosen) + largest
        if best_k is None or k < best_k:
            best_k, best_len = k, len(chosen)
        if largest <= len(chosen):
            break
        live = np.where(removed, -1, deg)
        v = int(np.argmax(live))
        chosen.append(v)
        removed[v] = True
        for w in g.adjacency[v]:
            deg[w] -= 1
    return sorted(chosen[:best_len]), best_k
