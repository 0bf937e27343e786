"""Separator-blocked matrices: the Tutte/adjacency block form and its products.

A symmetric matrix supported on the edges of a graph with a decomposition
``(S; T_1..T_nu)`` is stored as three kinds of blocks::

    gamma    = A[S, S]
    betas[i] = A[S, T_i]
    alphas[i] = A[T_i, T_i]

Blocks ``A[T_i, T_j]`` for ``i != j`` are zero and never stored. Rows and
columns inside every block follow the sorted order of the vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gf
from .decomposition import SEPARATOR, SeparatorDecomposition
from .errors import InputError
from .gf import FieldSpec
from .graph import Graph


def local_positions(d: SeparatorDecomposition) -> np.ndarray:
    """Position of each vertex inside its own block (separator or part)."""
    pos = np.empty(d.n, dtype=np.int64)
    pos[list(d.separator)] = np.arange(len(d.separator))
    for part in d.parts:
        pos[list(part)] = np.arange(len(part))
    return pos


@dataclass
class BlockTutteMatrix:
    """Block storage of a symmetric edge-supported matrix.

    ``field`` is ``None`` for plain integer (0/1 adjacency) entries.
    """

    decomposition: SeparatorDecomposition
    gamma: np.ndarray
    betas: list[np.ndarray]
    alphas: list[np.ndarray]
    field: Optional[FieldSpec] = None

    @property
    def n(self) -> int:
        return self.decomposition.n

    @classmethod
    def from_edge_values(
        cls,
        g: Graph,
        d: SeparatorDecomposition,
        values: np.ndarray,
        field: Optional[FieldSpec] = None,
    ) -> "BlockTutteMatrix":
        """Place ``values[e]`` at both ``(u, v)`` and ``(v, u)`` for edge ``e = g.edge_array[e]``."""
        s = len(d.separator)
        pos = local_positions(d)
        gamma = np.zeros((s, s), dtype=np.int64)
        betas = [np.zeros((s, len(p)), dtype=np.int64) for p in d.parts]
        alphas = [np.zeros((len(p), len(p)), dtype=np.int64) for p in d.parts]
        e = g.edge_array
        if len(e):
            pu, pv = d.part_of[e[:, 0]], d.part_of[e[:, 1]]
            lu, lv = pos[e[:, 0]], pos[e[:, 1]]
            both = (pu == SEPARATOR) & (pv == SEPARATOR)
            gamma[lu[both], lv[both]] = values[both]
            gamma[lv[both], lu[both]] = values[both]
            # order so the separator endpoint comes first
            cross = (pu == SEPARATOR) ^ (pv == SEPARATOR)
            ci = np.flatnonzero(cross)
            swap = pu[ci] != SEPARATOR
            sl = np.where(swap, lv[ci], lu[ci])
            tl = np.where(swap, lu[ci], lv[ci])
            tp = np.where(swap, pu[ci], pv[ci])
            inner = np.flatnonzero((pu != SEPARATOR) & (pu == pv))
            c_ord = np.argsort(tp, kind="stable")
            c_b = np.searchsorted(tp[c_ord], np.arange(d.nu + 1))
            i_part = pu[inner]
            i_ord = np.argsort(i_part, kind="stable")
            i_b = np.searchsorted(i_part[i_ord], np.arange(d.nu + 1))
            for i in range(d.nu):
                sel = c_ord[c_b[i]:c_b[i + 1]]
                betas[i][sl[sel], tl[sel]] = values[ci[sel]]
                sel = inner[i_ord[i_b[i]:i_b[i + 1]]]
                alphas[i][lu[sel], lv[sel]] = values[sel]
                alphas[i][lv[sel], lu[sel]] = values[sel]
        return cls(d, gamma, betas, alphas, field)

    @classmethod
    def adjacency(cls, g: Graph, d: SeparatorDecomposition) -> "BlockTutteMatrix":
        return cls.from_edge_values(g, d, np.ones(g.m, dtype=np.int64))

    @classmethod
    def random_tutte(
        cls, g: Graph, d: SeparatorDecomposition, field: FieldSpec, rng: np.random.Generator
    ) -> "BlockTutteMatrix":
        return cls.from_edge_values(g, d, field.random(rng, g.m, nonzero=True), field)

    def dense(self) -> np.ndarray:
        d = self.decomposition
        out = np.zeros((self.n, self.n), dtype=np.int64)
        sep = np.array(d.separator, dtype=np.int64)
        out[np.ix_(sep, sep)] = self.gamma
        for part, beta, alpha in zip(d.parts, self.betas, self.alphas):
            t = np.array(part, dtype=np.int64)
            out[np.ix_(sep, t)] = beta
            out[np.ix_(t, sep)] = beta.T
            out[np.ix_(t, t)] = alpha
        return out


def _product(field: Optional[FieldSpec], a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field is None:
        return a @ b
    return gf.mat_mul(field, a, b)


def _add(field: Optional[FieldSpec], a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a ^ b if field is not None else a + b


def structured_mul(a: BlockTutteMatrix, m: np.ndarray, side: str = "left") -> np.ndarray:
    """``A @ M`` (``side="left"``) or ``M @ A`` (``side="right"``) using only stored blocks."""
    m = np.asarray(m, dtype=np.int64)
    n = a.n
    if m.shape[0] != n or m.ndim != 2 or (side == "right" and m.shape != (n, n)):
        raise InputError(f"operand of shape {m.shape} does not match n = {n}")
    if side == "right":
        # A is symmetric, so M A = (A M^T)^T
        return structured_mul(a, np.ascontiguousarray(m.T), "left").T.copy()
    if side != "left":
        raise InputError(f"side must be 'left' or 'right', got {side!r}")
    d, f = a.decomposition, a.field
    sep = np.array(d.separator, dtype=np.int64)
    out = np.zeros(m.shape, dtype=np.int64)
    top = _product(f, a.gamma, m[sep])
    for part, beta, alpha in zip(d.parts, a.betas, a.alphas):
        t = np.array(part, dtype=np.int64)
        mt = m[t]
        top = _add(f, top, _product(f, beta, mt))
        out[t] = _add(f, _product(f, np.ascontiguousarray(beta.T), m[sep]), _product(f, alpha, mt))
    out[sep] = top
    return out


def square_on_edges_array(g: Graph, d: SeparatorDecomposition) -> np.ndarray:
    """``A^2[u, v]`` (number of common neighbours) for every row of ``g.edge_array``."""
    out = np.zeros(g.m, dtype=np.int64)
    if g.m == 0:
        return out
    blocks = BlockTutteMatrix.adjacency(g, d)
    pos = local_positions(d)
    e = g.edge_array
    pu, pv = d.part_of[e[:, 0]], d.part_of[e[:, 1]]
    # separator endpoint (if any) first
    swap = pu != SEPARATOR
    a_loc = np.where(swap, pos[e[:, 1]], pos[e[:, 0]])
    b_loc = np.where(swap, pos[e[:, 0]], pos[e[:, 1]])
    a_part = np.where(swap, pv, pu)
    b_part = np.where(swap, pu, pv)
    group = b_part  # -1 for separator-separator edges
    order = np.argsort(group, kind="stable")
    bounds = np.searchsorted(group[order], np.arange(-1, d.nu + 1))
    # float products go through BLAS; entries stay far below 2^53
    gamma = blocks.gamma.astype(np.float64)
    zeta = gamma @ gamma
    for i in range(d.nu):
        beta = blocks.betas[i].astype(np.float64)
        alpha = blocks.alphas[i].astype(np.float64)
        zeta += beta @ beta.T
        sel = order[bounds[i + 1]:bounds[i + 2]]
        if len(sel) == 0:
            continue
        inner = sel[a_part[sel] == i]
        if len(inner):
            delta = beta.T @ beta + alpha @ alpha
            out[inner] = np.rint(delta[a_loc[inner], b_loc[inner]])
        cross = sel[a_part[sel] == SEPARATOR]
        if len(cross):
            eta = gamma @ beta + beta @ alpha
            out[cross] = np.rint(eta[a_loc[cross], b_loc[cross]])
    sel = order[bounds[0]:bounds[1]]
    out[sel] = np.rint(zeta[a_loc[sel], b_loc[sel]])
    return out


def square_on_edges(g: Graph, d: SeparatorDecomposition) -> dict[tuple[int, int], int]:
    values = square_on_edges_array(g, d)
    return dict(zip(g.edges, values.tolist()))
