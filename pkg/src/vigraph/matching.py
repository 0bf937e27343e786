"""Randomized algebraic matching over GF(2^q) on graphs with a small separator.

All matrices live in characteristic 2, so the Tutte matrix is symmetric with
a zero diagonal and every sign in the usual skew-symmetric identities drops
out. Block conventions follow :mod:`vigraph.blocks`.

Every matching handed back is checked against the graph before return; a
failed check counts as bad luck and triggers a fresh instantiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import gf
from .blocks import BlockTutteMatrix
from .decomposition import SeparatorDecomposition, build_decomposition
from .errors import InputError, InternalError, ProbabilisticFailure, SingularMatrixError
from .gf import FieldSpec
from .graph import Graph

RETRY_CAP = 5


class _Unlucky(Exception):
    """The current random instantiation violated a with-high-probability claim."""


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted((min(e), max(e)) for e in self.edges)))

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def saturated(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def verify(self, g: Graph, perfect: bool = False) -> None:
        seen: set[int] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise InternalError(f"matching edge {u}-{v} is not in the graph")
            if u in seen or v in seen:
                raise InternalError(f"matching edges share a vertex at {u}-{v}")
            seen.update((u, v))
        if perfect and len(seen) != g.n:
            raise InternalError(f"matching leaves {g.n - len(seen)} vertices exposed")

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    @classmethod
    def from_text(cls, text: str) -> "Matching":
        edges = []
        for i, line in enumerate(text.splitlines(), start=1):
            parts = line.split(" ")
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise InputError(f"expected '<u> <v>', got {line!r}", line=i)
            edges.append((int(parts[0]), int(parts[1])))
        return cls(tuple(edges))

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())


@dataclass
class TutteInstance:
    """Random evaluation of the Tutte matrix; ``values`` align with ``graph.edge_array``."""

    graph: Graph
    decomposition: SeparatorDecomposition
    field: FieldSpec
    values: np.ndarray
    matrix: BlockTutteMatrix
    seed: object = None

    @classmethod
    def random(
        cls,
        g: Graph,
        d: SeparatorDecomposition,
        field: Optional[FieldSpec] = None,
        seed=0,
    ) -> "TutteInstance":
        field = field or gf.field_for_size(g.n)
        values = field.random(np.random.default_rng(seed), g.m, nonzero=True)
        return cls(g, d, field, values, BlockTutteMatrix.from_edge_values(g, d, values, field), seed)

    def restrict(self, vertices: Sequence[int]) -> "TutteInstance":
        """Same entries on the induced subgraph; the separator is inherited."""
        sub, labels = self.graph.induced_subgraph(vertices)
        index = {e: i for i, e in enumerate(self.graph.edges)}
        values = np.array(
            [self.values[index[(labels[a], labels[b])]] for a, b in sub.edges], dtype=np.int64
        )
        sep = set(self.decomposition.separator)
        sd = build_decomposition(sub, [i for i, v in enumerate(labels) if v in sep], self.decomposition.k)
        inst = TutteInstance(sub, sd, self.field, values,
                             BlockTutteMatrix.from_edge_values(sub, sd, values, self.field), self.seed)
        return inst

    def dense(self) -> np.ndarray:
        return self.matrix.dense()


# -- dense helpers -------------------------------------------------------------

def _inverse_or_unlucky(field: FieldSpec, a: np.ndarray) -> np.ndarray:
    try:
        return gf.inverse(field, a)
    except SingularMatrixError:
        raise _Unlucky from None


def dense_perfect_matching(field: FieldSpec, a: np.ndarray) -> Optional[list[tuple[int, int]]]:
    """Perfect matching on the support of a nonsingular symmetric zero-diagonal matrix.

    Repeatedly matches the first remaining index ``u`` to some ``w`` with
    ``a[u, w] != 0`` and ``inv[w, u] != 0``; the second condition keeps the
    rest nonsingular. Returns None if ``a`` is singular.
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if n % 2:
        return None
    try:
        inv = gf.inverse(field, a)
    except SingularMatrixError:
        return None
    idx = list(range(n))
    out = []
    while idx:
        hits = np.flatnonzero((a[0] != 0) & (inv[:, 0] != 0))
        if not len(hits):
            raise InternalError("nonsingular matrix without an admissible pair")
        w = int(hits[0])
        out.append((idx[0], idx[w]))
        pair = [0, w]
        rest = [i for i in range(len(idx)) if i not in (0, w)]
        core = _inverse_or_unlucky(field, inv[np.ix_(pair, pair)])
        left = gf.mat_mul(field, inv[np.ix_(rest, pair)], core)
        inv = inv[np.ix_(rest, rest)] ^ gf.mat_mul(field, left, inv[np.ix_(pair, rest)])
        a = a[np.ix_(rest, rest)]
        idx = [idx[i] for i in rest]
    return out


def delete_edges_crossing(
    field: FieldSpec,
    matrix: np.ndarray,
    inverse: np.ndarray,
    u_set: Sequence[int],
    w_set: Sequence[int],
) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Zero every deletable entry between ``u_set`` and ``w_set``.

    ``inverse`` must be the inverse of ``matrix``. An entry pair is deletable
    when zeroing it keeps the matrix nonsingular. Returns the new matrix and
    the surviving nonzero cross positions ``(u, w)``.
    """
    c = np.array(matrix, dtype=np.int64, copy=True)
    us, ws = list(u_set), list(w_set)
    if not us or not ws:
        return c, []
    width = 1 << (max(len(us), len(ws)) - 1).bit_length()
    us += [-1] * (width - len(us))
    ws += [-1] * (width - len(ws))

    def real(xs):
        return [x for x in xs if x >= 0]

    def recurse(u_part, w_part, local: list[int], n_loc: np.ndarray) -> None:
        if len(u_part) == 1:
            a, b = u_part[0], w_part[0]
            if a < 0 or b < 0 or c[a, b] == 0:
                return
            pos = [local.index(a), local.index(b)]
            val = c[a, b]
            delta = np.array([[0, val], [val, 0]], dtype=np.int64)
            if gf.harvey_update(field, n_loc, delta, pos, pos) is not None:
                c[a, b] = c[b, a] = 0
            return
        half = len(u_part) // 2
        where = {v: i for i, v in enumerate(local)}
        for uu in (u_part[:half], u_part[half:]):
            for ww in (w_part[:half], w_part[half:]):
                if not real(uu) or not real(ww):
                    continue
                sub = real(uu) + real(ww)
                pos = [where[v] for v in sub]
                before = c[np.ix_(sub, sub)].copy()
                recurse(uu, ww, sub, n_loc[np.ix_(pos, pos)])
                delta = c[np.ix_(sub, sub)] ^ before
                if delta.any():
                    updated = gf.harvey_update(field, n_loc, delta, pos, pos)
                    if updated is None:
                        raise InternalError(
                            f"local inverse rejected its own deletions on {len(sub)} indices"
                        )
                    n_loc = updated

    local = real(us) + real(ws)
    recurse(us, ws, local, np.asarray(inverse, dtype=np.int64)[np.ix_(local, local)])
    survivors = [(a, b) for a in real(us) for b in real(ws) if c[a, b]]
    return c, survivors


# -- the Schur chain -----------------------------------------------------------

@dataclass
class SchurChainState:
    """Data shared by detection and construction.

    ``star`` lists the vertices of the enlarged separator (original
    separator first, then the non-basis vertices of each part). ``gammas[i]``
    is the separator block before eliminating part ``i``; the last entry is
    the fully reduced block.
    """

    star: list[int]
    bases: list[list[int]]  # local positions of the basis inside each part
    betas: list[np.ndarray]  # basis rows x star columns
    alphas: list[np.ndarray]
    alpha_invs: list[np.ndarray]
    gammas: list[np.ndarray]


def _schur_chain(inst: TutteInstance) -> Optional[SchurChainState]:
    """Run the chain; None means the counting argument already rules out a perfect matching."""
    field, d, m = inst.field, inst.decomposition, inst.matrix
    s = len(d.separator)
    bases, extras = [], []
    for alpha in m.alphas:
        basis = gf.row_basis(field, alpha)
        bases.append(basis)
        chosen = set(basis)
        extras.append([j for j in range(alpha.shape[0]) if j not in chosen])
    if sum(len(x) for x in extras) > s:
        return None
    star = list(d.separator)
    offsets = []
    for i, part in enumerate(d.parts):
        offsets.append(len(star))
        star.extend(part[j] for j in extras[i])
    size = len(star)
    gamma = np.zeros((size, size), dtype=np.int64)
    gamma[:s, :s] = m.gamma
    for i, ex in enumerate(extras):
        if not ex:
            continue
        cols = np.arange(offsets[i], offsets[i] + len(ex))
        gamma[:s, cols] = m.betas[i][:, ex]
        gamma[cols, :s] = m.betas[i][:, ex].T
        gamma[np.ix_(cols, cols)] = m.alphas[i][np.ix_(ex, ex)]
    state = SchurChainState(star, bases, [], [], [], [gamma])
    for i, basis in enumerate(bases):
        beta = np.zeros((len(basis), size), dtype=np.int64)
        beta[:, :s] = m.betas[i][:, basis].T
        ex = extras[i]
        if ex:
            beta[:, offsets[i]:offsets[i] + len(ex)] = m.alphas[i][np.ix_(basis, ex)]
        alpha = m.alphas[i][np.ix_(basis, basis)]
        # a principal block on a row basis is nonsingular; guard anyway
        alpha_inv = _inverse_or_unlucky(field, alpha)
        step = gf.mat_mul(field, gf.mat_mul(field, beta.T, alpha_inv), beta)
        state.betas.append(beta)
        state.alphas.append(alpha)
        state.alpha_invs.append(alpha_inv)
        state.gammas.append(state.gammas[-1] ^ step)
    return state


def _chain_nonsingular(inst: TutteInstance) -> tuple[bool, Optional[SchurChainState]]:
    if inst.graph.n % 2:
        return False, None
    state = _schur_chain(inst)
    if state is None:
        return False, None
    final = state.gammas[-1]
    return gf.rank(inst.field, final) == final.shape[0], state


def tutte_determinant_nonzero(inst: TutteInstance) -> bool:
    try:
        return _chain_nonsingular(inst)[0]
    except _Unlucky:
        return False


def has_perfect_matching(
    g: Graph,
    d: SeparatorDecomposition,
    trials: int = 3,
    field: Optional[FieldSpec] = None,
    seed: int = 0,
) -> bool:
    """One-sided test: ``True`` is certain, ``False`` may be wrong with tiny probability."""
    if trials < 1:
        raise InputError(f"trials must be positive, got {trials}")
    d.check(g)
    if g.n % 2:
        return False
    for t in range(trials):
        if tutte_determinant_nonzero(TutteInstance.random(g, d, field, [seed, t])):
            return True
    return False


# -- construction --------------------------------------------------------------

def _perfect_matching_once(inst: TutteInstance) -> Optional[list[tuple[int, int]]]:
    ok, state = _chain_nonsingular(inst)
    if not ok:
        return None
    field, d = inst.field, inst.decomposition
    star = state.star
    tilde = list(range(len(star)))
    out: list[tuple[int, int]] = []
    for i in range(d.nu - 1, -1, -1):
        basis = state.bases[i]
        t = len(basis)
        if t == 0:
            continue
        part = d.parts[i]
        beta = state.betas[i][:, tilde]
        block = np.zeros((t + len(tilde), t + len(tilde)), dtype=np.int64)
        block[:t, :t] = state.alphas[i]
        block[:t, t:] = beta
        block[t:, :t] = beta.T
        block[t:, t:] = state.gammas[i][np.ix_(tilde, tilde)]
        inv = _inverse_or_unlucky(field, block)
        reduced, survivors = delete_edges_crossing(
            field, block, inv, range(t, t + len(tilde)), range(t)
        )
        cross = reduced[t:, :t] != 0
        if (cross.sum(axis=1) > 1).any() or (cross.sum(axis=0) > 1).any():
            raise _Unlucky
        for a, b in survivors:
            out.append((star[tilde[a - t]], part[basis[b]]))
        rest_basis = [j for j in range(t) if not cross[:, j].any()]
        inner = dense_perfect_matching(field, state.alphas[i][np.ix_(rest_basis, rest_basis)])
        if inner is None:
            raise _Unlucky
        out.extend((part[basis[rest_basis[x]]], part[basis[rest_basis[y]]]) for x, y in inner)
        tilde = [tilde[r] for r in range(len(tilde)) if not cross[r].any()]
    last = dense_perfect_matching(field, state.gammas[0][np.ix_(tilde, tilde)])
    if last is None:
        raise _Unlucky
    out.extend((star[tilde[x]], star[tilde[y]]) for x, y in last)
    return out


def failure_bound(inst: "TutteInstance") -> float:
    """Union bound on an unlucky instantiation across every Schur step.

    Each step tests a determinant of degree at most ``n`` in the random entries.
    """
    steps = max(inst.decomposition.nu, 1) + 1
    return min(1.0, steps * inst.graph.n / inst.field.order)


def find_perfect_matching(
    g: Graph,
    d: SeparatorDecomposition,
    field: Optional[FieldSpec] = None,
    seed: int = 0,
    retries: int = RETRY_CAP,
    stats: Optional[dict] = None,
) -> Optional[Matching]:
    """A verified perfect matching, or None if none was detected.

    ``stats["attempts"]`` receives the number of instantiations used and
    ``stats["failure_bound"]`` the union bound for the last one.
    """
    d.check(g)
    result = _retrying(lambda attempt: TutteInstance.random(g, d, field, [seed, attempt]),
                       retries, stats, perfect=True)
    return result


def _retrying(make, retries: int, stats: Optional[dict], perfect: bool):
    for attempt in range(retries):
        if stats is not None:
            stats["attempts"] = attempt + 1
        inst = make(attempt)
        if stats is not None:
            stats["failure_bound"] = failure_bound(inst)
        try:
            edges = _perfect_matching_once(inst)
        except _Unlucky:
            continue
        if edges is None:
            return None
        found = Matching(tuple(edges))
        try:
            found.verify(inst.graph, perfect=perfect)
        except InternalError:
            continue
        return found
    raise ProbabilisticFailure(f"no verified perfect matching after {retries} instantiations")


# -- maximum matching ----------------------------------------------------------

def tutte_basis(inst: TutteInstance) -> list[int]:
    """Vertex set ``X`` with ``A[X]`` nonsingular and ``|X| = rank A``."""
    field, d, m = inst.field, inst.decomposition, inst.matrix
    s = len(d.separator)
    reduced_gamma = m.gamma.copy()
    basis: list[int] = []
    leftover_rows, leftover_vertices = [], []
    for i, part in enumerate(d.parts):
        alpha = m.alphas[i]
        tp = gf.row_basis(field, alpha)
        chosen = set(tp)
        tpp = [j for j in range(len(part)) if j not in chosen]
        basis.extend(part[j] for j in tp)
        if not tpp:
            if tp:
                bt = m.betas[i][:, tp].T
                p = _inverse_or_unlucky(field, alpha[np.ix_(tp, tp)])
                reduced_gamma ^= gf.mat_mul(field, gf.mat_mul(field, bt.T, p), bt)
            continue
        rows = m.betas[i][:, tpp].T
        if tp:
            bt = m.betas[i][:, tp].T
            p = _inverse_or_unlucky(field, alpha[np.ix_(tp, tp)])
            reduced_gamma ^= gf.mat_mul(field, gf.mat_mul(field, bt.T, p), bt)
            rows = rows ^ gf.mat_mul(field, gf.mat_mul(field, alpha[np.ix_(tpp, tp)], p), bt)
        leftover_rows.append(rows)
        leftover_vertices.extend(part[j] for j in tpp)
    if leftover_rows and s:
        stacked = np.vstack(leftover_rows)
        y = gf.row_basis(field, stacked)
    else:
        stacked, y = np.zeros((0, s), dtype=np.int64), []
    size = s + len(y)
    core = np.zeros((size, size), dtype=np.int64)
    core[:s, :s] = reduced_gamma
    if y:
        core[s:, :s] = stacked[y]
        core[:s, s:] = stacked[y].T
    labels = list(d.separator) + [leftover_vertices[r] for r in y]
    basis.extend(labels[r] for r in gf.row_basis(field, core))
    return sorted(basis)


def tutte_rank(inst: TutteInstance) -> int:
    """Rank of the instantiated Tutte matrix; twice the matching number with high probability."""
    return len(tutte_basis(inst))


def max_matching(
    g: Graph,
    d: SeparatorDecomposition,
    field: Optional[FieldSpec] = None,
    seed: int = 0,
    retries: int = RETRY_CAP,
    stats: Optional[dict] = None,
) -> Matching:
    """A verified matching of size ``rank / 2`` for a random instantiation."""
    d.check(g)
    for attempt in range(retries):
        if stats is not None:
            stats["attempts"] = attempt + 1
        inst = TutteInstance.random(g, d, field, [seed, attempt])
        if stats is not None:
            stats["failure_bound"] = failure_bound(inst)
        try:
            x = tutte_basis(inst)
            sub = inst.restrict(x)
            edges = _perfect_matching_once(sub)
        except _Unlucky:
            continue
        if edges is None:
            continue
        found = Matching(tuple((x[a], x[b]) for a, b in edges))
        try:
            found.verify(g)
        except InternalError:
            continue
        if found.size * 2 != len(x):
            continue
        return found
    raise ProbabilisticFailure(f"no verified maximum matching after {retries} instantiations")
