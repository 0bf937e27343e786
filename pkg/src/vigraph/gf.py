"""Arithmetic and dense linear algebra over GF(2^q).

Field elements are ``int64`` bit-packed polynomials over GF(2); matrices are
2-D ``int64`` numpy arrays whose entries lie in ``[0, 2^q)``. Addition is XOR,
so every routine here treats ``-x`` as ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .errors import InputError, PreconditionError, SingularMatrixError

MAX_Q = 32

# x^3+x+1, x^8+x^4+x^3+x+1, x^16+x^12+x^3+x+1, x^20+x^3+1, x^32+x^22+x^2+x+1
STANDARD_MODULI = {
    3: 0b1011,
    8: 0x11B,
    16: 0x1100B,
    20: 0x100009,
    32: 0x100400007,
}


# -- polynomial helpers over GF(2), pure python --------------------------------

def _pmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _pmod(r, m)


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def is_irreducible(modulus: int) -> bool:
    """Rabin's irreducibility test for a bit-encoded polynomial over GF(2)."""
    q = modulus.bit_length() - 1
    if q < 1:
        return False

    def frob(times: int) -> int:
        x = 0b10
        for _ in range(times):
            x = _pmulmod(x, x, modulus)
        return x

    if frob(q) != _pmod(0b10, modulus):
        return False
    for p in _prime_factors(q):
        if _pgcd(modulus, frob(q // p) ^ 0b10) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(q: int) -> int:
    if q in STANDARD_MODULI:
        return STANDARD_MODULI[q]
    for low in range(1, 1 << q, 2):
        cand = (1 << q) | low
        if is_irreducible(cand):
            return cand
    raise InputError(f"no irreducible polynomial of degree {q}")


# -- numba kernels -------------------------------------------------------------

@njit(cache=True, inline="always")
def _mul(a, b, mod, q):
    r = 0
    top = 1 << q
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


@njit(cache=True)
def _inv(a, mod, q):
    # a^(2^q - 2)
    result = 1
    base = a
    e = (1 << q) - 2
    while e:
        if e & 1:
            result = _mul(result, base, mod, q)
        base = _mul(base, base, mod, q)
        e >>= 1
    return result


@njit(cache=True)
def _vmul(a, b, mod, q):
    out = np.empty_like(a)
    fa = a.ravel()
    fb = b.ravel()
    fo = out.ravel()
    for i in range(fa.size):
        fo[i] = _mul(fa[i], fb[i], mod, q)
    return out


@njit(cache=True)
def _matmul(A, B, mod, q):
    n, m = A.shape
    p = B.shape[1]
    C = np.zeros((n, p), dtype=np.int64)
    for i in range(n):
        for t in range(m):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(p):
                b = B[t, j]
                if b:
                    C[i, j] ^= _mul(a, b, mod, q)
    return C


@njit(cache=True)
def _echelon(M, mod, q, want_inverse):
    """Gauss-Jordan with lowest-index pivots.

    Returns (rank, det, pivot_cols, aux) where aux is the inverse when
    ``want_inverse`` and the matrix is square and nonsingular.
    """
    n, m = M.shape
    A = M.copy()
    aux = np.zeros((n, n), dtype=np.int64)
    if want_inverse:
        for i in range(n):
            aux[i, i] = 1
    pivots = np.empty(min(n, m), dtype=np.int64)
    det = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        p = -1
        for i in range(r, n):
            if A[i, c] != 0:
                p = i
                break
        if p < 0:
            det = 0
            continue
        if p != r:
            for j in range(m):
                A[p, j], A[r, j] = A[r, j], A[p, j]
            if want_inverse:
                for j in range(n):
                    aux[p, j], aux[r, j] = aux[r, j], aux[p, j]
        piv = A[r, c]
        det = _mul(det, piv, mod, q)
        ip = _inv(piv, mod, q)
        for j in range(m):
            if A[r, j]:
                A[r, j] = _mul(A[r, j], ip, mod, q)
        if want_inverse:
            for j in range(n):
                if aux[r, j]:
                    aux[r, j] = _mul(aux[r, j], ip, mod, q)
        for i in range(n):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(c, m):
                if A[r, j]:
                    A[i, j] ^= _mul(f, A[r, j], mod, q)
            if want_inverse:
                for j in range(n):
                    if aux[r, j]:
                        aux[i, j] ^= _mul(f, aux[r, j], mod, q)
        pivots[r] = c
        r += 1
    if r < n or r < m:
        det = 0
    return r, det, pivots[:r], aux


@njit(cache=True)
def _row_basis(M, mod, q):
    # rows scanned in order; a row joins the basis iff it is independent of earlier ones
    n, m = M.shape
    basis = np.zeros((min(n, m), m), dtype=np.int64)
    pcol = np.empty(min(n, m), dtype=np.int64)
    chosen = np.empty(min(n, m), dtype=np.int64)
    r = 0
    row = np.empty(m, dtype=np.int64)
    for i in range(n):
        if r == m:
            break
        for j in range(m):
            row[j] = M[i, j]
        for b in range(r):
            f = row[pcol[b]]
            if f:
                for j in range(m):
                    if basis[b, j]:
                        row[j] ^= _mul(f, basis[b, j], mod, q)
        c = -1
        for j in range(m):
            if row[j]:
                c = j
                break
        if c < 0:
            continue
        ip = _inv(row[c], mod, q)
        for j in range(m):
            if row[j]:
                row[j] = _mul(row[j], ip, mod, q)
        # keep basis reduced in column c
        for b in range(r):
            f = basis[b, c]
            if f:
                for j in range(m):
                    if row[j]:
                        basis[b, j] ^= _mul(f, row[j], mod, q)
        for j in range(m):
            basis[r, j] = row[j]
        pcol[r] = c
        chosen[r] = i
        r += 1
    return chosen[:r].copy()


# -- public surface ------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(2^q) with a bit-encoded irreducible modulus of degree q."""

    q: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.q <= MAX_Q:
            raise InputError(f"q must lie in 1..{MAX_Q}, got {self.q}")
        if self.modulus.bit_length() - 1 != self.q:
            raise InputError(f"modulus {self.modulus:#x} does not have degree {self.q}")
        if not is_irreducible(self.modulus):
            raise InputError(f"modulus {self.modulus:#x} is reducible over GF(2)")

    @classmethod
    def of_degree(cls, q: int) -> "FieldSpec":
        return cls(q, default_modulus(q))

    @property
    def order(self) -> int:
        return 1 << self.q

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return int(_mul(np.int64(a), np.int64(b), np.int64(self.modulus), np.int64(self.q)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^q)")
        return int(_inv(np.int64(a), np.int64(self.modulus), np.int64(self.q)))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return _vmul(np.ascontiguousarray(a), np.ascontiguousarray(b), self.modulus, self.q)

    def random(self, rng: np.random.Generator, shape, nonzero: bool = False) -> np.ndarray:
        low = 1 if nonzero else 0
        return rng.integers(low, self.order, size=shape, dtype=np.int64)

    def validate(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.order):
            raise InputError(f"matrix entry outside GF(2^{self.q})")
        return a


def field_for_size(n: int) -> FieldSpec:
    """Field used for randomized algebra on ``n`` vertices: q = max(20, 3*ceil(log2 n))."""
    bits = max(1, int(np.ceil(np.log2(max(n, 2)))))
    return FieldSpec.of_degree(min(MAX_Q, max(20, 3 * bits)))


def _as_matrix(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise InputError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def mat_mul(field: FieldSpec, a, b) -> np.ndarray:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise InputError(f"cannot multiply {a.shape} by {b.shape}")
    return _matmul(a, b, field.modulus, field.q)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def det(field: FieldSpec, a) -> int:
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise InputError(f"determinant of non-square {a.shape}")
    if a.shape[0] == 0:
        return 1
    return int(_echelon(a, field.modulus, field.q, False)[1])


def rank(field: FieldSpec, a) -> int:
    a = _as_matrix(a)
    if a.size == 0:
        return 0
    return int(_echelon(a, field.modulus, field.q, False)[0])


def inverse(field: FieldSpec, a) -> np.ndarray:
    a = _as_matrix(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise InputError(f"inverse of non-square {a.shape}")
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    r, _, _, inv = _echelon(a, field.modulus, field.q, True)
    if r < n:
        raise SingularMatrixError(f"matrix is singular (rank {r} < {n})", rank=int(r))
    return inv


def row_basis(field: FieldSpec, a) -> list[int]:
    """Lexicographically first set of row indices forming a basis of the row space."""
    a = _as_matrix(a)
    if a.size == 0:
        return []
    return _row_basis(a, field.modulus, field.q).tolist()


def submatrix(a: np.ndarray, rows: Sequence[int], cols: Optional[Sequence[int]] = None) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    cols = rows if cols is None else np.asarray(cols, dtype=np.int64)
    return a[np.ix_(rows, cols)]


def schur_complement(field: FieldSpec, a, x: Sequence[int]) -> np.ndarray:
    """``a[Y] - a[Y,x] a[x]^-1 a[x,Y]`` where ``Y`` is the complement of ``x``."""
    a = _as_matrix(a)
    x = sorted(set(int(i) for i in x))
    y = [i for i in range(a.shape[0]) if i not in set(x)]
    try:
        ax_inv = inverse(field, submatrix(a, x))
    except SingularMatrixError as exc:
        raise PreconditionError(f"pivot block is singular (rank {exc.rank})") from None
    left = mat_mul(field, submatrix(a, y, x), ax_inv)
    return submatrix(a, y) ^ mat_mul(field, left, submatrix(a, x, y))


def harvey_update(field: FieldSpec, m_inv, delta, s_idx: Sequence[int], t_idx: Sequence[int]):
    """Inverse of ``M`` after adding ``delta`` to the block ``M[s_idx, t_idx]``.

    ``m_inv`` is the current inverse (or any principal block of it that
    contains ``s_idx`` and ``t_idx``). Returns the updated block, or ``None``
    when the modified matrix would be singular.
    """
    n_inv = _as_matrix(m_inv)
    delta = _as_matrix(delta)
    s_idx, t_idx = list(s_idx), list(t_idx)
    if delta.shape != (len(s_idx), len(t_idx)):
        raise InputError(f"delta has shape {delta.shape}, expected {(len(s_idx), len(t_idx))}")
    if not delta.any():
        return n_inv.copy()
    core = identity(len(s_idx)) ^ mat_mul(field, delta, submatrix(n_inv, t_idx, s_idx))
    try:
        core_inv = inverse(field, core)
    except SingularMatrixError:
        return None
    left = mat_mul(field, n_inv[:, s_idx], core_inv)
    right = mat_mul(field, delta, n_inv[t_idx, :])
    return n_inv ^ mat_mul(field, left, right)


def pfaffian_small(field: FieldSpec, a) -> int:
    """Pfaffian by expansion along the first row; dimension at most 12."""
    a = _as_matrix(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise InputError(f"Pfaffian of non-square {a.shape}")
    if n > 12:
        raise InputError(f"pfaffian_small supports dimension <= 12, got {n}")
    if n % 2:
        return 0

    @lru_cache(maxsize=None)
    def pf(idx: tuple[int, ...]) -> int:
        if not idx:
            return 1
        first, rest = idx[0], idx[1:]
        total = 0
        for j, w in enumerate(rest):
            entry = int(a[first, w])
            if entry:
                total ^= field.mul(entry, pf(rest[:j] + rest[j + 1:]))
        return total

    return pf(tuple(range(n)))


# -- debug text format ---------------------------------------------------------

def to_hex(a: np.ndarray) -> str:
    return "".join(" ".join(f"{int(x):x}" for x in row) + "\n" for row in np.atleast_2d(a))


def from_hex(text: str) -> np.ndarray:
    rows = [[int(t, 16) for t in line.split()] for line in text.splitlines() if line.strip()]
    if len({len(r) for r in rows}) > 1:
        raise InputError("ragged rows in hex matrix")
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)
