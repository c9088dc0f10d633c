"""Dense linear algebra over prime fields F_p.

Matrices are ``numpy`` int64 arrays whose entries are kept reduced mod ``p``.
All functions are pure; inputs are never modified in place.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def reduce(self, m) -> np.ndarray:
        return np.asarray(m, dtype=np.int64) % self.p


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    return PrimeField(int(p)).p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form of ``m`` over F_p.

    Returns the reduced matrix (same shape as ``m``), its rank and the list of
    pivot columns.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    if rows * cols <= 256:
        return _rref_small(a, p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def _rref_small(a: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    # plain lists beat numpy's per-call overhead on tiny matrices
    rows, cols = a.shape
    b = a.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if b[i][c]), None)
        if k is None:
            continue
        b[r], b[k] = b[k], b[r]
        inv = pow(b[r][c], -1, p)
        pr = [(x * inv) % p for x in b[r]]
        b[r] = pr
        for i in range(rows):
            if i != r and b[i][c]:
                f = b[i][c]
                b[i] = [(x - f * y) % p for x, y in zip(b[i], pr)]
        pivots.append(c)
        r += 1
    return np.array(b, dtype=np.int64).reshape(rows, cols), r, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[1]


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical RREF basis (as rows) of the row space of ``m``."""
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    r, k, _ = rref(m, p)
    return r[:k]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns of the returned ``cols x (cols - rank)`` matrix span ker(m)."""
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, k, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def solve(m: np.ndarray, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``m @ x == b`` over F_p, or ``None`` if b is not in the column space."""
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {rows}")
    aug = np.concatenate([np.asarray(m, dtype=np.int64).reshape(rows, cols), b[:, None]], axis=1)
    r, k, pivots = rref(aug, p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x


def solve_matrix(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``m @ X == b`` column by column; ``None`` if any column is unsolvable."""
    cols = []
    for j in range(b.shape[1]):
        x = solve(m, b[:, j], p)
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return zeros(m.shape[1], 0)
    return np.stack(cols, axis=1)


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, k, _ = rref(np.concatenate([m % p, identity(n)], axis=1), p)
    if k < n or not np.array_equal(r[:, :n], identity(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def complement_basis(sub_rows: np.ndarray, d: int, p: int) -> np.ndarray:
    """Rows of standard unit vectors completing ``sub_rows`` (RREF) to a basis of F_p^d."""
    _, _, pivots = rref(sub_rows, p) if sub_rows.shape[0] else (None, 0, [])
    free = [c for c in range(d) if c not in pivots]
    comp = zeros(len(free), d)
    for i, c in enumerate(free):
        comp[i, c] = 1
    return comp


def quotient_maps(sub_rows: np.ndarray, d: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``F_p^d -> F_p^d / U`` and a section of it.

    ``sub_rows`` spans U (any row basis). Returns ``(proj, section)`` with
    ``proj`` of shape ``(d - dim U) x d``, ``section`` of shape ``d x (d - dim U)``,
    ``proj @ section = I`` and ``ker(proj) = U``.
    """
    u = row_basis(sub_rows, p) if sub_rows.shape[0] else zeros(0, d)
    comp = complement_basis(u, d, p)
    full = np.concatenate([u, comp], axis=0).T  # columns: basis of U then complement
    inv = inverse(full, p)
    proj = inv[u.shape[0]:]
    section = comp.T.copy()
    return proj, section


def span_contains(basis_rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    if basis_rows.shape[0] == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([basis_rows, v]), p) == rank(basis_rows, p)


def is_subspace(a_rows: np.ndarray, b_rows: np.ndarray, p: int) -> bool:
    """Row space of ``a_rows`` contained in row space of ``b_rows``."""
    if a_rows.shape[0] == 0:
        return True
    if b_rows.shape[0] == 0:
        return not np.any(a_rows % p)
    return rank(np.vstack([b_rows, a_rows]), p) == rank(b_rows, p)


def intersect(a_rows: np.ndarray, b_rows: np.ndarray, p: int) -> np.ndarray:
    """RREF row basis of the intersection of two row spaces in F_p^d."""
    d = a_rows.shape[1]
    if a_rows.shape[0] == 0 or b_rows.shape[0] == 0:
        return zeros(0, d)
    # x a = y b  <=>  [a^T | -b^T] (x, y) = 0
    k = kernel_basis(np.concatenate([a_rows.T, (-b_rows.T) % p], axis=1), p)
    vecs = matmul(k[: a_rows.shape[0]].T, a_rows, p)
    return row_basis(vecs, p)


def image_rows(sub_rows: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of f(U) where U is spanned by ``sub_rows`` and f acts on columns."""
    if sub_rows.shape[0] == 0:
        return zeros(0, f.shape[0])
    return row_basis(matmul(sub_rows, f.T, p), p)


def preimage_rows(f: np.ndarray, target_rows: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of f^{-1}(W) where W is spanned by ``target_rows``."""
    proj, _ = quotient_maps(target_rows, f.shape[0], p)
    k = kernel_basis(matmul(proj, f, p), p)
    return row_basis(k.T, p)


def key(m: np.ndarray) -> tuple:
    """Hashable identity of a matrix (shape and entries)."""
    return (m.shape, m.tobytes())


def vectors(d: int, p: int):
    """Iterate all vectors of F_p^d in lexicographic order."""
    for t in itertools.product(range(p), repeat=d):
        yield np.array(t, dtype=np.int64)


@lru_cache(maxsize=None)
def enumerate_subspaces(d: int, e: int, p: int) -> tuple[np.ndarray, ...]:
    """All e-dimensional subspaces of F_p^d as canonical ``e x d`` RREF matrices.

    Enumerates pivot patterns, then assigns every value to the free entries.
    The result is cached and its arrays are read-only.
    """
    if e < 0 or e > d:
        raise ValueError(f"subspace dimension {e} outside [0, {d}]")
    out = []
    for pivots in itertools.combinations(range(d), e):
        free_slots = [
            (r, c)
            for r, pc in enumerate(pivots)
            for c in range(pc + 1, d)
            if c not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            m = zeros(e, d)
            for r, pc in enumerate(pivots):
                m[r, pc] = 1
            for (r, c), v in zip(free_slots, values):
                m[r, c] = v
            m.setflags(write=False)
            out.append(m)
    return tuple(out)


def gaussian_binomial(d: int, e: int, q: int) -> int:
    """Number of e-dimensional subspaces of F_q^d."""
    if e < 0 or e > d:
        return 0
    num = den = 1
    for k in range(e):
        num *= q ** (d - k) - 1
        den *= q ** (k + 1) - 1
    return num // den
