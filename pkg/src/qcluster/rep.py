"""Representations of acyclic quivers over F_p and their homological calculus.

Arrow ``a: i -> j`` carries a ``dim_j x dim_i`` matrix. Hom and Ext^1 are
computed from the standard two-term complex

    ⊕_v Hom(M_v, N_v) --δ--> ⊕_a Hom(M_{s(a)}, N_{t(a)}),
    δ(φ)_a = N_a φ_{s(a)} - φ_{t(a)} M_a,

whose kernel is Hom(M, N) and whose cokernel is Ext^1(M, N). The AR
translates are τM = D Ext^1(M, kQ) and τ⁻N = Ext^1(D kQ, N), built vertexwise
from the indecomposable projectives and injectives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import sympy

from . import field_linalg as fl
from .quiver import ParseError, Quiver


class RepError(ValueError):
    pass


class ProjectiveSummandError(RepError):
    def __init__(self, multiplicities):
        self.multiplicities = tuple(multiplicities)
        names = ", ".join(f"P{v + 1}^{c}" for v, c in enumerate(self.multiplicities) if c)
        super().__init__(f"τ is undefined: module has projective summands {names}")


class InjectiveSummandError(RepError):
    def __init__(self, multiplicities):
        self.multiplicities = tuple(multiplicities)
        names = ", ".join(f"I{v + 1}^{c}" for v, c in enumerate(self.multiplicities) if c)
        super().__init__(f"τ⁻ is undefined: module has injective summands {names}")


class InternalConsistencyError(RuntimeError):
    """A state that the theory rules out; reaching it means a bug."""


class Representation:
    """A finite-dimensional representation of ``quiver`` over F_p."""

    def __init__(self, quiver: Quiver, p: int, dim, maps):
        self.quiver = quiver
        self.p = fl.check_prime(p)
        self.dim = tuple(int(d) for d in dim)
        if len(self.dim) != quiver.n or any(d < 0 for d in self.dim):
            raise RepError(f"bad dimension vector {self.dim} for {quiver.n} vertices")
        maps = tuple(np.asarray(m, dtype=np.int64) % p for m in maps)
        if len(maps) != len(quiver.arrows):
            raise RepError(f"expected {len(quiver.arrows)} arrow maps, got {len(maps)}")
        fixed = []
        for a, ((s, t), m) in enumerate(zip(quiver.arrows, maps)):
            if m.size == 0:
                m = m.reshape(self.dim[t], self.dim[s])
            if m.shape != (self.dim[t], self.dim[s]):
                raise RepError(
                    f"arrow {a + 1} ({s + 1}->{t + 1}) needs a {self.dim[t]}x{self.dim[s]} matrix, got {m.shape}"
                )
            m.setflags(write=False)
            fixed.append(m)
        self.maps = tuple(fixed)
        self._key = (quiver, p, self.dim, tuple(m.tobytes() for m in self.maps))

    def __eq__(self, other):
        return isinstance(other, Representation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Representation(dim={self.dim}, p={self.p})"

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> np.ndarray:
        return np.array(self.dim, dtype=np.int64)

    def __add__(self, other: "Representation") -> "Representation":
        return direct_sum(self, other)

    def to_text(self) -> str:
        lines = ["dim " + " ".join(map(str, self.dim))]
        for a, m in enumerate(self.maps):
            lines.append(f"map {a + 1} {m.shape[0]} {m.shape[1]}")
            lines.extend(" ".join(str(int(x)) for x in row) for row in m)
        return "\n".join(lines)


def zero_rep(q: Quiver, p: int) -> Representation:
    return Representation(q, p, [0] * q.n, [fl.zeros(0, 0) for _ in q.arrows])


def direct_sum(*reps: Representation) -> Representation:
    """Direct sum with the summands' bases concatenated in order at every vertex."""
    if not reps:
        raise RepError("empty direct sum")
    q, p = reps[0].quiver, reps[0].p
    for r in reps:
        _same_field(reps[0], r)
    dim = [sum(r.dim[v] for r in reps) for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = fl.zeros(dim[t], dim[s])
        ro = co = 0
        for r in reps:
            m[ro : ro + r.dim[t], co : co + r.dim[s]] = r.maps[a]
            ro += r.dim[t]
            co += r.dim[s]
        maps.append(m)
    return Representation(q, p, dim, maps)


def _same_field(m: Representation, n: Representation):
    if m.quiver != n.quiver:
        raise RepError("representations live on different quivers")
    if m.p != n.p:
        raise RepError(f"field mismatch: F_{m.p} vs F_{n.p}")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A morphism given by one matrix per vertex, ``comps[v]: source_v -> target_v``."""

    source: Representation
    target: Representation
    comps: tuple

    def __post_init__(self):
        comps = []
        for v, c in enumerate(self.comps):
            c = np.asarray(c, dtype=np.int64) % self.source.p
            c = c.reshape(self.target.dim[v], self.source.dim[v])
            comps.append(c)
        object.__setattr__(self, "comps", tuple(comps))

    def is_natural(self) -> bool:
        p = self.source.p
        for a, (s, t) in enumerate(self.source.quiver.arrows):
            lhs = fl.matmul(self.target.maps[a], self.comps[s], p)
            rhs = fl.matmul(self.comps[t], self.source.maps[a], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return not any(np.any(c) for c in self.comps)

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self ∘ first``."""
        p = self.source.p
        return ModuleMap(
            first.source,
            self.target,
            tuple(fl.matmul(c2, c1, p) for c2, c1 in zip(self.comps, first.comps)),
        )

    def ranks(self) -> tuple[int, ...]:
        return tuple(fl.rank(c, self.source.p) for c in self.comps)

    def flat(self) -> np.ndarray:
        return np.concatenate([c.reshape(-1) for c in self.comps]) if self.comps else np.zeros(0, np.int64)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(c * x for x in self.comps))


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, tuple(fl.identity(d) for d in m.dim))


def zero_map(m: Representation, n: Representation) -> ModuleMap:
    return ModuleMap(m, n, tuple(fl.zeros(n.dim[v], m.dim[v]) for v in range(m.quiver.n)))


# -- Hom and Ext -------------------------------------------------------------


def _offsets(sizes):
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out, acc


@lru_cache(maxsize=4096)
def coboundary(m: Representation, n: Representation) -> np.ndarray:
    """Matrix of δ from 0-cochains (row-major φ_v blocks) to 1-cochains (row-major ξ_a blocks)."""
    _same_field(m, n)
    q = m.quiver
    c0_sizes = [n.dim[v] * m.dim[v] for v in range(q.n)]
    c1_sizes = [n.dim[t] * m.dim[s] for s, t in q.arrows]
    c0_off, c0 = _offsets(c0_sizes)
    c1_off, c1 = _offsets(c1_sizes)
    d = fl.zeros(c1, c0)
    for a, (s, t) in enumerate(q.arrows):
        r0 = c1_off[a]
        rows = c1_sizes[a]
        if rows == 0:
            continue
        # N_a φ_s  ->  kron(N_a, I_{m_s})
        if c0_sizes[s]:
            d[r0 : r0 + rows, c0_off[s] : c0_off[s] + c0_sizes[s]] += np.kron(n.maps[a], np.eye(m.dim[s], dtype=np.int64))
        # - φ_t M_a  ->  -kron(I_{n_t}, M_a^T)
        if c0_sizes[t]:
            d[r0 : r0 + rows, c0_off[t] : c0_off[t] + c0_sizes[t]] -= np.kron(np.eye(n.dim[t], dtype=np.int64), m.maps[a].T)
    return d % m.p


def _split_cochain0(m: Representation, n: Representation, vec) -> tuple:
    out, off = [], 0
    for v in range(m.quiver.n):
        size = n.dim[v] * m.dim[v]
        out.append(np.asarray(vec[off : off + size], dtype=np.int64).reshape(n.dim[v], m.dim[v]))
        off += size
    return tuple(out)


@lru_cache(maxsize=4096)
def hom_basis(m: Representation, n: Representation) -> tuple[ModuleMap, ...]:
    """A basis of Hom(M, N)."""
    d = coboundary(m, n)
    k = fl.kernel_basis(d, m.p)
    return tuple(ModuleMap(m, n, _split_cochain0(m, n, k[:, j])) for j in range(k.shape[1]))


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_basis(m, n))


def ext_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N) = [M, N] - <dim M, dim N>."""
    from .quiver import euler_form

    return hom_dim(m, n) - euler_form(m.quiver.euler, m.dim, n.dim)


def hom_coords(basis: tuple[ModuleMap, ...], f: ModuleMap) -> np.ndarray:
    """Coordinates of ``f`` in ``basis`` (which must span a space containing f)."""
    p = f.source.p
    if not basis:
        if not f.is_zero():
            raise InternalConsistencyError("nonzero map in the zero Hom space")
        return np.zeros(0, np.int64)
    mat = np.stack([b.flat() for b in basis], axis=1)
    x = fl.solve(mat, f.flat(), p)
    if x is None:
        raise InternalConsistencyError("map not in the span of the given Hom basis")
    return x


def combine(basis: tuple[ModuleMap, ...], coeffs, source=None, target=None) -> ModuleMap:
    """The linear combination Σ c_k basis[k]."""
    if not basis:
        return zero_map(source, target)
    comps = [sum(int(c) * b.comps[v] for c, b in zip(coeffs, basis)) for v in range(len(basis[0].comps))]
    return ModuleMap(basis[0].source, basis[0].target, tuple(comps))


def all_homs(m: Representation, n: Representation):
    """Iterate every element of Hom(M, N) (p^[M,N] of them), zero first."""
    basis = hom_basis(m, n)
    for coeffs in itertools.product(range(m.p), repeat=len(basis)):
        yield combine(basis, coeffs, m, n)


class ExtSpace:
    """Ext^1(M, N) as 1-cochains modulo the image of δ.

    ``reps`` rows are cochains whose classes form a basis of Ext^1; ``coords``
    sends any cochain to its coordinates in that basis.
    """

    def __init__(self, m: Representation, n: Representation):
        _same_field(m, n)
        self.M, self.N, self.p = m, n, m.p
        q = m.quiver
        self.c1_sizes = [n.dim[t] * m.dim[s] for s, t in q.arrows]
        self.c1_offsets, self.cochain_dim = _offsets(self.c1_sizes)
        delta = coboundary(m, n)
        img = fl.row_basis(delta.T, self.p) if delta.size else fl.zeros(0, self.cochain_dim)
        comp = fl.complement_basis(img, self.cochain_dim, self.p)
        self.image = img
        self.reps = comp
        self.dim = comp.shape[0]
        if self.cochain_dim:
            full = np.concatenate([img, comp], axis=0).T
            self._coord = fl.inverse(full, self.p)[img.shape[0] :]
        else:
            self._coord = fl.zeros(0, 0)

    def coords(self, cochain) -> np.ndarray:
        cochain = np.asarray(cochain, dtype=np.int64).reshape(-1)
        if self.cochain_dim == 0:
            return np.zeros(0, np.int64)
        return fl.matmul(self._coord, cochain[:, None], self.p)[:, 0]

    def cochain(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if self.dim == 0:
            return np.zeros(self.cochain_dim, np.int64)
        return fl.matmul(coeffs[None, :], self.reps, self.p)[0]

    def split(self, cochain) -> tuple:
        """Per-arrow matrices ξ_a: M_{s(a)} -> N_{t(a)}."""
        out = []
        for a, (s, t) in enumerate(self.M.quiver.arrows):
            o = self.c1_offsets[a]
            out.append(np.asarray(cochain[o : o + self.c1_sizes[a]], dtype=np.int64).reshape(self.N.dim[t], self.M.dim[s]))
        return tuple(out)

    def join(self, blocks) -> np.ndarray:
        if not blocks:
            return np.zeros(0, np.int64)
        return np.concatenate([np.asarray(b, dtype=np.int64).reshape(-1) for b in blocks]) % self.p

    def is_trivial(self, cochain) -> bool:
        return not np.any(self.coords(cochain))

    def coefficient_vectors(self, nonzero: bool = False):
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            if nonzero and not any(coeffs):
                continue
            yield coeffs


@lru_cache(maxsize=4096)
def ext_space(m: Representation, n: Representation) -> ExtSpace:
    return ExtSpace(m, n)


# -- standard modules --------------------------------------------------------


@lru_cache(maxsize=None)
def simple(q: Quiver, p: int, v: int) -> Representation:
    dim = [0] * q.n
    dim[v] = 1
    return Representation(q, p, dim, [fl.zeros(dim[t], dim[s]) for s, t in q.arrows])


@lru_cache(maxsize=None)
def projective(q: Quiver, p: int, v: int) -> Representation:
    """P_v: basis at vertex u = paths v -> u; arrows append to paths."""
    basis = [q.paths_between(v, u) for u in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = fl.zeros(len(basis[t]), len(basis[s]))
        for c, w in enumerate(basis[s]):
            m[basis[t].index(w + (a,)), c] = 1
        maps.append(m)
    return Representation(q, p, [len(b) for b in basis], maps)


@lru_cache(maxsize=None)
def injective(q: Quiver, p: int, v: int) -> Representation:
    """I_v: basis at vertex u = dual of paths u -> v."""
    basis = [q.paths_between(u, v) for u in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        # dual of paths(t->v) -> paths(s->v), w |-> (a then w)
        g = fl.zeros(len(basis[s]), len(basis[t]))
        for c, w in enumerate(basis[t]):
            g[basis[s].index((a,) + w), c] = 1
        maps.append(g.T.copy())
    return Representation(q, p, [len(b) for b in basis], maps)


def standard_modules(q: Quiver, p: int):
    """``(simples, projectives, injectives)``, each a list indexed by vertex."""
    fl.check_prime(p)
    return (
        [simple(q, p, v) for v in range(q.n)],
        [projective(q, p, v) for v in range(q.n)],
        [injective(q, p, v) for v in range(q.n)],
    )


@lru_cache(maxsize=None)
def rho(q: Quiver, p: int, a: int) -> ModuleMap:
    """For a: i -> j, the map P_j -> P_i given by precomposing paths with a."""
    i, j = q.arrows[a]
    pj, pi = projective(q, p, j), projective(q, p, i)
    comps = []
    for u in range(q.n):
        src = q.paths_between(j, u)
        dst = q.paths_between(i, u)
        m = fl.zeros(len(dst), len(src))
        for c, w in enumerate(src):
            m[dst.index((a,) + w), c] = 1
        comps.append(m)
    return ModuleMap(pj, pi, tuple(comps))


@lru_cache(maxsize=None)
def lam(q: Quiver, p: int, a: int) -> ModuleMap:
    """For a: i -> j, the map I_j -> I_i dual to appending a to paths ending at i."""
    i, j = q.arrows[a]
    ij, ii = injective(q, p, j), injective(q, p, i)
    comps = []
    for u in range(q.n):
        to_i = q.paths_between(u, i)
        to_j = q.paths_between(u, j)
        h = fl.zeros(len(to_j), len(to_i))
        for c, w in enumerate(to_i):
            h[to_j.index(w + (a,)), c] = 1
        comps.append(h.T.copy())
    return ModuleMap(ij, ii, tuple(comps))


def dims_matrix(reps) -> np.ndarray:
    return np.array([r.dim for r in reps], dtype=np.int64).T


def decompose_dims(vec, basis_dims: np.ndarray) -> tuple[int, ...] | None:
    """Unique ℕ-coefficients c with basis_dims @ c = vec, or None."""
    sol = sympy.Matrix(basis_dims.tolist()).solve(sympy.Matrix([int(x) for x in vec]))
    out = []
    for x in sol:
        if not x.is_integer or x < 0:
            return None
        out.append(int(x))
    return tuple(out)


def injective_dims(q: Quiver) -> np.ndarray:
    return dims_matrix([injective(q, 2, v) for v in range(q.n)])


def projective_dims(q: Quiver) -> np.ndarray:
    return dims_matrix([projective(q, 2, v) for v in range(q.n)])


def injective_sum(q: Quiver, p: int, mult) -> Representation:
    parts = [injective(q, p, v) for v, c in enumerate(mult) for _ in range(c)]
    return direct_sum(*parts) if parts else zero_rep(q, p)


def projective_sum(q: Quiver, p: int, mult) -> Representation:
    parts = [projective(q, p, v) for v, c in enumerate(mult) for _ in range(c)]
    return direct_sum(*parts) if parts else zero_rep(q, p)


# -- kernels, cokernels, sub- and quotient modules ---------------------------


def _induced_on_sub(m: Representation, bases_cols) -> Representation:
    """Restriction of M to the arrow-stable subspaces spanned by ``bases_cols[v]``."""
    p = m.p
    maps = []
    for a, (s, t) in enumerate(m.quiver.arrows):
        img = fl.matmul(m.maps[a], bases_cols[s], p)
        x = fl.solve_matrix(bases_cols[t], img, p)
        if x is None:
            raise RepError(f"subspaces are not stable under arrow {a + 1}")
        maps.append(x)
    return Representation(m.quiver, p, [b.shape[1] for b in bases_cols], maps)


def kernel_of(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    m, p = f.source, f.source.p
    cols = [fl.kernel_basis(c, p) for c in f.comps]
    k = _induced_on_sub(m, cols)
    return k, ModuleMap(k, m, tuple(cols))


def image_of(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    n, p = f.target, f.source.p
    cols = [fl.row_basis(c.T, p).T if c.size else fl.zeros(c.shape[0], 0) for c in f.comps]
    im = _induced_on_sub(n, cols)
    return im, ModuleMap(im, n, tuple(cols))


def _quotient(n: Representation, sub_rows) -> tuple[Representation, ModuleMap]:
    p = n.p
    projs, sects = [], []
    for v in range(n.quiver.n):
        pr, se = fl.quotient_maps(sub_rows[v], n.dim[v], p)
        projs.append(pr)
        sects.append(se)
    maps = []
    for a, (s, t) in enumerate(n.quiver.arrows):
        maps.append(fl.matmul(fl.matmul(projs[t], n.maps[a], p), sects[s], p))
    c = Representation(n.quiver, p, [pr.shape[0] for pr in projs], maps)
    return c, ModuleMap(n, c, tuple(projs))


def cokernel_of(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    p = f.source.p
    rows = [fl.row_basis(c.T, p) if c.size else fl.zeros(0, c.shape[0]) for c in f.comps]
    return _quotient(f.target, rows)


def as_rows(r, d: int) -> np.ndarray:
    """``r`` as a k x d matrix of row vectors (handles empty inputs)."""
    a = np.asarray(r, dtype=np.int64)
    if a.size == 0:
        return fl.zeros(a.shape[0] if a.ndim == 2 else 0, d)
    return a.reshape(-1, d)


def submodule(m: Representation, sub_rows) -> tuple[Representation, ModuleMap]:
    """The subrepresentation with U_v = row space of ``sub_rows[v]`` and its inclusion."""
    cols = [as_rows(r, m.dim[v]).T for v, r in enumerate(sub_rows)]
    u = _induced_on_sub(m, cols)
    return u, ModuleMap(u, m, tuple(cols))


def quotient(m: Representation, sub_rows) -> tuple[Representation, ModuleMap]:
    rows = [as_rows(r, m.dim[v]) for v, r in enumerate(sub_rows)]
    return _quotient(m, rows)


# -- Nakayama functor and AR translates --------------------------------------


def _functor_rep(q: Quiver, p: int, spaces, arrow_matrix) -> Representation:
    dims = [s for s in spaces]
    maps = [arrow_matrix(a) for a in range(len(q.arrows))]
    return Representation(q, p, dims, maps)


def _pushforward_cochain(space: ExtSpace, target_space: ExtSpace, g: ModuleMap, cochain) -> np.ndarray:
    """Image of an Ext(M, X) cochain under g: X -> Y, as a cochain of Ext(M, Y)."""
    p = space.p
    blocks = [fl.matmul(g.comps[t], xi, p) for xi, (s, t) in zip(space.split(cochain), space.M.quiver.arrows)]
    return target_space.join(blocks)


def _pullback_cochain(space: ExtSpace, target_space: ExtSpace, f: ModuleMap, cochain) -> np.ndarray:
    """Image of an Ext(Y, N) cochain under f: X -> Y, as a cochain of Ext(X, N)."""
    p = space.p
    blocks = [fl.matmul(xi, f.comps[s], p) for xi, (s, t) in zip(space.split(cochain), space.M.quiver.arrows)]
    return target_space.join(blocks)


def _ext_matrix(src: ExtSpace, dst: ExtSpace, transform) -> np.ndarray:
    """Matrix (dst.dim x src.dim) of a cochain-level map in Ext coordinates."""
    cols = []
    for k in range(src.dim):
        cols.append(dst.coords(transform(src.reps[k])))
    if not cols:
        return fl.zeros(dst.dim, 0)
    return np.stack(cols, axis=1) % src.p


@lru_cache(maxsize=2048)
def tau_unchecked(m: Representation) -> Representation:
    """D Ext^1(M, kQ) with no check for projective summands (they contribute 0)."""
    q, p = m.quiver, m.p
    spaces = [ext_space(m, projective(q, p, v)) for v in range(q.n)]
    maps = []
    for a, (i, j) in enumerate(q.arrows):
        r = rho(q, p, a)
        x = _ext_matrix(spaces[j], spaces[i], lambda c: _pushforward_cochain(spaces[j], spaces[i], r, c))
        maps.append(x.T.copy())
    return Representation(q, p, [s.dim for s in spaces], maps)


def tau(m: Representation, strict: bool = True) -> Representation:
    """Auslander-Reiten translate τM = D Ext^1(M, kQ).

    With ``strict`` (default) a module with projective summands is rejected,
    naming the multiplicities (read off from dim τM - Φ·dim M).
    """
    t = tau_unchecked(m)
    if strict:
        diff = t.dim_vector() - m.quiver.coxeter @ m.dim_vector()
        if np.any(diff):
            mult = decompose_dims(diff, injective_dims(m.quiver))
            if mult is None:
                raise InternalConsistencyError(f"dim τM - Φ·dim M = {diff} is not a sum of injective dims")
            raise ProjectiveSummandError(mult)
    return t


def tau_map(f: ModuleMap) -> ModuleMap:
    """τ(f): τX -> τY for f: X -> Y (functorial, via pulling back Ext(Y, P_v) along f)."""
    x, y = f.source, f.target
    q, p = x.quiver, x.p
    tx, ty = tau_unchecked(x), tau_unchecked(y)
    comps = []
    for v in range(q.n):
        sy, sx = ext_space(y, projective(q, p, v)), ext_space(x, projective(q, p, v))
        mat = _ext_matrix(sy, sx, lambda c: _pullback_cochain(sy, sx, f, c))
        comps.append(mat.T.copy())
    return ModuleMap(tx, ty, tuple(comps))


@lru_cache(maxsize=2048)
def tau_inverse_unchecked(n: Representation) -> Representation:
    q, p = n.quiver, n.p
    spaces = [ext_space(injective(q, p, v), n) for v in range(q.n)]
    maps = []
    for a, (i, j) in enumerate(q.arrows):
        g = lam(q, p, a)
        maps.append(_ext_matrix(spaces[i], spaces[j], lambda c: _pullback_cochain(spaces[i], spaces[j], g, c)))
    return Representation(q, p, [s.dim for s in spaces], maps)


def tau_inverse(n: Representation, strict: bool = True) -> Representation:
    """Inverse AR translate τ⁻N = Ext^1(D kQ, N)."""
    t = tau_inverse_unchecked(n)
    if strict:
        phi_inv = np.array(sympy.Matrix(n.quiver.coxeter.tolist()).inv().tolist(), dtype=np.int64)
        diff = t.dim_vector() - phi_inv @ n.dim_vector()
        if np.any(diff):
            mult = decompose_dims(diff, projective_dims(n.quiver))
            if mult is None:
                raise InternalConsistencyError(f"dim τ⁻N - Φ⁻¹·dim N = {diff} is not a sum of projective dims")
            raise InjectiveSummandError(mult)
    return t


def nakayama(x: Representation) -> Representation:
    """ν X = D Hom(X, kQ)."""
    q, p = x.quiver, x.p
    bases = [hom_basis(x, projective(q, p, v)) for v in range(q.n)]
    maps = []
    for a, (i, j) in enumerate(q.arrows):
        r = rho(q, p, a)
        cols = [hom_coords(bases[i], r.compose(b)) for b in bases[j]]
        m = np.stack(cols, axis=1) if cols else fl.zeros(len(bases[i]), 0)
        maps.append(m.T.copy())
    return Representation(q, p, [len(b) for b in bases], maps)


def nakayama_inverse(y: Representation) -> Representation:
    """ν⁻ Y = Hom(D kQ, Y)."""
    q, p = y.quiver, y.p
    bases = [hom_basis(injective(q, p, v), y) for v in range(q.n)]
    maps = []
    for a, (i, j) in enumerate(q.arrows):
        g = lam(q, p, a)
        cols = [hom_coords(bases[j], b.compose(g)) for b in bases[i]]
        maps.append(np.stack(cols, axis=1) if cols else fl.zeros(len(bases[j]), 0))
    return Representation(q, p, [len(b) for b in bases], maps)


def injective_split(x: Representation) -> tuple[Representation, tuple[int, ...]]:
    """Write X = τA ⊕ I with I injective: returns ``(A, injective multiplicities of I)``."""
    a = tau_inverse(x, strict=False)
    ta = tau(a)
    i = x.dim_vector() - ta.dim_vector()
    mult = decompose_dims(i, injective_dims(x.quiver))
    if mult is None:
        raise InternalConsistencyError(f"dim X - dim τA = {i} is not an ℕ-combination of injective dims")
    return a, mult


def injective_dim_vector(q: Quiver, mult) -> np.ndarray:
    return injective_dims(q) @ np.asarray(mult, dtype=np.int64)


def projective_dim_vector(q: Quiver, mult) -> np.ndarray:
    return projective_dims(q) @ np.asarray(mult, dtype=np.int64)


# -- isomorphism -------------------------------------------------------------


def _find_iso(m: Representation, n: Representation, budget: int, rng) -> bool:
    basis = hom_basis(m, n)
    p = m.p
    if not basis:
        return m.is_zero() and n.is_zero()
    exhaustive = p ** len(basis) <= 4096

    def is_iso(f):
        return all(c.shape[0] == c.shape[1] and fl.rank(c, p) == c.shape[0] for c in f.comps)

    if exhaustive:
        return any(is_iso(combine(basis, c)) for c in itertools.product(range(p), repeat=len(basis)))
    for _ in range(budget):
        if is_iso(combine(basis, rng.integers(0, p, len(basis)))):
            return True
    return False


def iso_test(m: Representation, n: Representation, budget: int = 200, seed: int = 0) -> bool:
    """M ≅ N, decided by an explicit isomorphism search after Hom-dimension filters.

    Small Hom spaces (≤ 4096 elements) are searched exhaustively; larger ones
    with ``budget`` random candidates, so a negative answer there is heuristic.
    """
    _same_field(m, n)
    if m.dim != n.dim:
        return False
    if hom_dim(m, m) != hom_dim(m, n) or hom_dim(n, n) != hom_dim(n, m):
        return False
    rng = np.random.default_rng(seed)
    return _find_iso(m, n, budget, rng)


# -- text format -------------------------------------------------------------


def parse_module(text: str, q: Quiver, p: int) -> Representation:
    """Parse ``dim d1 .. dn`` then ``map A r c`` blocks, or shorthands ``S i``/``P i``/``I i``.

    Shorthands may be joined with ``+`` to form a direct sum; ``0`` is the zero module.
    """
    stripped = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not stripped.startswith("dim"):
        return _parse_shorthand(stripped, q, p)
    lines = [(i + 1, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    it = iter(lines)
    lineno, toks = next(it)
    if toks[0] != "dim" or len(toks) != q.n + 1:
        raise ParseError(f"expected 'dim' followed by {q.n} integers", lineno)
    try:
        dim = [int(x) for x in toks[1:]]
    except ValueError:
        raise ParseError("dimensions must be integers", lineno) from None
    maps = [None] * len(q.arrows)
    for lineno, toks in it:
        if toks[0] != "map" or len(toks) != 4:
            raise ParseError("expected 'map A r c'", lineno)
        try:
            a, r, c = (int(x) for x in toks[1:])
        except ValueError:
            raise ParseError("map header needs integers", lineno) from None
        if not 1 <= a <= len(q.arrows):
            raise ParseError(f"arrow index {a} out of range", lineno)
        rows = []
        for _ in range(r):
            try:
                rl, rt = next(it)
            except StopIteration:
                raise ParseError("matrix ends early", lineno) from None
            if len(rt) != c:
                raise ParseError(f"expected {c} entries", rl)
            try:
                rows.append([int(x) for x in rt])
            except ValueError:
                raise ParseError("matrix entries must be integers", rl) from None
        maps[a - 1] = np.array(rows, dtype=np.int64).reshape(r, c)
    for a, (s, t) in enumerate(q.arrows):
        if maps[a] is None:
            maps[a] = fl.zeros(dim[t], dim[s])
    try:
        return Representation(q, p, dim, maps)
    except RepError as exc:
        raise ParseError(str(exc), 1) from None


def _parse_shorthand(text: str, q: Quiver, p: int) -> Representation:
    parts = []
    for chunk in text.split("+"):
        toks = chunk.split()
        if toks == ["0"]:
            continue
        if len(toks) != 2 or toks[0] not in ("S", "P", "I") or not toks[1].isdigit():
            raise ParseError(f"cannot parse module shorthand {chunk.strip()!r}", 1)
        v = int(toks[1]) - 1
        if not 0 <= v < q.n:
            raise ParseError(f"vertex {v + 1} out of range 1..{q.n}", 1)
        parts.append({"S": simple, "P": projective, "I": injective}[toks[0]](q, p, v))
    return direct_sum(*parts) if parts else zero_rep(q, p)


def load_module(spec: str, q: Quiver, p: int) -> Representation:
    path = Path(spec)
    if path.is_file():
        return parse_module(path.read_text(), q, p)
    return parse_module(spec, q, p)


def thin_module(q: Quiver, p: int, support) -> Representation:
    """Module with k at each vertex of ``support`` and identity on arrows inside it."""
    support = set(support)
    dim = [1 if v in support else 0 for v in range(q.n)]
    maps = [np.ones((dim[t], dim[s]), dtype=np.int64) for s, t in q.arrows]
    return Representation(q, p, dim, maps)


def interval_modules(q: Quiver, p: int) -> list[Representation]:
    """The indecomposables of a linearly oriented A_n: one per interval [i, j]."""
    return [thin_module(q, p, range(i, j + 1)) for i in range(q.n) for j in range(i, q.n)]


def random_rep(q: Quiver, p: int, dim, rng) -> Representation:
    maps = [rng.integers(0, p, (dim[t], dim[s])) for s, t in q.arrows]
    return Representation(q, p, dim, maps)
