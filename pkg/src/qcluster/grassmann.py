"""Quiver Grassmannians over F_p: enumeration, counts and counting polynomials."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import sympy

from . import field_linalg as fl
from .quiver import euler_form
from .rep import Representation, RepError, as_rows, submodule


@dataclass(frozen=True, eq=False)
class SubRep:
    """Arrow-stable subspaces U_v ⊆ M_v, each stored as a canonical RREF row basis."""

    rows: tuple

    def __post_init__(self):
        for r in self.rows:
            r.setflags(write=False)

    @property
    def dim(self) -> tuple[int, ...]:
        return tuple(r.shape[0] for r in self.rows)

    @property
    def key(self) -> tuple:
        return tuple(fl.key(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, SubRep) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SubRep(dim={self.dim})"

    def module(self, m: Representation):
        """The submodule as a representation together with its inclusion into ``m``."""
        return submodule(m, self.rows)

    def contains(self, other: "SubRep", p: int) -> bool:
        return all(fl.is_subspace(b, a, p) for a, b in zip(self.rows, other.rows))


def canonical_sub(rows, m: Representation) -> SubRep:
    p = m.p
    out = []
    for v, r in enumerate(rows):
        r = as_rows(r, m.dim[v])
        out.append(fl.row_basis(r, p) if r.shape[0] else fl.zeros(0, m.dim[v]))
    return SubRep(tuple(out))


def is_stable(m: Representation, rows) -> bool:
    p = m.p
    for a, (s, t) in enumerate(m.quiver.arrows):
        img = fl.image_rows(rows[s], m.maps[a], p)
        if not fl.is_subspace(img, rows[t], p):
            return False
    return True


def zero_sub(m: Representation) -> SubRep:
    return SubRep(tuple(fl.zeros(0, d) for d in m.dim))


def full_sub(m: Representation) -> SubRep:
    return SubRep(tuple(fl.identity(d) for d in m.dim))


def _lifts(required: np.ndarray, d: int, e: int, p: int):
    """All e-dim subspaces of F_p^d containing the row space ``required`` (RREF)."""
    r = required.shape[0]
    if e < r:
        return
    proj, section = fl.quotient_maps(required, d, p)
    for w in fl.enumerate_subspaces(d - r, e - r, p):
        lifted = fl.matmul(w, section.T, p) if w.shape[0] else fl.zeros(0, d)
        yield fl.row_basis(np.concatenate([required, lifted], axis=0), p) if e else fl.zeros(0, d)


def sub_reps(m: Representation, e) -> list[SubRep]:
    """Every subrepresentation of ``m`` with dimension vector ``e``, each exactly once.

    Vertices are visited in topological order; at vertex j the subspace must
    contain Σ_{a: i->j} M_a(U_i), so only subspaces above that are tried.
    """
    e = tuple(int(x) for x in e)
    if len(e) != m.quiver.n:
        raise RepError("dimension vector length mismatch")
    if any(x < 0 or x > d for x, d in zip(e, m.dim)):
        return []
    q, p = m.quiver, m.p
    order = q.topological_order
    incoming = {v: [(a, s) for a, (s, t) in enumerate(q.arrows) if t == v] for v in range(q.n)}
    out: list[SubRep] = []
    chosen: dict[int, np.ndarray] = {}

    def walk(k: int):
        if k == len(order):
            out.append(SubRep(tuple(chosen[v] for v in range(q.n))))
            return
        v = order[k]
        parts = [fl.image_rows(chosen[s], m.maps[a], p) for a, s in incoming[v]]
        parts = [x for x in parts if x.shape[0]]
        req = fl.row_basis(np.concatenate(parts, axis=0), p) if parts else fl.zeros(0, m.dim[v])
        for u in _lifts(req, m.dim[v], e[v], p):
            chosen[v] = u
            walk(k + 1)
        chosen.pop(v, None)

    walk(0)
    return out


@lru_cache(maxsize=1024)
def all_sub_reps(m: Representation) -> tuple[SubRep, ...]:
    """All subrepresentations of ``m``, grouped by dimension vector in lexicographic order."""
    out = []
    for e in itertools.product(*(range(d + 1) for d in m.dim)):
        out.extend(sub_reps(m, e))
    return tuple(out)


@lru_cache(maxsize=1024)
def gr_counts(m: Representation) -> dict:
    """``{e: |Gr_e(M)|}`` for every e with a nonempty Grassmannian."""
    return dict(Counter(s.dim for s in all_sub_reps(m)))


def count_gr(m: Representation, e, p: int | None = None) -> int:
    if p is not None and p != m.p:
        raise RepError(f"module is defined over F_{m.p}, not F_{p}")
    return gr_counts(m).get(tuple(int(x) for x in e), 0)


# -- counting polynomials ----------------------------------------------------


class NotPolynomialCount(ArithmeticError):
    pass


@dataclass(frozen=True)
class CountingPolynomial:
    """Integer polynomial in q, coefficients in increasing degree."""

    coeffs: tuple[int, ...]

    def __call__(self, q: int) -> int:
        return sum(c * q**k for k, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


_Q = sympy.Symbol("q")


def interpolate(points, held_out=None, what: str = "count") -> CountingPolynomial:
    """Interpolating polynomial through ``(x, y)`` points with integral coefficients.

    ``held_out`` points are re-evaluated; any mismatch or a fractional
    coefficient raises ``NotPolynomialCount``.
    """
    points = [(int(x), int(y)) for x, y in points]
    if len({x for x, _ in points}) != len(points):
        raise ValueError("interpolation nodes must be distinct")
    poly = sympy.Poly(sympy.interpolate(points, _Q), _Q) if len(points) > 1 else sympy.Poly(points[0][1], _Q)
    coeffs = list(reversed(poly.all_coeffs()))
    if any(not c.is_integer for c in coeffs):
        raise NotPolynomialCount(f"{what}: non-integral interpolation coefficients {coeffs}")
    cp = CountingPolynomial(tuple(int(c) for c in coeffs) or (0,))
    while len(cp.coeffs) > 1 and cp.coeffs[-1] == 0:
        cp = CountingPolynomial(cp.coeffs[:-1])
    for x, y in held_out or ():
        if cp(x) != y:
            raise NotPolynomialCount(f"{what}: held-out value at {x} is {y}, polynomial gives {cp(x)}")
    return cp


def counting_polynomial(blueprint: Callable[[int], Representation], e, primes, degree: int | None = None) -> CountingPolynomial:
    """Counting polynomial of Gr_e(M) from point counts at several primes.

    ``blueprint(p)`` returns the module over F_p. The degree bound defaults to
    ⟨e, m - e⟩; primes beyond the first ``degree + 1`` are held out and re-checked.
    """
    primes = sorted(set(int(x) for x in primes))
    sample = blueprint(primes[0])
    e = tuple(int(x) for x in e)
    m = sample.dim
    if degree is None:
        degree = max(euler_form(sample.quiver.euler, e, [a - b for a, b in zip(m, e)]), 0)
    if len(primes) < degree + 1:
        raise ValueError(f"need at least {degree + 1} primes for degree bound {degree}")
    pts = [(p, count_gr(blueprint(p), e)) for p in primes]
    return interpolate(pts[: degree + 1], pts[degree + 1 :], what=f"Gr_{e}")


# -- the maps ψ --------------------------------------------------------------


def _psi_block(l0: SubRep, tri) -> tuple[SubRep, SubRep]:
    # L_v = N_v ⊕ M_v: echelonize with the M columns first; rows pivoting in M
    # give p(L0), the remaining rows are L0 ∩ N_v = i^{-1}(L0).
    p = tri.L.p
    m_rows, n_rows = [], []
    for v, rows in enumerate(l0.rows):
        nv, mv = tri.N.dim[v], tri.M.dim[v]
        if rows.shape[0] == 0:
            m_rows.append(fl.zeros(0, mv))
            n_rows.append(fl.zeros(0, nv))
            continue
        r, k, piv = fl.rref(np.concatenate([rows[:, nv:], rows[:, :nv]], axis=1), p)
        split = sum(1 for c in piv if c < mv)
        m_rows.append(r[:split, :mv])
        n_rows.append(r[split:k, mv:])
    return SubRep(tuple(m_rows)), SubRep(tuple(n_rows))


def psi_image(l0: SubRep, tri, check: bool = True) -> tuple[SubRep, SubRep]:
    """``(p(L0), i^{-1}(L0))`` for the triangle N -i-> L -p-> M."""
    big = tri.L
    p = big.p
    if check and not is_stable(big, l0.rows):
        raise RepError("L0 is not a subrepresentation of the middle term")
    if getattr(tri, "block", False):
        m0, n0 = _psi_block(l0, tri)
    else:
        m_rows, n_rows = [], []
        for v in range(big.quiver.n):
            m_rows.append(fl.image_rows(l0.rows[v], tri.p_map.comps[v], p))
            n_rows.append(fl.preimage_rows(tri.i_map.comps[v], l0.rows[v], p) if tri.N.dim[v] else fl.zeros(0, 0))
        m0, n0 = SubRep(tuple(m_rows)), SubRep(tuple(n_rows))
    if check and not (is_stable(tri.M, m0.rows) and is_stable(tri.N, n0.rows)):
        raise RuntimeError("ψ produced a non-stable pair; middle-term maps are not module maps")
    return m0, n0


def psi_strata(tri) -> dict:
    """``{(M0.key, N0.key): [M0, N0, [L0, ...]]}`` over all submodules of the middle term."""
    out: dict = {}
    for l0 in all_sub_reps(tri.L):
        m0, n0 = psi_image(l0, tri, check=False)
        slot = out.setdefault((m0.key, n0.key), [m0, n0, []])
        slot[2].append(l0)
    return out


def psi_fiber(tri, m0: SubRep, n0: SubRep) -> list[SubRep]:
    """All L0 ⊆ L with ψ(L0) = (M0, N0)."""
    target = tuple(a + b for a, b in zip(m0.dim, n0.dim))
    out = []
    for l0 in sub_reps(tri.L, target):
        if psi_image(l0, tri) == (m0, n0):
            out.append(l0)
    return out
