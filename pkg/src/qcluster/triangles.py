"""Triangle data: extension middle terms and the three exchange-triangle analyses.

* ``middle_term``: N -> L -> M from a 1-cocycle ξ ∈ Ext^1(M, N).
* ``eta_analysis``: a map η: N -> τM and the pieces D = Ker η, C = Coker η = τA ⊕ I.
* ``hom_MI_triangle`` / ``hom_PM_triangle``: maps M -> I (injective) and P -> M (projective).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import field_linalg as fl
from .grassmann import SubRep, all_sub_reps
from .rep import (
    InternalConsistencyError,
    ModuleMap,
    Representation,
    RepError,
    all_homs,
    cokernel_of,
    decompose_dims,
    ext_space,
    hom_basis,
    hom_coords,
    injective_dims,
    injective_split,
    kernel_of,
    projective_dims,
    quotient,
    submodule,
    tau_inverse_unchecked,
    tau_map,
    tau_unchecked,
    zero_rep,
)


@dataclass(frozen=True, eq=False)
class TriangleData:
    """N -i-> L -p-> M, with the middle object L ⊕ I[-1] (``inj_mult`` gives I)."""

    M: Representation
    N: Representation
    L: Representation
    i_map: ModuleMap
    p_map: ModuleMap
    inj_mult: tuple = field(default=None)
    cochain: np.ndarray | None = None
    block: bool = False

    def __post_init__(self):
        if self.inj_mult is None:
            object.__setattr__(self, "inj_mult", (0,) * self.L.quiver.n)


def middle_term(m: Representation, n: Representation, xi) -> TriangleData:
    """Middle term of the extension given by a cochain ξ (flat vector or per-arrow blocks).

    L_v = N_v ⊕ M_v and arrow a acts by the block matrix [[N_a, ξ_a], [0, M_a]].
    """
    space = ext_space(m, n)
    if isinstance(xi, (tuple, list)):
        blocks = tuple(np.asarray(b, dtype=np.int64) % m.p for b in xi)
        flat = space.join(blocks)
    else:
        flat = np.asarray(xi, dtype=np.int64).reshape(-1) % m.p
        blocks = space.split(flat)
    q = m.quiver
    dim = [n.dim[v] + m.dim[v] for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        top = np.concatenate([n.maps[a], blocks[a].reshape(n.dim[t], m.dim[s])], axis=1)
        bottom = np.concatenate([fl.zeros(m.dim[t], n.dim[s]), m.maps[a]], axis=1)
        maps.append(np.concatenate([top, bottom], axis=0))
    big = Representation(q, m.p, dim, maps)
    i_comps = tuple(np.concatenate([fl.identity(n.dim[v]), fl.zeros(m.dim[v], n.dim[v])], axis=0) for v in range(q.n))
    p_comps = tuple(np.concatenate([fl.zeros(m.dim[v], n.dim[v]), fl.identity(m.dim[v])], axis=1) for v in range(q.n))
    return TriangleData(m, n, big, ModuleMap(n, big, i_comps), ModuleMap(big, m, p_comps), cochain=flat, block=True)


def split_triangle(m: Representation, n: Representation) -> TriangleData:
    return middle_term(m, n, np.zeros(ext_space(m, n).cochain_dim, np.int64))


def trivial_triangle(m: Representation, inj_mult=None) -> TriangleData:
    """0 -> M -> M, so ψ(L0) = (L0, 0)."""
    tri = split_triangle(m, zero_rep(m.quiver, m.p))
    if inj_mult is not None:
        tri = TriangleData(tri.M, tri.N, tri.L, tri.i_map, tri.p_map, tuple(inj_mult), tri.cochain, tri.block)
    return tri


def cocycles(m: Representation, n: Representation, nonzero: bool = False):
    """Every class of Ext^1(M, N) once, as a representative cochain."""
    space = ext_space(m, n)
    for coeffs in space.coefficient_vectors(nonzero=nonzero):
        yield space.cochain(coeffs)


def splitting_section(tri: TriangleData) -> ModuleMap | None:
    """A module map s: M -> L with p∘s = id, or None if the sequence does not split."""
    m, big, p = tri.M, tri.L, tri.M.p
    basis = hom_basis(m, big)
    if not basis:
        return None if not m.is_zero() else ModuleMap(m, big, tuple(fl.zeros(big.dim[v], 0) for v in range(m.quiver.n)))
    cols = np.stack([tri.p_map.compose(b).flat() for b in basis], axis=1)
    target = np.concatenate([fl.identity(d).reshape(-1) for d in m.dim]) if m.dim else np.zeros(0, np.int64)
    x = fl.solve(cols, target, p)
    if x is None:
        return None
    comps = [sum(int(c) * b.comps[v] for c, b in zip(x, basis)) % p for v in range(m.quiver.n)]
    return ModuleMap(m, big, tuple(comps))


# -- maps into τM --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EtaData:
    """Pieces of η: N -> τM: D = Ker η, C = Coker η = τA ⊕ I, a = dim A, i = dim I."""

    eta: ModuleMap
    D: Representation
    iota: ModuleMap
    C: Representation
    A: Representation
    inj_mult: tuple
    a: np.ndarray
    i: np.ndarray


def eta_analysis(eta: ModuleMap) -> EtaData:
    d, iota = kernel_of(eta)
    c, _ = cokernel_of(eta)
    a_mod, mult = injective_split(c)
    q = eta.source.quiver
    i = injective_dims(q) @ np.asarray(mult, dtype=np.int64)
    if not np.array_equal(tau_unchecked(a_mod).dim_vector() + i, c.dim_vector()):
        raise InternalConsistencyError("dim τA + i ≠ dim Coker η")
    return EtaData(eta, d, iota, c, a_mod, mult, a_mod.dim_vector(), i)


def quotient_projection(m: Representation, m0: SubRep) -> ModuleMap:
    return quotient(m, m0.rows)[1]


class EtaStrata:
    """Membership of strata in Im ψ^η for η ∈ Hom(N, τM).

    (N0, M0) lies in Im ψ^η iff N0 ⊆ Ker η and τ(π)∘η = 0 with π: M -> M/M0.
    Both conditions are linear in η, so each stratum cuts out a subspace K'
    of Hom(N, τM), returned in coordinates of ``hom_basis(N, τM)``.
    """

    def __init__(self, m: Representation, n: Representation):
        self.M, self.N = m, n
        self.tauM = tau_unchecked(m)
        self.basis = hom_basis(n, self.tauM)
        self.p = m.p

    def _constraint_rows(self, m0: SubRep, n0: SubRep) -> np.ndarray:
        p = self.p
        _, incl = submodule(self.N, n0.rows)
        tpi = tau_map(quotient_projection(self.M, m0))
        rows = []
        for b in self.basis:
            v1 = b.compose(incl).flat()
            v2 = tpi.compose(b).flat()
            rows.append(np.concatenate([v1, v2]))
        if not rows:
            return fl.zeros(0, 0)
        return (np.stack(rows, axis=1)) % p

    def subspace(self, m0: SubRep, n0: SubRep) -> np.ndarray:
        """Columns spanning K'(N0, M0) in Hom-basis coordinates."""
        h = len(self.basis)
        if h == 0:
            return fl.zeros(0, 0)
        c = self._constraint_rows(m0, n0)
        if c.shape[0] == 0:
            return fl.identity(h)
        return fl.kernel_basis(c, self.p)

    def contains(self, eta: ModuleMap, m0: SubRep, n0: SubRep) -> bool:
        _, incl = submodule(self.N, n0.rows)
        if not eta.compose(incl).is_zero():
            return False
        return tau_map(quotient_projection(self.M, m0)).compose(eta).is_zero()

    def coords(self, eta: ModuleMap) -> np.ndarray:
        return hom_coords(self.basis, eta)


def image_strata_count(data: EtaData) -> int:
    """Number of strata predicted in Im ψ^η: |submodules of D| · |submodules of A|."""
    return len(all_sub_reps(data.D)) * len(all_sub_reps(data.A))


# -- maps into injectives and out of projectives ------------------------------


@dataclass(frozen=True, eq=False)
class ExchangeObject:
    """Module part plus the shift part's multiplicities (I[-1] or P[1])."""

    module: Representation
    shift_mult: tuple


def _is_injective(x: Representation) -> bool:
    return tau_inverse_unchecked(x).is_zero()


def _is_projective(x: Representation) -> bool:
    return tau_unchecked(x).is_zero()


def hom_MI_triangle(eps: ModuleMap) -> ExchangeObject:
    """Middle object Ker ε ⊕ (Coker ε)[-1] of ε: M -> I."""
    if not _is_injective(eps.target):
        raise RepError("target of ε must be injective")
    k, _ = kernel_of(eps)
    c, _ = cokernel_of(eps)
    if not _is_injective(c):
        raise InternalConsistencyError("cokernel of a map into an injective is not injective")
    mult = decompose_dims(c.dim_vector(), injective_dims(c.quiver))
    if mult is None:
        raise InternalConsistencyError(f"injective dims do not decompose {c.dim}")
    return ExchangeObject(k, mult)


def hom_PM_triangle(eta: ModuleMap) -> ExchangeObject:
    """Middle object Coker η ⊕ (Ker η)[1] of η: P -> M."""
    if not _is_projective(eta.source):
        raise RepError("source of η must be projective")
    k, _ = kernel_of(eta)
    c, _ = cokernel_of(eta)
    if not _is_projective(k):
        raise InternalConsistencyError("kernel of a map out of a projective is not projective")
    mult = decompose_dims(k.dim_vector(), projective_dims(k.quiver))
    if mult is None:
        raise InternalConsistencyError(f"projective dims do not decompose {k.dim}")
    return ExchangeObject(c, mult)


def count_eps_killing(m: Representation, i_mod: Representation, m0: SubRep) -> int:
    """#{ε ∈ Hom(M, I) : M0 ⊆ Ker ε}, by enumeration."""
    _, incl = submodule(m, m0.rows)
    return sum(1 for f in all_homs(m, i_mod) if f.compose(incl).is_zero())


def count_eta_inside(p_mod: Representation, m: Representation, m0: SubRep) -> int:
    """#{η ∈ Hom(P, M) : Im η ⊆ M0}, by enumeration."""
    pr = quotient_projection(m, m0)
    return sum(1 for f in all_homs(p_mod, m) if pr.compose(f).is_zero())
