"""Quantum cluster characters evaluated at a fixed prime.

For an object M ⊕ I[-1] (M a module, I injective) the character is

    X̃ = Σ_e q^{-⟨e, m-i-e⟩/2} |Gr_e(M)| X^{-e* - *(m-i-e)},

with e* = E^t e and *e = E e. Since q^{1/2} = t = s^2 the weight is the
s-exponent -2⟨e, m-i-e⟩.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .grassmann import all_sub_reps, gr_counts, psi_image
from .quiver import EulerData, Quiver, euler_form, lambda_solve
from .rep import (
    Representation,
    injective_dim_vector,
    projective_dim_vector,
    zero_rep,
)
from .torus import LaurentScalar, QuantumTorus, TorusElement


class Context:
    """A quiver with its Euler data and quantum torus for a chosen sign σ."""

    def __init__(self, quiver: Quiver, sigma: int = 1):
        self.quiver = quiver
        self.sigma = sigma
        self.euler: EulerData = lambda_solve(quiver, sigma)
        self.E = self.euler.E
        self.torus = QuantumTorus(self.euler.lambda2)

    def form(self, a, b) -> int:
        return euler_form(self.E, a, b)

    def lam2(self, a, b) -> int:
        """2Λ(a, b)."""
        return self.torus.twist(a, b)

    def star_r(self, e) -> np.ndarray:
        return self.E.T @ np.asarray(e, dtype=np.int64)

    def star_l(self, e) -> np.ndarray:
        return self.E @ np.asarray(e, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ClusterObject:
    """M ⊕ I[-1] with I given by its multiplicities of indecomposable injectives."""

    module: Representation
    inj_mult: tuple = field(default=None)

    def __post_init__(self):
        mult = self.inj_mult if self.inj_mult is not None else (0,) * self.module.quiver.n
        mult = tuple(int(c) for c in mult)
        if any(c < 0 for c in mult) or len(mult) != self.module.quiver.n:
            raise ValueError(f"bad injective multiplicities {mult}")
        object.__setattr__(self, "inj_mult", mult)

    @property
    def m(self) -> np.ndarray:
        return self.module.dim_vector()

    @property
    def i(self) -> np.ndarray:
        return injective_dim_vector(self.module.quiver, self.inj_mult)

    @classmethod
    def shifted(cls, q: Quiver, p: int, inj_mult) -> "ClusterObject":
        return cls(zero_rep(q, p), tuple(inj_mult))


def p_vector(ctx: Context, m, i, e) -> np.ndarray:
    """-e* - *(m - i - e)."""
    m, i, e = (np.asarray(x, dtype=np.int64) for x in (m, i, e))
    return -ctx.star_r(e) - ctx.star_l(m - i - e)


def p_vector_obj(ctx: Context, obj: ClusterObject, e) -> np.ndarray:
    return p_vector(ctx, obj.m, obj.i, e)


def character_weight2(ctx: Context, m, i, e) -> int:
    """s-exponent of the character weight, -2⟨e, m - i - e⟩."""
    m, i, e = (np.asarray(x, dtype=np.int64) for x in (m, i, e))
    return -2 * ctx.form(e, m - i - e)


def q_character(ctx: Context, obj: ClusterObject) -> TorusElement:
    return _q_character(ctx, obj.module, obj.inj_mult)


@lru_cache(maxsize=8192)
def _q_character(ctx: Context, module: Representation, inj_mult: tuple) -> TorusElement:
    m = module.dim_vector()
    i = injective_dim_vector(module.quiver, inj_mult)
    out = {}
    for e, count in gr_counts(module).items():
        alpha = tuple(int(x) for x in p_vector(ctx, m, i, e))
        scalar = LaurentScalar.s(character_weight2(ctx, m, i, e), count)
        out[alpha] = out[alpha] + scalar if alpha in out else scalar
    return TorusElement(ctx.torus, out)


def character(ctx: Context, module: Representation, inj_mult=None) -> TorusElement:
    return q_character(ctx, ClusterObject(module, inj_mult))


def tilde_character(ctx: Context, module: Representation, proj_mult) -> TorusElement:
    """Character of M ⊕ P[1] with weights t^{⟨p-e, m-e⟩} and monomials X^{(p-e)* - *(m-e)}."""
    m = module.dim_vector()
    pv = projective_dim_vector(module.quiver, proj_mult)
    out = {}
    for e, count in gr_counts(module).items():
        e = np.asarray(e, dtype=np.int64)
        alpha = tuple(int(x) for x in ctx.star_r(pv - e) - ctx.star_l(m - e))
        scalar = LaurentScalar.s(2 * ctx.form(pv - e, m - e), count)
        out[alpha] = out[alpha] + scalar if alpha in out else scalar
    return TorusElement(ctx.torus, out)


# -- weighted characters over triangle data ----------------------------------


class MissingWeight(KeyError):
    pass


class WeightTable:
    """Stratum weights in s-exponent units (twice the t-exponent), keyed by ψ-image."""

    def __init__(self, entries: dict | None = None):
        self.entries = dict(entries or {})

    def __setitem__(self, key, value):
        self.entries[key] = int(value)

    def get(self, key, e=None, f=None) -> int:
        try:
            return self.entries[key]
        except KeyError:
            raise MissingWeight(f"no weight for stratum with e={e}, f={f}") from None

    def __len__(self):
        return len(self.entries)

    @classmethod
    def build(cls, tri, fn) -> "WeightTable":
        """Tabulate ``fn(M0, N0)`` over every stratum met by ψ on ``tri``."""
        table = cls()
        for l0 in all_sub_reps(tri.L):
            m0, n0 = psi_image(l0, tri, check=False)
            key = (m0.key, n0.key)
            if key not in table.entries:
                table[key] = fn(m0, n0)
        return table

    def to_json(self) -> list:
        return sorted(
            [[[r[0][0] for r in k[0]], [r[0][0] for r in k[1]], w] for k, w in self.entries.items()],
            key=repr,
        )


def weighted_character(ctx: Context, tri, weights: WeightTable) -> TorusElement:
    """Σ_{L0 ⊆ L} s^{w(ψ(L0))} X^{p(L, dim L0)} over the middle term of ``tri``."""
    m = tri.L.dim_vector()
    i = injective_dim_vector(tri.L.quiver, tri.inj_mult)
    out = {}
    for l0 in all_sub_reps(tri.L):
        m0, n0 = psi_image(l0, tri, check=False)
        w = weights.get((m0.key, n0.key), e=m0.dim, f=n0.dim)
        alpha = tuple(int(x) for x in p_vector(ctx, m, i, l0.dim))
        scalar = LaurentScalar.s(w)
        out[alpha] = out[alpha] + scalar if alpha in out else scalar
    return TorusElement(ctx.torus, out)
