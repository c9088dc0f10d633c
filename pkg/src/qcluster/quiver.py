"""Acyclic quivers and their bilinear forms.

Vertices are 0-based internally; the text format and all printed output use
1-based labels. An arrow ``(i, j)`` points from ``i`` to ``j`` and acts
covariantly on representations (``M_i -> M_j``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np
import sympy


class QuiverError(ValueError):
    pass


class NoCompatibleLambda(QuiverError):
    """Raised when B is singular, so no skew form Λ with σΛB = I exists."""

    def __init__(self, rank: int, n: int):
        super().__init__(f"no compatible Λ: rank(B) = {rank} < {n}")
        self.rank = rank


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise QuiverError(f"arrow {s + 1}->{t + 1} leaves the vertex set 1..{self.n}")
        self.topological_order  # raises on cycles

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        if len(order) != self.n:
            raise QuiverError("quiver has an oriented cycle")
        return tuple(order)

    def arrows_into(self, v: int) -> list[int]:
        return [a for a, (_, t) in enumerate(self.arrows) if t == v]

    @cached_property
    def paths(self) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
        """All paths as ``(start, end, arrow indices in order)``, trivial paths included."""
        out = [(v, v, ()) for v in range(self.n)]
        frontier = list(out)
        while frontier:
            nxt = []
            for s, t, word in frontier:
                for a, (u, w) in enumerate(self.arrows):
                    if u == t:
                        nxt.append((s, w, word + (a,)))
            out.extend(nxt)
            frontier = nxt
        return tuple(out)

    def paths_between(self, s: int, t: int) -> list[tuple[int, ...]]:
        return [w for (u, v, w) in self.paths if u == s and v == t]

    @cached_property
    def euler(self) -> np.ndarray:
        return euler_matrix(self)

    @cached_property
    def skew(self) -> np.ndarray:
        e = self.euler
        return e - e.T

    @cached_property
    def coxeter(self) -> np.ndarray:
        """Φ = -E^{-1} E^t as an exact integer matrix (acts on column dimension vectors)."""
        e = sympy.Matrix(self.euler.tolist())
        phi = -e.inv() * e.T
        return np.array(phi.tolist(), dtype=np.int64)

    def label(self) -> str:
        return self.name or f"Q(n={self.n}, arrows={[(s + 1, t + 1) for s, t in self.arrows]})"


def euler_matrix(q: Quiver) -> np.ndarray:
    """E_ij = δ_ij - #{arrows i -> j}, so that <m, n> = m^T E n."""
    e = np.eye(q.n, dtype=np.int64)
    for s, t in q.arrows:
        e[s, t] -= 1
    return e


@dataclass(frozen=True)
class EulerData:
    """Euler matrix E, skew part B and compatible Λ (stored doubled as an integer matrix)."""

    E: np.ndarray
    B: np.ndarray
    lambda2: np.ndarray
    sigma: int

    @property
    def Lambda(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), 2) for x in row] for row in self.lambda2]


def lambda_solve(q: Quiver, sigma: int = 1) -> EulerData:
    """Skew Λ with σ·Λ·B = I, i.e. Λ = σ B^{-1}.

    Entries must lie in ½ℤ; they are stored as the integer matrix 2Λ.
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    b = sympy.Matrix(q.skew.tolist())
    r = b.rank()
    if r < q.n:
        raise NoCompatibleLambda(r, q.n)
    lam = sigma * b.inv()
    lam2 = 2 * lam
    if any(not x.is_integer for x in lam2):
        raise QuiverError(f"Λ = σB^-1 is not half-integral: {lam.tolist()}")
    lambda2 = np.array(lam2.tolist(), dtype=np.int64)
    return EulerData(E=q.euler, B=q.skew, lambda2=lambda2, sigma=sigma)


def _vec(v) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape(-1)


def euler_form(E: np.ndarray, m, n) -> int:
    m, n = _vec(m), _vec(n)
    if m.shape[0] != E.shape[0] or n.shape[0] != E.shape[0]:
        raise ValueError("dimension vector length mismatch")
    return int(m @ E @ n)


def lambda_form2(lambda2: np.ndarray, a, b) -> int:
    """2·Λ(a, b), always an integer."""
    a, b = _vec(a), _vec(b)
    if a.shape[0] != lambda2.shape[0] or b.shape[0] != lambda2.shape[0]:
        raise ValueError("vector length mismatch")
    return int(a @ lambda2 @ b)


def lambda_form(lambda2: np.ndarray, a, b) -> Fraction:
    return Fraction(lambda_form2(lambda2, a, b), 2)


def star_right(E: np.ndarray, e) -> np.ndarray:
    """e* = E^t e."""
    return E.T @ _vec(e)


def star_left(E: np.ndarray, e) -> np.ndarray:
    """*e = E e."""
    return E @ _vec(e)


# -- presets and text format -------------------------------------------------

PRESETS = {
    "a2": (2, [(1, 2)]),
    "a3": (3, [(1, 2), (2, 3)]),
    "a4": (4, [(1, 2), (2, 3), (3, 4)]),
    "kronecker": (2, [(1, 2), (1, 2)]),
}


def preset(name: str) -> Quiver:
    try:
        n, arrows = PRESETS[name.lower()]
    except KeyError:
        raise QuiverError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return Quiver(n, tuple((s - 1, t - 1) for s, t in arrows), name=name.lower())


class ParseError(QuiverError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def parse_quiver(text: str, name: str = "") -> Quiver:
    """Parse ``vertices N`` followed by ``arrow S T`` lines (1-based, '#' comments)."""
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        col = raw.index(toks[0]) + 1
        if toks[0] == "vertices":
            if n is not None or len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("expected a single 'vertices N' line", lineno, col)
            n = int(toks[1])
        elif toks[0] == "arrow":
            if n is None:
                raise ParseError("'arrow' before 'vertices'", lineno, col)
            if len(toks) != 3 or not (toks[1].isdigit() and toks[2].isdigit()):
                raise ParseError("expected 'arrow S T'", lineno, col)
            s, t = int(toks[1]), int(toks[2])
            if not (1 <= s <= n and 1 <= t <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno, col)
            arrows.append((s - 1, t - 1))
        else:
            raise ParseError(f"unknown keyword {toks[0]!r}", lineno, col)
    if n is None:
        raise ParseError("missing 'vertices N'", 1)
    return Quiver(n, tuple(arrows), name=name)


def load_quiver(spec: str) -> Quiver:
    """A preset name or a path to a quiver text file."""
    if spec.lower() in PRESETS:
        return preset(spec)
    path = Path(spec)
    return parse_quiver(path.read_text(), name=path.stem)
