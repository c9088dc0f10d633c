"""The quantum torus with Λ-twisted multiplication.

Scalars are integer Laurent polynomials in ``s = t^{1/2}``, so ``t = s^2`` and
``q = t^2 = s^4``. Monomials multiply by ``X^e X^f = t^{Λ(e,f)} X^{e+f}``,
i.e. with s-exponent ``2Λ(e,f)``, which is an integer for half-integral Λ.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np


class LaurentScalar:
    """Finite sum Σ c_k s^k with integer c_k; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[int(k)] = c
        self.terms = clean

    @classmethod
    def const(cls, c: int) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def s(cls, k: int, c: int = 1) -> "LaurentScalar":
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.const(other)
        return isinstance(other, LaurentScalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentScalar({k: c * other for k, c in self.terms.items()})
        out: dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by s^k."""
        return LaurentScalar({e + k: c for e, c in self.terms.items()})

    def specialize(self, p: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Normal form c_0 + c_1 s + c_2 s^2 + c_3 s^3 modulo s^4 = p.

        Since x^4 - p is irreducible over ℚ, two scalars agree at s = p^{1/4}
        exactly when their normal forms agree.
        """
        out = [Fraction(0)] * 4
        for k, c in self.terms.items():
            out[k % 4] += Fraction(c) * Fraction(p) ** (k // 4)
        return tuple(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            parts.append(str(c) if k == 0 else f"{c}*s^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentScalar({self})"


ONE = LaurentScalar.const(1)


def format_specialized(form) -> str:
    names = ["", "*s", "*s^2", "*s^3"]
    parts = [f"{c}{names[r]}" for r, c in enumerate(form) if c]
    return " + ".join(parts) if parts else "0"


class QuantumTorus:
    """The algebra context: rank n and the doubled skew form 2Λ."""

    def __init__(self, lambda2):
        self.lambda2 = np.asarray(lambda2, dtype=np.int64)
        self.n = self.lambda2.shape[0]
        if not np.array_equal(self.lambda2, -self.lambda2.T):
            raise ValueError("Λ must be skew-symmetric")

    def __eq__(self, other):
        return isinstance(other, QuantumTorus) and np.array_equal(self.lambda2, other.lambda2)

    def __hash__(self):
        return hash(self.lambda2.tobytes())

    def twist(self, e, f) -> int:
        """s-exponent 2Λ(e, f) of X^e X^f relative to X^{e+f}."""
        return int(np.asarray(e, dtype=np.int64) @ self.lambda2 @ np.asarray(f, dtype=np.int64))

    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return self.monomial((0,) * self.n)

    def monomial(self, alpha, scalar: LaurentScalar | int = 1) -> "TorusElement":
        alpha = tuple(int(x) for x in alpha)
        if len(alpha) != self.n:
            raise ValueError(f"exponent vector {alpha} has length {len(alpha)}, expected {self.n}")
        if isinstance(scalar, int):
            scalar = LaurentScalar.const(scalar)
        return TorusElement(self, {alpha: scalar})

    def element(self, terms: Iterable) -> "TorusElement":
        out = self.zero()
        for alpha, scalar in terms:
            out = out + self.monomial(alpha, scalar)
        return out


class TorusElement:
    """Σ c_α X^α with LaurentScalar coefficients c_α."""

    __slots__ = ("torus", "terms")

    def __init__(self, torus: QuantumTorus, terms: dict):
        self.torus = torus
        self.terms = {tuple(a): c for a, c in terms.items() if not c.is_zero()}

    def _check(self, other: "TorusElement"):
        if not isinstance(other, TorusElement):
            raise TypeError(f"expected a TorusElement, got {type(other).__name__}")
        if self.torus != other.torus:
            raise ValueError("torus elements live in different quantum tori")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return TorusElement(self.torus, out)

    def __neg__(self):
        return TorusElement(self.torus, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentScalar | int) -> "TorusElement":
        if isinstance(c, int):
            c = LaurentScalar.const(c)
        return TorusElement(self.torus, {a: c * x for a, x in self.terms.items()})

    def shift(self, k: int) -> "TorusElement":
        """Multiply every coefficient by s^k."""
        return TorusElement(self.torus, {a: x.shift(k) for a, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        self._check(other)
        lam2 = self.torus.lambda2
        out: dict = {}
        for a, ca in self.terms.items():
            va = np.array(a, dtype=np.int64) @ lam2
            for b, cb in other.terms.items():
                k = int(va @ np.array(b, dtype=np.int64))
                ab = tuple(x + y for x, y in zip(a, b))
                term = (ca * cb).shift(k)
                out[ab] = out[ab] + term if ab in out else term
        return TorusElement(self.torus, out)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TorusElement) and self.torus == other.torus and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def specialize(self, p: int) -> dict:
        """``{α: normal form}`` at s^4 = p, zero forms dropped."""
        out = {}
        for a, c in self.terms.items():
            form = c.specialize(p)
            if any(form):
                out[a] = form
        return out

    def equal_at(self, other: "TorusElement", p: int) -> bool:
        return not (self - other).specialize(p)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            mono = "X^(" + ",".join(str(x) for x in a) + ")"
            parts.append(mono if c == ONE else f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusElement({self})"
