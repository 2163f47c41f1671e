"""Sparse homogeneous polynomials over GF(q).

A :class:`HomPoly` maps exponent tuples to nonzero field elements.  All terms
share one total degree.  Terms are listed in graded-lex order, which for a
homogeneous polynomial is plain descending lexicographic order on exponents.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .gf import GF


class PolyError(ValueError):
    pass


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given degree, in graded-lex (descending) order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def monomial_values(F: GF, exps, points) -> np.ndarray:
    """Matrix of monomial values, shape ``(len(points), len(exps))``."""
    P = np.atleast_2d(np.asarray(points, dtype=np.int64))
    E = np.asarray(exps, dtype=np.int64).reshape(-1, P.shape[1])
    out = np.ones((P.shape[0], E.shape[0]), dtype=np.int64)
    for v in range(P.shape[1]):
        for e in np.unique(E[:, v]):
            if e == 0:
                continue
            cols = E[:, v] == e
            out[:, cols] = F.mul(out[:, cols], F.power(P[:, v], int(e))[:, None])
    return out


class HomPoly:
    """Homogeneous polynomial in ``nvars`` variables."""

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field: GF, nvars: int, degree: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean: dict[tuple[int, ...], int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or sum(exp) != degree or min(exp, default=0) < 0:
                raise PolyError(f"monomial {exp} does not have degree {degree} in {nvars} variables")
            c = int(c)
            if c:
                clean[exp] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, F: GF, nvars: int, degree: int) -> "HomPoly":
        return cls(F, nvars, degree)

    @classmethod
    def constant(cls, F: GF, nvars: int, c: int = 1) -> "HomPoly":
        return cls(F, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, F: GF, nvars: int, i: int) -> "HomPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(F, nvars, 1, {tuple(e): 1})

    @classmethod
    def linear(cls, F: GF, coeffs: Iterable[int]) -> "HomPoly":
        coeffs = [int(c) for c in coeffs]
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(F, n, 1, terms)

    @classmethod
    def from_vector(cls, F: GF, nvars: int, degree: int, vec) -> "HomPoly":
        """Coefficients listed against :func:`monomials` order."""
        return cls(F, nvars, degree, dict(zip(monomials(nvars, degree), (int(v) for v in vec))))

    def to_vector(self) -> np.ndarray:
        return np.array([self.terms.get(m, 0) for m in monomials(self.nvars, self.degree)], dtype=np.int64)

    # -- arithmetic ------------------------------------------------------------
    def _compatible(self, other: "HomPoly"):
        if self.field is not other.field or self.nvars != other.nvars:
            raise PolyError("polynomials live in different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise PolyError(f"cannot add degrees {self.degree} and {other.degree}")
        F = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = int(F.add(terms.get(e, 0), c))
        return HomPoly(F, self.nvars, self.degree, terms)

    def __neg__(self) -> "HomPoly":
        F = self.field
        return HomPoly(F, self.nvars, self.degree, {e: int(F.neg(c)) for e, c in self.terms.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c: int) -> "HomPoly":
        F = self.field
        return HomPoly(F, self.nvars, self.degree, {e: int(F.mul(v, c)) for e, v in self.terms.items()})

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return self.scale(int(other))
        self._compatible(other)
        F = self.field
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = int(F.add(terms.get(e, 0), F.mul(c1, c2)))
        return HomPoly(F, self.nvars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        out = HomPoly.constant(self.field, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.field is not other.field or self.nvars != other.nvars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def leading(self) -> tuple[tuple[int, ...], int]:
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, other: "HomPoly") -> "HomPoly":
        """Quotient ``self / other``; raises PolyError unless the division is exact."""
        self._compatible(other)
        if other.is_zero():
            raise PolyError("division by zero polynomial")
        F = self.field
        if self.is_zero():
            return HomPoly.zero(F, self.nvars, max(self.degree - other.degree, 0))
        if other.degree > self.degree:
            raise PolyError("divisor has larger degree")
        le, lc = other.leading()
        lc_inv = int(F.inv(lc))
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            e = max(rem)
            shift = tuple(a - b for a, b in zip(e, le))
            if min(shift) < 0:
                raise PolyError("division is not exact")
            c = int(F.mul(rem[e], lc_inv))
            quot[shift] = c
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(shift, oe))
                v = int(F.sub(rem.get(te, 0), F.mul(c, oc)))
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return HomPoly(F, self.nvars, self.degree - other.degree, quot)

    def divides(self, other: "HomPoly") -> bool:
        """True if ``self`` divides ``other``."""
        try:
            other.divide_exact(self)
        except PolyError:
            return False
        return True

    # -- evaluation ------------------------------------------------------------
    def __call__(self, *point) -> int:
        if len(point) == 1 and np.ndim(point[0]) >= 1:
            point = point[0]
        return int(self.evaluate(np.asarray(point, dtype=np.int64)[None])[0])

    def evaluate(self, points) -> np.ndarray:
        """Values at each row of ``points``."""
        P = np.atleast_2d(np.asarray(points, dtype=np.int64))
        if P.shape[1] != self.nvars:
            raise PolyError(f"points have {P.shape[1]} coordinates, expected {self.nvars}")
        if self.is_zero():
            return np.zeros(P.shape[0], dtype=np.int64)
        exps = list(self.terms)
        coefs = np.array([self.terms[e] for e in exps], dtype=np.int64)
        vals = monomial_values(self.field, exps, P)
        return self.field.sum(self.field.mul(vals, coefs[None, :]), axis=1)

    def substitute(self, images: list["HomPoly"]) -> "HomPoly":
        """Replace variable ``i`` by ``images[i]`` (all of one common degree)."""
        if len(images) != self.nvars:
            raise PolyError("need one image per variable")
        F = self.field
        nv = images[0].nvars
        d = images[0].degree
        cache: dict[tuple[int, int], HomPoly] = {}

        def pw(i: int, e: int) -> HomPoly:
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        out = HomPoly.zero(F, nv, d * self.degree)
        for exp, c in sorted(self.terms.items()):
            term = HomPoly.constant(F, nv, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def normalized(self) -> tuple["HomPoly", int]:
        """Scale so the lexicographically least monomial has coefficient 1.

        Returns the scaled polynomial and the factor applied.
        """
        if self.is_zero():
            return self, 1
        e = min(self.terms)
        s = int(self.field.inv(self.terms[e]))
        return self.scale(s), s

    # -- serialisation ---------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), reverse=True)

    def to_json(self) -> dict:
        F = self.field
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "terms": [{"exp": list(e), "coef": list(F.coeffs(c))} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, F: GF, d: dict) -> "HomPoly":
        terms = {tuple(t["exp"]): F.from_coeffs(t["coef"]) for t in d["terms"]}
        return cls(F, d["nvars"], d["degree"], terms)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"X{i + 1}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def minor_polys(F: GF, k: int) -> list[HomPoly]:
    """``det_j`` of a ``(k-1) x k`` matrix of variables, as polynomials.

    Variable ``r*k + c`` is the entry in row ``r``, column ``c``; ``det_j``
    deletes column ``j`` and carries no alternating sign.
    """
    nv = (k - 1) * k
    out = []
    for j in range(k):
        cols = [c for c in range(k) if c != j]
        terms: dict[tuple[int, ...], int] = {}
        for perm in itertools.permutations(range(k - 1)):
            inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            e = [0] * nv
            for r, pc in enumerate(perm):
                e[r * k + cols[pc]] += 1
            c = F.neg(1) if inv % 2 else 1
            terms[tuple(e)] = int(F.add(terms.get(tuple(e), 0), c))
        out.append(HomPoly(F, nv, k - 1, terms))
    return out
