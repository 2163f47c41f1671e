"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's arithmetic: field elements are handled as
coefficient lists with schoolbook polynomial arithmetic, determinants by the
Leibniz formula, and every search is brute force.
"""

from __future__ import annotations

import itertools
from math import prod


class NaiveField:
    """GF(p^h) on coefficient lists, reduced modulo a given monic polynomial."""

    def __init__(self, p: int, modulus: list[int]):
        self.p = p
        self.modulus = list(modulus)
        self.h = len(modulus) - 1
        self.q = p**self.h

    def decode(self, a: int) -> list[int]:
        out = []
        for _ in range(self.h):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, c: list[int]) -> int:
        return sum(int(x) % self.p * self.p**i for i, x in enumerate(c))

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a: int) -> int:
        return self.encode([-x for x in self.decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        x, y = self.decode(a), self.decode(b)
        r = [0] * (2 * self.h)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                r[i + j] = (r[i + j] + xi * yj) % self.p
        for d in range(len(r) - 1, self.h - 1, -1):
            c = r[d]
            if c:
                for i, m in enumerate(self.modulus):
                    r[d - self.h + i] = (r[d - self.h + i] - c * m) % self.p
        return self.encode(r[: self.h])

    def pow(self, a: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def inv(self, a: int) -> int:
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError

    def from_int(self, n: int) -> int:
        return n % self.p


def leibniz_det(N: NaiveField, M) -> int:
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = 1
        for r in range(n):
            term = N.mul(term, int(M[r][perm[r]]))
        total = N.sub(total, term) if inv % 2 else N.add(total, term)
    return total


def naive_rank(N: NaiveField, M) -> int:
    rows, cols = len(M), len(M[0]) if M else 0
    for r in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), r):
            for ci in itertools.combinations(range(cols), r):
                if leibniz_det(N, [[M[i][j] for j in ci] for i in ri]):
                    return r
    return 0


def brute_is_arc(N: NaiveField, pts) -> bool:
    k = len(pts[0])
    if len(pts) < k:
        return naive_rank(N, pts) == len(pts)
    return all(leibniz_det(N, [pts[i] for i in sub]) != 0 for sub in itertools.combinations(range(len(pts)), k))


def projective_points(q: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for v in itertools.product(range(q), repeat=k):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            out.append(v)
    return out


def dot(N: NaiveField, u, v) -> int:
    s = 0
    for a, b in zip(u, v):
        s = N.add(s, N.mul(int(a), int(b)))
    return s


def brute_min_distance(N: NaiveField, gen) -> int:
    k, n = len(gen), len(gen[0])
    best = n
    for msg in itertools.product(range(N.q), repeat=k):
        if not any(msg):
            continue
        word = [dot(N, msg, [gen[i][j] for i in range(k)]) for j in range(n)]
        best = min(best, sum(1 for w in word if w))
    return best


def brute_tangent_count(N: NaiveField, pts, S) -> int:
    """Hyperplanes (all dual points) containing ``S`` and no other point of ``pts``."""
    k = len(pts[0])
    count = 0
    for h in projective_points(N.q, k):
        on = [i for i, x in enumerate(pts) if dot(N, h, x) == 0]
        if sorted(on) == sorted(S):
            count += 1
    return count


def brute_extensions(N: NaiveField, pts) -> list[tuple[int, ...]]:
    k = len(pts[0])
    out = []
    for x in projective_points(N.q, k):
        if brute_is_arc(N, list(pts) + [list(x)]) and not any(_same(N, x, p) for p in pts):
            out.append(x)
    return out


def _same(N: NaiveField, u, v) -> bool:
    k = len(u)
    return all(N.sub(N.mul(int(u[i]), int(v[j])), N.mul(int(u[j]), int(v[i]))) == 0
               for i in range(k) for j in range(k))


def poly_values(N: NaiveField, coeffs_by_exp: dict, x) -> int:
    total = 0
    for exp, c in coeffs_by_exp.items():
        term = int(c)
        for xi, e in zip(x, exp):
            term = N.mul(term, N.pow(int(xi), e))
        total = N.add(total, term)
    return total
