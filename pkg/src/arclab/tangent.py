"""Tangent hyperplanes of an arc and their scaled products.

For a ``(k-2)``-subset ``S`` of an arc ``A`` there are exactly ``t`` hyperplanes
through ``S`` missing the rest of ``A``.  ``f_S`` is the product of their linear
forms times a scalar.  :func:`build_scaled_system` chooses the scalars so that

    G(C) = (-1)^((t+1) * after_C(c)) * f_{C - c}(c)

does not depend on the choice of ``c`` in the ``(k-1)``-subset ``C``, where
``after_C(c)`` counts the elements of ``C`` that come after ``c`` in the arc's
stored order.  ``g`` of an ordered tuple is ``G`` of its set times
``(-1)^((t+1) * inversions)``.

Subsets are always tuples of indices into the arc.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arc import Arc
from .geometry import evaluate_forms, hyperplanes_through
from .gf import GF
from .linalg import det_batch


class TangentError(ValueError):
    pass


def _key(S: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(int(i) for i in S))


def _sign(F: GF, odd: bool) -> int:
    return F.neg(1) if odd else 1


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])


def tangent_forms(A: Arc, S: Sequence[int]) -> np.ndarray:
    """The ``t`` hyperplanes through ``S`` containing no other point of ``A``."""
    F, k = A.field, A.k
    S = list(S)
    if len(S) != k - 2 or len(set(S)) != len(S):
        raise TangentError(f"need {k - 2} distinct indices, got {S}")
    if any(not 0 <= i < len(A) for i in S):
        raise TangentError(f"indices {S} are not all in the arc")
    pencil = hyperplanes_through(F, A.M[S]) if S else hyperplanes_through(F, np.zeros((0, k), dtype=np.int64))
    rest = np.delete(A.M, S, axis=0)
    vals = evaluate_forms(F, pencil, rest)
    tang = pencil[(vals != 0).all(axis=1)]
    if tang.shape[0] != A.t:
        raise TangentError(f"found {tang.shape[0]} tangents through {S}, expected t={A.t}; not an arc?")
    return tang


@dataclass
class TangentSystem:
    """Tangent forms and scalars for every ``(k-2)``-subset of an arc.

    ``values[S][i]`` is ``f_S`` evaluated at arc point ``i`` (zero on ``S``).
    """

    arc: Arc
    forms: dict[tuple[int, ...], np.ndarray]
    scalars: dict[tuple[int, ...], int]
    values: dict[tuple[int, ...], np.ndarray] = dc_field(repr=False)
    base: int = 1
    scaled: bool = True

    @property
    def field(self) -> GF:
        return self.arc.field

    @property
    def t(self) -> int:
        return self.arc.t

    @property
    def k(self) -> int:
        return self.arc.k

    @property
    def n(self) -> int:
        return len(self.arc)

    def f(self, S: Iterable[int], x: int) -> int:
        """``f_S`` at arc point ``x`` (an index)."""
        return int(self.values[_key(S)][x])

    def f_at(self, S: Iterable[int], vec) -> np.ndarray | int:
        """``f_S`` at arbitrary vectors (rows of ``vec``)."""
        S = _key(S)
        F = self.field
        v = np.atleast_2d(np.asarray(vec, dtype=np.int64))
        vals = evaluate_forms(F, self.forms[S], v)
        out = F.mul(F.prod(vals, axis=0), self.scalars[S])
        return int(out[0]) if np.ndim(vec) == 1 else out

    def G(self, C: Iterable[int]) -> int:
        C = _key(C)
        return self.f(C[:-1], C[-1])

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "base": self.base,
            "subsets": [
                {"S": list(S), "scalar": int(self.scalars[S]), "forms": self.forms[S].tolist()}
                for S in sorted(self.forms)
            ],
        }


def _raw_system(A: Arc) -> tuple[dict, dict]:
    F, k = A.field, A.k
    forms, raw = {}, {}
    for S in itertools.combinations(range(len(A)), k - 2):
        tf = tangent_forms(A, S)
        forms[S] = tf
        raw[S] = F.prod(evaluate_forms(F, tf, A.M), axis=0) if tf.shape[0] else np.ones(len(A), dtype=np.int64)
    return forms, raw


def _check_shape(A: Arc):
    if A.k < 3:
        raise TangentError("tangent systems need k >= 3")
    if len(A) < A.k:
        raise TangentError("arc must have at least k points")
    if A.t < 0:
        raise TangentError("more than q+k-1 points: not an arc")


def unscaled_system(A: Arc) -> TangentSystem:
    """Tangent products with every scalar equal to 1."""
    _check_shape(A)
    forms, raw = _raw_system(A)
    return TangentSystem(A, forms, {S: 1 for S in forms}, raw, base=1, scaled=False)


def build_scaled_system(A: Arc, base: int = 1) -> TangentSystem:
    """Scale all ``f_S`` so that ``G`` is well defined.

    ``E`` is the first ``k-2`` indices.  ``f_E`` is normalised to take the value
    ``base`` at point ``k-2``.  Every other ``S`` is scaled so that
    ``f_S(e) = (-1)^(s(t+1)) f_{S+e-a}(a)``, where ``e`` is the first element
    of ``E`` missing from ``S``, ``a`` the last element of ``S`` outside ``E``
    and ``s`` the number of elements of ``S`` after ``e``.  The right side has
    one fewer element outside ``E``, so processing by that count resolves
    every dependency.
    """
    _check_shape(A)
    F, k, t = A.field, A.k, A.t
    if t < 1:
        raise TangentError("t = 0: there are no tangents to scale")
    if base == 0:
        raise TangentError("base normalisation must be nonzero")
    forms, raw = _raw_system(A)
    E = tuple(range(k - 2))
    Eset = set(E)
    order = sorted(forms, key=lambda S: (len(set(S) - Eset), S))
    scalars: dict[tuple[int, ...], int] = {}
    values: dict[tuple[int, ...], np.ndarray] = {}
    for S in order:
        if S == E:
            c = F.div(base, int(raw[S][k - 2]))
        else:
            e = min(Eset - set(S))
            a = max(set(S) - Eset)
            prev = _key(set(S) - {a} | {e})
            s = sum(1 for x in S if x > e)
            target = F.mul(_sign(F, (s * (t + 1)) % 2 == 1), int(values[prev][a]))
            c = F.div(target, int(raw[S][e]))
        scalars[S] = int(c)
        values[S] = F.mul(raw[S], int(c))
    return TangentSystem(A, forms, scalars, values, base=int(base), scaled=True)


def g_value(sys: TangentSystem, C: Sequence[int]) -> int:
    """``g`` of an ordered ``(k-1)``-tuple of arc indices."""
    C = [int(c) for c in C]
    if len(C) != sys.k - 1:
        raise TangentError(f"need {sys.k - 1} indices")
    if len(set(C)) != len(C):
        raise TangentError("repeated index")
    F = sys.field
    odd = (inversions(C) * (sys.t + 1)) % 2 == 1
    return int(F.mul(_sign(F, odd), sys.G(C)))


def _after(C: Sequence[int], x: int) -> int:
    return sum(1 for c in C if c > x)


def _disjoint(*parts) -> list[int]:
    flat = [int(i) for p in parts for i in (p if isinstance(p, (list, tuple)) else [p])]
    if len(set(flat)) != len(flat):
        raise TangentError("indices must be distinct")
    return flat


def check_lemma_of_tangents(sys: TangentSystem | Arc, D: Sequence[int], x: int, y: int, z: int) -> bool:
    """Triple product identity of tangent values; independent of scaling."""
    if isinstance(sys, Arc):
        sys = unscaled_system(sys)
    D = list(D)
    if len(D) != sys.k - 3:
        raise TangentError(f"D must have {sys.k - 3} elements")
    all_idx = _disjoint(D, x, y, z)
    if any(not 0 <= i < sys.n for i in all_idx):
        raise TangentError("indices out of range")
    F = sys.field
    f = lambda a, b: sys.f(D + [a], b)
    lhs = F.mul(F.mul(f(x, y), f(y, z)), f(z, x))
    rhs = F.mul(F.mul(f(y, x), f(z, y)), f(x, z))
    rhs = F.mul(_sign(F, (sys.t + 1) % 2 == 1), rhs)
    return int(lhs) == int(rhs)


def check_scaled_law(sys: TangentSystem, D: Sequence[int], x: int, y: int) -> bool:
    """Pairwise law ``f_{D+x}(y) = (-1)^((t+1)(after(x)+after(y))) f_{D+y}(x)``."""
    D = list(D)
    if len(D) != sys.k - 3:
        raise TangentError(f"D must have {sys.k - 3} elements")
    _disjoint(D, x, y)
    F = sys.field
    C = D + [x, y]
    odd = ((sys.t + 1) * (_after(C, x) + _after(C, y))) % 2 == 1
    return sys.f(D + [x], y) == int(F.mul(_sign(F, odd), sys.f(D + [y], x)))


# ---------------------------------------------------------------------------
# sum equations
# ---------------------------------------------------------------------------

class DetTable:
    """``det(a_u, a_C)`` for every arc point ``u`` and sorted ``(k-1)``-subset ``C``."""

    def __init__(self, A: Arc):
        F, k, n = A.field, A.k, len(A)
        self.subsets = list(itertools.combinations(range(n), k - 1))
        self.index = {C: i for i, C in enumerate(self.subsets)}
        Cs = A.M[np.array(self.subsets, dtype=np.int64)]
        mats = np.concatenate(
            [np.broadcast_to(A.M[None, :, None, :], (len(self.subsets), n, 1, k)),
             np.broadcast_to(Cs[:, None], (len(self.subsets), n, k - 1, k))],
            axis=2,
        )
        self.table = det_batch(F, mats)

    def __call__(self, u: int, C: Sequence[int]) -> int:
        return int(self.table[self.index[tuple(C)], u])


def _term(sys: TangentSystem, dets: DetTable, E: Sequence[int], C: tuple[int, ...]) -> int:
    F = sys.field
    val = sys.G(C)
    for u in E:
        if u not in C:
            val = F.mul(val, F.inv(dets(u, C)))
    return int(val)


def _check_E(sys: TangentSystem, E: Sequence[int]) -> tuple[int, ...]:
    E = _key(E)
    if len(set(E)) != len(E) or len(E) != sys.k + sys.t:
        raise TangentError(f"E must be a {sys.k + sys.t}-subset of the arc")
    if len(sys.arc) < sys.k + sys.t:
        raise TangentError("arc has fewer than k+t points")
    return E


def sum_equation(sys: TangentSystem, E: Sequence[int], S: Sequence[int],
                 dets: DetTable | None = None, g_override: dict | None = None) -> int:
    """Sum over ``(k-1)``-subsets ``C`` with ``S < C <= E`` of ``g(C) / prod det(u, C)``.

    ``g_override`` replaces selected ``g`` values (keyed by sorted tuples); it
    exists for negative controls.
    """
    E = _check_E(sys, E)
    S = _key(S)
    if len(S) != sys.k - 2 or not set(S) <= set(E):
        raise TangentError("S must be a (k-2)-subset of E")
    dets = dets or DetTable(sys.arc)
    F = sys.field
    total = 0
    for c in E:
        if c in S:
            continue
        C = _key(S + (c,))
        term = _term(sys, dets, E, C)
        if g_override and C in g_override:
            term = int(F.mul(F.div(term, sys.G(C)), g_override[C])) if g_override[C] else 0
        total = F.add(total, term)
    return int(total)


def delta_equation(sys: TangentSystem, E: Sequence[int], Delta: Sequence[int],
                   dets: DetTable | None = None) -> int:
    """Same summand as :func:`sum_equation`, over the ``(k-1)``-subsets of ``Delta``."""
    E = _check_E(sys, E)
    Delta = _key(Delta)
    F = sys.field
    if sys.k > F.p:
        raise TangentError(f"needs k <= p (k={sys.k}, p={F.p})")
    if len(Delta) != sys.t + 2 or not set(Delta) <= set(E):
        raise TangentError("Delta must be a (t+2)-subset of E")
    dets = dets or DetTable(sys.arc)
    total = 0
    for C in itertools.combinations(Delta, sys.k - 1):
        total = F.add(total, _term(sys, dets, E, C))
    return int(total)


def lambda_combination(sys: TangentSystem, E: Sequence[int], Delta: Sequence[int],
                       dets: DetTable | None = None) -> tuple[int, int]:
    """``(sum_S lambda_S * sum_equation(E, S), (-1)^(k-2) (k-1)! * delta_equation)``.

    ``lambda_S = (-1)^m (k-m-2)! m!`` with ``m = |S & Delta|``.  The two numbers
    agree identically, whatever the ``g`` values.
    """
    E = _check_E(sys, E)
    Delta = set(_key(Delta))
    F = sys.field
    k = sys.k
    dets = dets or DetTable(sys.arc)
    lhs = 0
    for S in itertools.combinations(E, k - 2):
        m = len(set(S) & Delta)
        lam = F.from_int((-1) ** m * factorial(k - m - 2) * factorial(m))
        lhs = F.add(lhs, F.mul(lam, sum_equation(sys, E, S, dets)))
    rhs = F.mul(F.from_int((-1) ** (k - 2) * factorial(k - 1)), delta_equation(sys, E, sorted(Delta), dets))
    return int(lhs), int(rhs)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepReport:
    name: str
    total: int = 0
    passed: int = 0
    first_failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.total == self.passed

    def record(self, ok: bool, case: tuple):
        self.total += 1
        if ok:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = case

    def to_json(self) -> dict:
        return {"check": self.name, "total": self.total, "passed": self.passed,
                "ok": self.ok, "first_failure": list(self.first_failure) if self.first_failure else None}


def _dxyz(n: int, k: int, arity: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for D in itertools.combinations(range(n), k - 3):
        rest = [i for i in range(n) if i not in D]
        for xs in itertools.permutations(rest, arity):
            yield D, xs


def sweep_lemma(sys: TangentSystem) -> SweepReport:
    """Triple identity over every ``D`` and ordered distinct ``(x, y, z)``."""
    rep = SweepReport("lemma")
    for D, (x, y, z) in _dxyz(sys.n, sys.k, 3):
        rep.record(check_lemma_of_tangents(sys, D, x, y, z), (D, x, y, z))
    return rep


def sweep_scaled(sys: TangentSystem) -> SweepReport:
    """Pairwise scaled law over every ``D`` and ordered distinct ``(x, y)``."""
    rep = SweepReport("scaled")
    for D, (x, y) in _dxyz(sys.n, sys.k, 2):
        rep.record(check_scaled_law(sys, D, x, y), (D, x, y))
    return rep


def sweep_sums(sys: TangentSystem) -> SweepReport:
    """``sum_equation == 0`` for every ``(k+t)``-subset ``E`` and ``S`` inside it."""
    rep = SweepReport("sums")
    dets = DetTable(sys.arc)
    for E in itertools.combinations(range(sys.n), sys.k + sys.t):
        for S in itertools.combinations(E, sys.k - 2):
            rep.record(sum_equation(sys, E, S, dets) == 0, (E, S))
    return rep


def sweep_delta(sys: TangentSystem) -> SweepReport:
    """``delta_equation == 0`` for every ``E`` and ``(t+2)``-subset of it (needs ``k <= p``)."""
    rep = SweepReport("delta")
    dets = DetTable(sys.arc)
    for E in itertools.combinations(range(sys.n), sys.k + sys.t):
        for Delta in itertools.combinations(E, sys.t + 2):
            rep.record(delta_equation(sys, E, Delta, dets) == 0, (E, Delta))
    return rep


def count_cases(n: int, k: int, t: int) -> dict[str, int]:
    """Sizes of the exhaustive sweeps, for planning."""
    rest = n - (k - 3)
    return {
        "lemma": comb(n, k - 3) * rest * (rest - 1) * (rest - 2),
        "scaled": comb(n, k - 3) * rest * (rest - 1),
        "sums": comb(n, k + t) * comb(k + t, k - 2),
        "delta": comb(n, k + t) * comb(k + t, t + 2),
    }
