"""The dual envelope of an arc and planar tensor forms.

For an arc with ``t >= 1`` tangents per ``(k-2)``-subset, the envelope is a
form ``phi(Z)`` of degree ``m*t`` in dual coordinates (``m = 1`` for even ``q``,
``m = 2`` for odd ``q``) vanishing on every tangent hyperplane.  It is built
by interpolation from the scaled tangent system over the first ``m*t + k - 1``
points ``E`` of the arc:

    phi(Z) = sum_T  G(T)^m  prod_{u in E - T}  L_u(Z) / det(T, u)

``T`` runs over the sorted ``(k-1)``-subsets of ``E`` and ``L_u(Z)`` is the
Laplace expansion of ``det(X_1, ..., X_{k-1}, u)`` along its last row, written
in the unsigned minors ``Z_j = det_j(X)``.

A hyperplane with form ``h`` has dual coordinates ``z_j = (-1)^(k-1+j) h_j``
(``j`` counted from 0); a point ``x`` corresponds to the linear factor
``L_x(Z)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arc import Arc, ArcError, is_arc, tangent_count_check
from .geometry import all_points, hyperplanes_through, normalize_rows, point_codes
from .gf import GF
from .linalg import det_batch, nullspace, rank, rref
from .poly import HomPoly, PolyError, minor_polys, monomial_values, monomials
from .tangent import TangentSystem, build_scaled_system, tangent_forms


class EnvelopeError(ValueError):
    pass


def envelope_m(q: int) -> int:
    return 1 if q % 2 == 0 else 2


def _signs(F: GF, k: int) -> np.ndarray:
    return np.array([1 if (k - 1 + j) % 2 == 0 else int(F.neg(1)) for j in range(k)], dtype=np.int64)


def hyperplane_to_dual(F: GF, forms) -> np.ndarray:
    """Dual coordinates ``z`` of hyperplanes given by linear forms."""
    forms = np.atleast_2d(np.asarray(forms, dtype=np.int64))
    return F.mul(forms, _signs(F, forms.shape[1])[None, :])


dual_to_point = hyperplane_to_dual  # the sign change is an involution


def point_factor(F: GF, x) -> HomPoly:
    """The linear form ``L_x(Z)`` attached to a point ``x``."""
    x = np.asarray(x, dtype=np.int64)
    return HomPoly.linear(F, F.mul(x, _signs(F, x.shape[0])).tolist())


def minors(F: GF, rows) -> np.ndarray:
    """``det_j`` of each ``(k-1) x k`` matrix in a stack, no alternating sign."""
    R = np.asarray(rows, dtype=np.int64)
    k = R.shape[-1]
    if R.shape[-2] != k - 1:
        raise EnvelopeError("need k-1 rows of length k")
    out = np.empty(R.shape[:-2] + (k,), dtype=np.int64)
    for j in range(k):
        out[..., j] = det_batch(F, np.delete(R, j, axis=-1)) if k > 1 else 1
    return out


def detj_substitute(phi: HomPoly) -> HomPoly:
    """``phi(det_1(X), ..., det_k(X))`` in the ``(k-1)*k`` entries of ``X``.

    Variable ``r*k + c`` is row ``r``, column ``c``.
    """
    return phi.substitute(minor_polys(phi.field, phi.nvars))


@dataclass
class EnvelopeResult:
    """``phi`` is normalised; ``raw = phi / scale`` is the interpolated form."""

    phi: HomPoly
    raw: HomPoly
    scale: int
    m: int
    t: int
    E: tuple[int, ...]
    system: TangentSystem

    @property
    def degree(self) -> int:
        return self.phi.degree

    def to_json(self) -> dict:
        return {"m": self.m, "t": self.t, "E": list(self.E), "phi": self.phi.to_json()}


def _check_hypothesis(A: Arc, m: int):
    if A.t < 1:
        raise EnvelopeError("t = 0: the arc has no tangents")
    need = m * A.t + A.k - 1
    if len(A) < need:
        raise EnvelopeError(f"envelope needs |A| >= m*t+k-1 = {need}, arc has {len(A)} points")


def sbbt_envelope(A: Arc, system: TangentSystem | None = None, verify: bool = True) -> EnvelopeResult:
    """Interpolate the envelope and check ``phi(det(x, S)) == f_S(x)^m`` everywhere."""
    F, k = A.field, A.k
    m = envelope_m(F.q)
    _check_hypothesis(A, m)
    sys = system if system is not None else build_scaled_system(A)
    t = A.t
    E = tuple(range(m * t + k - 1))
    factors = {u: point_factor(F, A.M[u]) for u in E}
    raw = HomPoly.zero(F, k, m * t)
    for T in itertools.combinations(E, k - 1):
        rest = [u for u in E if u not in T]
        mats = np.concatenate(
            [np.broadcast_to(A.M[list(T)][None], (len(rest), k - 1, k)), A.M[rest][:, None, :]], axis=1)
        dets = det_batch(F, mats)
        coef = F.mul(F.power(sys.G(T), m), F.inv(F.prod(dets)))
        term = HomPoly.constant(F, k, int(coef))
        for u in rest:
            term = term * factors[u]
        raw = raw + term
    if raw.is_zero() or raw.degree != m * t:
        raise EnvelopeError("interpolation produced a degenerate form")
    if verify:
        bad = verify_envelope(raw, sys, m)
        if bad is not None:
            raise EnvelopeError(f"envelope identity fails at S={bad[0]}, x={bad[1]}; scaling is inconsistent")
    phi, s = raw.normalized()
    return EnvelopeResult(phi, raw, s, m, t, E, sys)


def verify_envelope(raw: HomPoly, sys: TangentSystem, m: int) -> tuple | None:
    """First ``(S, x)`` where ``raw(det(x, S)) != f_S(x)^m``, or None."""
    A = sys.arc
    F, k, n = A.field, A.k, len(A)
    for S in itertools.combinations(range(n), k - 2):
        rows = np.concatenate(
            [A.M[:, None, :], np.broadcast_to(A.M[list(S)][None], (n, k - 2, k))], axis=1)
        z = minors(F, rows)
        got = raw.evaluate(z)
        want = F.power(sys.values[S], m)
        diff = np.flatnonzero(got != want)
        if diff.size:
            return S, int(diff[0])
    return None


def tangent_dual_points(A: Arc) -> np.ndarray:
    """Canonical dual coordinates of every tangent hyperplane of ``A``."""
    F, k = A.field, A.k
    forms = [tangent_forms(A, S) for S in itertools.combinations(range(len(A)), k - 2)]
    allf = np.vstack([f for f in forms if f.size] or [np.zeros((0, k), dtype=np.int64)])
    if not allf.size:
        return allf
    z = normalize_rows(F, hyperplane_to_dual(F, allf))
    _, idx = np.unique(point_codes(F, z), return_index=True)
    return z[np.sort(idx)]


def envelope_space(A: Arc, degree: int | None = None, multiplicity: int = 1) -> list[HomPoly]:
    """Basis of the degree-``m*t`` forms vanishing on all tangent dual points.

    With ``multiplicity=2`` each zero must also be double along the pencil
    line of the ``(k-2)``-subset it belongs to (odd ``q`` only).
    """
    F, k = A.field, A.k
    if degree is None:
        degree = envelope_m(F.q) * A.t
    if multiplicity not in (1, 2):
        raise EnvelopeError("multiplicity must be 1 or 2")
    if multiplicity == 2 and F.p == 2:
        raise EnvelopeError("double zeros via derivatives need odd characteristic")
    monos = monomials(k, degree)
    M = monomial_values(F, monos, tangent_dual_points(A))
    rows = [M]
    if multiplicity == 2:
        rows.append(_pencil_derivative_rows(A, monos))
    ker = nullspace(F, np.vstack(rows))
    return [HomPoly.from_vector(F, k, degree, v) for v in ker]


def _pencil_derivative_rows(A: Arc, monos) -> np.ndarray:
    # derivative of each monomial at a tangent dual point along its pencil line
    F, k = A.field, A.k
    E = np.array(monos, dtype=np.int64)
    out = []
    for S in itertools.combinations(range(len(A)), k - 2):
        tang = tangent_forms(A, S)
        if not tang.size:
            continue
        pencil = hyperplanes_through(F, A.M[list(S)]) if S else all_points(F, 2)
        codes = set(point_codes(F, tang).tolist())
        other = next(h for h in pencil if int(point_codes(F, h[None])[0]) not in codes)
        d = hyperplane_to_dual(F, other[None])[0]
        for z in hyperplane_to_dual(F, tang):
            row = np.zeros(len(monos), dtype=np.int64)
            for j in range(k):
                has = E[:, j] > 0
                if not has.any() or d[j] == 0:
                    continue
                lower = E[has].copy()
                lower[:, j] -= 1
                vals = monomial_values(F, lower, z[None])[0]
                coef = F.mul(np.array([F.from_int(int(e)) for e in E[has, j]], dtype=np.int64), int(d[j]))
                row[has] = F.add(row[has], F.mul(vals, coef))
            out.append(row)
    return np.array(out, dtype=np.int64).reshape(-1, len(monos))


def envelope_uniqueness_dim(A: Arc, degree: int | None = None, multiplicity: int = 1) -> int:
    return len(envelope_space(A, degree, multiplicity))


_FACTOR_GUARD = 200_000


def linear_factors(phi: HomPoly) -> list[tuple[tuple[int, ...], int]]:
    """All projective linear factors ``c . Z`` of ``phi`` with multiplicities.

    Candidates are all points of the dual space; ``c`` is returned canonical.
    """
    F, k = phi.field, phi.nvars
    if not (k <= 4 or F.q <= 16):
        raise EnvelopeError("candidate space too large for linear factor search")
    cands = all_points(F, k)
    if cands.shape[0] > _FACTOR_GUARD:
        raise EnvelopeError("candidate space too large for linear factor search")
    # a linear factor must vanish wherever it does; prefilter by values
    out = []
    for c in cands:
        ell = HomPoly.linear(F, c.tolist())
        mult = 0
        rest = phi
        while rest.degree >= 1:
            try:
                rest = rest.divide_exact(ell)
            except PolyError:
                break
            mult += 1
        if mult:
            out.append((tuple(int(v) for v in c), mult))
    return out


def complete_via_envelope(A: Arc, env: EnvelopeResult | None = None) -> Arc:
    """Append the points whose linear factor divides ``phi`` with multiplicity ``m``."""
    F, k = A.field, A.k
    env = env if env is not None else sbbt_envelope(A)
    pts = [A.M]
    cur = A.M
    for c, mult in linear_factors(env.phi):
        if mult < env.m:
            continue
        x = normalize_rows(F, dual_to_point(F, np.array(c)))[0]
        trial = np.vstack([cur, x[None]])
        if is_arc(F, trial, k):
            cur = trial
            pts.append(x[None])
    return Arc.from_array(F, cur, {**A.meta, "completed": True})


# ---------------------------------------------------------------------------
# planar forms
# ---------------------------------------------------------------------------

class VanishingForms(NamedTuple):
    basis: list[HomPoly]
    socle: tuple[int, ...]


def vanishing_forms(F: GF, points, r: int) -> VanishingForms:
    """Degree-``r`` ternary forms vanishing on ``points``, plus an ``r``-socle.

    The socle indexes points whose evaluation columns form a basis of the
    column space of the (monomial x point) evaluation matrix.
    """
    P = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if P.shape[1] != 3:
        raise EnvelopeError("planar point sets only")
    monos = monomials(3, r)
    M = monomial_values(F, monos, P)  # points x monomials
    ker = nullspace(F, M)
    _, piv = rref(F, M.T)
    return VanishingForms([HomPoly.from_vector(F, 3, r, v) for v in ker], tuple(piv))


class TensorCheck(NamedTuple):
    ok: bool
    proportional: bool
    symmetric: bool
    factors: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _bidegree(Fpoly: HomPoly) -> tuple[int, int]:
    if Fpoly.nvars != 6:
        raise EnvelopeError("a planar tensor form has 6 variables (X1..X3, Y1..Y3)")
    degs = {(sum(e[:3]), sum(e[3:])) for e in Fpoly.terms}
    if len(degs) > 1:
        raise EnvelopeError("form is not bihomogeneous")
    return degs.pop() if degs else (Fpoly.degree // 2, Fpoly.degree - Fpoly.degree // 2)


def verify_planar_tensor(A: Arc, Fpoly: HomPoly) -> TensorCheck:
    """Check a ``(t,t)``-form against the tangent products of a planar arc.

    Both conditions are tested modulo the forms vanishing on ``A``, which is
    the same as comparing values on ``A`` (resp. ``A x A``):
    ``F(x, a) = c_a f_a(x)`` with ``c_a != 0`` and ``F(x, y) = eps F(y, x)``,
    ``eps = +1`` for odd ``t`` and ``-1`` for even ``t``.
    """
    if A.k != 3:
        raise EnvelopeError("planar arcs only")
    F, t, n = A.field, A.t, len(A)
    if t < 1:
        raise EnvelopeError("t = 0")
    if _bidegree(Fpoly) != (t, t):
        raise EnvelopeError(f"form must have bidegree ({t},{t})")
    X = np.repeat(A.M, n, axis=0)
    Y = np.tile(A.M, (n, 1))
    V = Fpoly.evaluate(np.hstack([X, Y])).reshape(n, n)  # V[x, y] = F(a_x, a_y)
    factors = []
    prop = True
    for a in range(n):
        fa = F.prod(F.matmul(tangent_forms(A, [a]), A.M.T), axis=0)
        i = next(j for j in range(n) if j != a)
        c = int(F.div(V[i, a], fa[i]))
        if c == 0 or not np.array_equal(V[:, a], F.mul(fa, c)):
            prop = False
            c = 0
        factors.append(c)
    eps = 1 if t % 2 == 1 else int(F.neg(1))
    sym = bool(np.array_equal(V, F.mul(V.T, eps)))
    return TensorCheck(prop and sym, prop, sym, tuple(factors))


def twelve_arc_tensor() -> HomPoly:
    """The explicit ``(3,3)``-form of the 12-point arc of PG(2,13)."""
    from .gf import field_create

    F = field_create(13)
    terms = {
        (0, 2, 1, 2, 0, 1): 5, (2, 0, 1, 0, 2, 1): 5,
        (0, 1, 2, 2, 1, 0): 5, (2, 1, 0, 0, 1, 2): 5,
        (1, 0, 2, 1, 2, 0): 5, (1, 2, 0, 1, 0, 2): 5,
        (1, 1, 1, 1, 1, 1): 6,
        (3, 0, 0, 3, 0, 0): 1, (0, 3, 0, 0, 3, 0): 1, (0, 0, 3, 0, 0, 3): 1,
    }
    return HomPoly(F, 6, 6, terms)


def polarization_tensor(F: GF, conic_coeffs) -> HomPoly:
    """Bilinear polarisation ``B(X, Y)`` of a ternary quadratic form."""
    a, b, c, d, e, f = (int(v) for v in conic_coeffs)
    two = F.from_int(2)
    terms: dict[tuple[int, ...], int] = {}

    def put(i, j, v):
        ex = [0] * 6
        ex[i] += 1
        ex[3 + j] += 1
        terms[tuple(ex)] = int(F.add(terms.get(tuple(ex), 0), v))

    # Q = a X1^2 + b X1X2 + c X1X3 + d X2^2 + e X2X3 + f X3^2
    put(0, 0, F.mul(two, a)); put(1, 1, F.mul(two, d)); put(2, 2, F.mul(two, f))
    for (i, j), v in (((0, 1), b), ((0, 2), c), ((1, 2), e)):
        put(i, j, v)
        put(j, i, v)
    return HomPoly(F, 6, 2, terms)
