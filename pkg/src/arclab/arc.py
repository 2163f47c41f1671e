"""Arcs: verification, named constructions, duality and extension.

An :class:`Arc` keeps the *raw* vectors it was built from, in order.  Those
representatives matter: the scaled tangent system in :mod:`arclab.tangent`
depends on both the order and the chosen vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb, gcd
from typing import NamedTuple, Sequence

import numpy as np

from .gf import GF, FieldError, embedding, field_create, field_of_order, fractional_power
from .geometry import (
    all_points,
    conic_through,
    normalize_rows,
    point_codes,
)
from .linalg import det_batch, inverse, nullspace, rank


class ArcError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Arc:
    """An ordered point set of PG(k-1, q) with fixed vector representatives."""

    field: GF
    k: int
    points: tuple[tuple[int, ...], ...]
    meta: dict = dc_field(default_factory=dict, compare=False)

    @classmethod
    def from_array(cls, F: GF, V, meta: dict | None = None) -> "Arc":
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        return cls(F, V.shape[1], tuple(tuple(int(x) for x in row) for row in V), dict(meta or {}))

    @cached_property
    def M(self) -> np.ndarray:
        """Points as an ``(n, k)`` integer array (rows are raw vectors)."""
        a = np.array(self.points, dtype=np.int64).reshape(-1, self.k)
        a.setflags(write=False)
        return a

    def __len__(self) -> int:
        return len(self.points)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def t(self) -> int:
        """Number of tangent hyperplanes through each ``(k-2)``-subset."""
        return self.q + self.k - 1 - len(self)

    def canonical(self) -> np.ndarray:
        return normalize_rows(self.field, self.M)

    def point_set(self) -> frozenset[int]:
        return frozenset(int(c) for c in point_codes(self.field, self.canonical()))

    def subset(self, idx: Sequence[int]) -> "Arc":
        return Arc(self.field, self.k, tuple(self.points[i] for i in idx), dict(self.meta))

    def reordered(self, order: Sequence[int]) -> "Arc":
        return self.subset(order)

    def with_points(self, extra) -> "Arc":
        extra = np.atleast_2d(np.asarray(extra, dtype=np.int64))
        return Arc.from_array(self.field, np.vstack([self.M, extra]), self.meta)

    def same_points(self, other: "Arc") -> bool:
        return self.field is other.field and self.k == other.k and self.point_set() == other.point_set()

    def __eq__(self, other):
        if not isinstance(other, Arc):
            return NotImplemented
        return self.field is other.field and self.k == other.k and self.points == other.points

    def __hash__(self):
        return hash((self.field.q, self.k, self.points))

    def __repr__(self):
        name = self.meta.get("family", "arc")
        return f"<Arc {name}: {len(self)} points in PG({self.k - 1},{self.q})>"


class ArcCheck(NamedTuple):
    """Result of :func:`is_arc`; ``witness`` indexes a dependent subset."""

    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def hyperplane_forms(F: GF, C) -> np.ndarray:
    """Generalised cross products of a stack of ``(k-1) x k`` matrices.

    Row ``h`` satisfies ``h . x == det([x; C])``; it is zero exactly when the
    rows of ``C`` are dependent.
    """
    C = np.asarray(C, dtype=np.int64)
    k = C.shape[-1]
    out = np.empty(C.shape[:-2] + (k,), dtype=np.int64)
    for j in range(k):
        minor = np.delete(C, j, axis=-1)
        d = det_batch(F, minor) if k > 1 else np.ones(C.shape[:-2], dtype=np.int64)
        out[..., j] = d if j % 2 == 0 else F.neg(d)
    return out


_BRUTE_EXTRA = 4


def is_arc(F: GF, points, k: int | None = None) -> ArcCheck:
    """Check that every ``k`` of the given vectors are independent."""
    V = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if k is None:
        k = V.shape[1]
    if V.shape[1] != k:
        raise ArcError(f"vectors have length {V.shape[1]}, expected {k}")
    n = V.shape[0]
    if n == 0:
        return ArcCheck(True)
    if np.any(~(V != 0).any(axis=1)):
        raise ArcError("zero vector in point list")
    if n <= k:
        if rank(F, V) == n:
            return ArcCheck(True)
        for r in range(2, n + 1):
            for sub in itertools.combinations(range(n), r):
                if rank(F, V[list(sub)]) < r:
                    return ArcCheck(False, sub)
    if n <= k + _BRUTE_EXTRA:
        subs = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
        dets = det_batch(F, V[subs])
        bad = np.flatnonzero(dets == 0)
        if bad.size:
            return ArcCheck(False, tuple(int(i) for i in subs[bad[0]]))
        return ArcCheck(True)
    return _sieve_check(F, V, k)


def _sieve_check(F: GF, V: np.ndarray, k: int) -> ArcCheck:
    # an arc iff every (k-1)-subset spans a hyperplane and no two spanned
    # hyperplanes coincide (two equal ones put >= k points in a hyperplane)
    n = V.shape[0]
    subs = np.array(list(itertools.combinations(range(n), k - 1)), dtype=np.int64)
    forms = hyperplane_forms(F, V[subs])
    zero = ~(forms != 0).any(axis=1)
    if zero.any():
        bad = subs[np.flatnonzero(zero)[0]]
        other = next(i for i in range(n) if i not in set(bad.tolist()))
        return ArcCheck(False, tuple(sorted(bad.tolist() + [other])))
    codes = point_codes(F, normalize_rows(F, forms))
    order = np.argsort(codes, kind="stable")
    dup = np.flatnonzero(codes[order][1:] == codes[order][:-1])
    if dup.size:
        c1 = subs[order[dup[0]]].tolist()
        c2 = subs[order[dup[0] + 1]].tolist()
        extra = next(i for i in c2 if i not in c1)
        return ArcCheck(False, tuple(sorted(c1 + [extra])))
    return ArcCheck(True)


# ---------------------------------------------------------------------------
# normal rational curves
# ---------------------------------------------------------------------------

def nrc(F: GF, k: int) -> Arc:
    """The normal rational curve ``{(1,t,...,t^(k-1))} + {(0,...,0,1)}``."""
    if F.q < k - 1:
        raise ArcError(f"need q >= k-1 for a normal rational curve (q={F.q}, k={k})")
    t = F.elements()
    rows = np.stack([F.power(t, i) for i in range(k)], axis=1)
    inf = np.zeros((1, k), dtype=np.int64)
    inf[0, -1] = 1
    return Arc.from_array(F, np.vstack([rows, inf]), {"family": "nrc"})


def nrc_through(F: GF, pts) -> np.ndarray:
    """All ``q+1`` points of the normal rational curve through ``k+2`` arc points.

    With ``p_1..p_k`` as a basis and ``p_0 = sum u_i p_i``,
    ``p_{k+1} = sum v_i p_i``, the curve is the image of
    ``(x1, x2) -> sum_i f_i(x1, x2) p_i`` with
    ``f_i = prod_{j != i} (x1/u_j - x2/v_j)``.
    """
    P = np.asarray(pts, dtype=np.int64)
    k = P.shape[1]
    if P.shape[0] < k + 2:
        raise ArcError(f"need {k + 2} points")
    P = P[: k + 2]
    if not is_arc(F, P, k):
        raise ArcError("points do not form an arc")
    B = P[1: k + 1]
    Binv = inverse(F, B)
    u = F.matmul(P[0][None], Binv)[0]
    v = F.matmul(P[k + 1][None], Binv)[0]
    ui, vi = F.inv(u), F.inv(v)
    line = all_points(F, 2)
    vals = np.empty((line.shape[0], k), dtype=np.int64)
    # factor_j(x) = x1/u_j - x2/v_j for every point x of PG(1, q)
    fac = F.sub(F.mul(line[:, 0:1], ui[None, :]), F.mul(line[:, 1:2], vi[None, :]))
    for i in range(k):
        vals[:, i] = F.prod(np.delete(fac, i, axis=1), axis=1)
    return F.matmul(vals, B)


def contained_in_nrc(F: GF, pts) -> bool:
    """True if the arc lies on a normal rational curve (``|pts| >= k+2``)."""
    P = np.asarray(pts, dtype=np.int64)
    k = P.shape[1]
    if P.shape[0] <= k + 2:
        return True
    curve = set(point_codes(F, normalize_rows(F, nrc_through(F, P))).tolist())
    return set(point_codes(F, normalize_rows(F, P)).tolist()) <= curve


# ---------------------------------------------------------------------------
# hyperovals
# ---------------------------------------------------------------------------

FAMILIES = (
    "regular", "translation", "segre", "glynn1", "glynn2", "payne",
    "cherowitzo", "subiaco1", "subiaco2", "subiaco3", "adelaide",
)


@dataclass(frozen=True)
class OPolynomial:
    """A named o-polynomial family and its parameters.

    ``e`` is the translation exponent ``2^e``.  ``omega``, ``delta`` and
    ``beta`` (field elements, ``beta`` in GF(q^2)) and ``m`` default to the
    least admissible choice when left as None.
    """

    family: str
    e: int | None = None
    omega: int | None = None
    delta: int | None = None
    beta: int | None = None
    m: int | None = None


class _Subfield:
    """GF(q) inside GF(q^2) via a fixed embedding."""

    def __init__(self, F: GF):
        self.small = F
        self.big = field_create(2, 2 * F.h)
        self.emb = embedding(F, self.big)
        self.back = {int(b): a for a, b in enumerate(self.emb)}

    def down(self, vals) -> np.ndarray:
        try:
            return np.array([self.back[int(v)] for v in np.ravel(vals)], dtype=np.int64)
        except KeyError as exc:
            raise ArcError("value left the subfield GF(q)") from exc


def _sqrt(F: GF, x):
    return fractional_power(F, x, 1, 2)


def _require_h(cond: bool, family: str, h: int):
    if not cond:
        raise ArcError(f"{family} hyperoval is not defined for h={h}")


def o_polynomial_values(F: GF, opoly: OPolynomial) -> tuple[np.ndarray, dict]:
    """Values ``f(t)`` for ``t`` in GF(q) (canonical order) and the parameters used."""
    if F.p != 2:
        raise ArcError("hyperovals exist only in even characteristic")
    h = F.h
    t = F.elements()
    fam = opoly.family
    used: dict = {}
    pw = lambda x, n: F.power(x, n)
    if fam == "regular":
        return pw(t, 2), used
    if fam == "translation":
        e = 1 if opoly.e is None else opoly.e
        if gcd(e, h) != 1:
            raise ArcError(f"translation exponent e={e} needs gcd(e, h) = 1 (h={h})")
        used["e"] = e
        return pw(t, 2**e), used
    if fam in ("segre", "glynn1", "glynn2", "payne", "cherowitzo"):
        _require_h(h % 2 == 1, fam, h)
        sigma = 2 ** ((h + 1) // 2)
        if fam == "segre":
            return pw(t, 6), used
        if fam == "glynn1":
            return pw(t, 3 * sigma + 4), used
        if fam == "glynn2":
            lam = 2 ** ((h + 1) // 4) if h % 4 == 3 else 2 ** (3 * ((h - 1) // 4) + 1)
            used["lambda"] = lam
            return pw(t, sigma + lam), used
        if fam == "payne":
            terms = [fractional_power(F, t, a, 6) for a in (1, 3, 5)]
            return F.add(F.add(terms[0], terms[1]), terms[2]), used
        return F.add(F.add(pw(t, sigma), pw(t, sigma + 2)), pw(t, 3 * sigma + 4)), used
    if fam == "subiaco1":
        _require_h(h % 4 == 2, fam, h)
        om = opoly.omega
        if om is None:
            om = next(int(w) for w in t if F.add(F.add(pw(w, 2), w), 1) == 0)
        used["omega"] = om
        w2 = F.mul(om, om)
        num = F.mul(w2, F.add(pw(t, 4), t))
        den = F.add(F.add(pw(t, 4), F.mul(w2, pw(t, 2))), 1)
        return F.add(_checked_div(F, num, den), _sqrt(F, t)), used
    if fam in ("subiaco2", "subiaco3"):
        if fam == "subiaco2":
            _require_h(h % 4 == 2, fam, h)
        else:
            _require_h(h % 4 != 2, fam, h)
        d = opoly.delta
        if d is None:
            d = _default_delta(F, fam)
        used["delta"] = d
        dp = lambda n: F.power(d, n)
        den = F.add(F.add(pw(t, 4), F.mul(dp(2), pw(t, 2))), 1)
        if fam == "subiaco2":
            num = F.add(F.add(F.mul(dp(2), pw(t, 4)), F.mul(dp(5), pw(t, 3))),
                        F.add(F.mul(dp(2), pw(t, 2)), F.mul(dp(3), t)))
        else:
            num = F.add(F.add(F.mul(F.add(dp(4), dp(2)), pw(t, 3)), F.mul(dp(3), pw(t, 2))),
                        F.mul(dp(2), t))
        tail = _sqrt(F, F.mul(t, F.inv(d)))
        return F.add(_checked_div(F, num, den), tail), used
    if fam == "adelaide":
        _require_h(h % 2 == 0 and h >= 4, fam, h)
        return _adelaide(F, opoly, used), used
    raise ArcError(f"unknown o-polynomial family {fam!r}")


def _checked_div(F: GF, num, den):
    if np.any(np.asarray(den) == 0):
        raise ArcError("o-polynomial denominator vanishes on GF(q)")
    return F.mul(num, F.inv(den))


def _default_delta(F: GF, fam: str) -> int:
    if fam == "subiaco3":
        t = F.elements()
        for d in range(1, F.q):
            den = F.add(F.add(F.power(t, 4), F.mul(F.mul(d, d), F.power(t, 2))), 1)
            if F.trace2(int(F.inv(d))) == 1 and np.all(den != 0):
                return d
        raise ArcError("no delta with T2(1/delta) = 1")
    sub = _Subfield(F)
    G = sub.big
    q = F.q
    zeta = G.generator
    zq = G.power(zeta, q - 1)
    val = G.add(zq, G.inv(zq))
    return int(sub.down([val])[0])


def _adelaide(F: GF, opoly: OPolynomial, used: dict) -> np.ndarray:
    sub = _Subfield(F)
    G = sub.big
    q = F.q
    X = sub.emb[F.elements()]
    T = lambda x: G.add(x, G.power(x, q))
    betas = [opoly.beta] if opoly.beta is not None else [
        b for b in range(2, G.q) if G.power(b, q + 1) == 1
    ]
    ms = [opoly.m] if opoly.m is not None else [((q - 1) // 3) % (q + 1), (-(q - 1) // 3) % (q + 1)]
    last_err: Exception | None = None
    for beta in betas:
        for m in ms:
            try:
                Tb = T(beta)
                if Tb == 0:
                    raise ArcError("T(beta) = 0")
                first = G.mul(G.mul(T(G.power(beta, m)), G.add(X, 1)), G.inv(Tb))
                inner = G.add(G.mul(beta, X), G.power(beta, q))
                sq = fractional_power(G, X, 1, 2)
                den = G.mul(Tb, G.power(G.add(G.add(X, G.mul(Tb, sq)), 1), m - 1))
                if np.any(den == 0):
                    raise ArcError("o-polynomial denominator vanishes on GF(q)")
                second = G.mul(T(G.power(inner, m)), G.inv(den))
                vals = sub.down(G.add(G.add(first, second), sq))
                if opoly.beta is None or opoly.m is None:
                    if not is_arc(F, _oval_points(F, vals), 3):
                        raise ArcError("not an arc")
                used.update(beta=int(beta), m=int(m))
                return vals
            except ArcError as exc:
                last_err = exc
    raise ArcError(f"no admissible Adelaide parameters: {last_err}")


def _oval_points(F: GF, vals) -> np.ndarray:
    t = F.elements()
    rows = np.stack([np.ones_like(t), t, np.asarray(vals)], axis=1)
    return np.vstack([rows, [[0, 1, 0], [0, 0, 1]]])


def hyperoval(F: GF, opoly: OPolynomial | str) -> Arc:
    """``{(1, t, f(t))} + {(0,1,0), (0,0,1)}`` for an o-polynomial ``f``."""
    if isinstance(opoly, str):
        opoly = OPolynomial(opoly)
    vals, used = o_polynomial_values(F, opoly)
    pts = _oval_points(F, vals)
    chk = is_arc(F, pts, 3)
    if not chk:
        raise ArcError(f"{opoly.family} o-polynomial does not give an arc over GF({F.q}): {chk.witness}")
    return Arc.from_array(F, pts, {"family": opoly.family, **used})


# ---------------------------------------------------------------------------
# other named arcs
# ---------------------------------------------------------------------------

def segre_3space(F: GF, e: int = 1) -> Arc:
    """``{(1, t, t^s, t^(s+1))} + {(0,0,0,1)}`` with ``s = 2^e``, q even."""
    if F.p != 2:
        raise ArcError("needs q even")
    if gcd(e, F.h) != 1:
        raise ArcError(f"needs gcd(e, h) = 1 (e={e}, h={F.h})")
    t = F.elements()
    s = 2**e
    rows = np.stack([np.ones_like(t), t, F.power(t, s), F.power(t, s + 1)], axis=1)
    return Arc.from_array(F, np.vstack([rows, [[0, 0, 0, 1]]]), {"family": "segre3space", "e": e})


def glynn_arc(F: GF | None = None) -> Arc:
    """Glynn's 10-arc ``{(1,t,t^2+eta t^6,t^3,t^4)} + {(0,0,0,0,1)}`` in PG(4,9)."""
    if F is None:
        F = field_create(3, 2)
    if F.q != 9:
        raise ArcError("the Glynn arc lives over GF(9)")
    minus_one = F.neg(1)
    eta = next(int(x) for x in F.elements() if F.power(int(x), 4) == minus_one)
    t = F.elements()
    col2 = F.add(F.power(t, 2), F.mul(eta, F.power(t, 6)))
    rows = np.stack([np.ones_like(t), t, col2, F.power(t, 3), F.power(t, 4)], axis=1)
    return Arc.from_array(F, np.vstack([rows, [[0, 0, 0, 0, 1]]]), {"family": "glynn", "eta": eta})


def _hermitian_values(F: GF, M, pts, s: int) -> np.ndarray:
    ps = F.power(pts, s)
    Mx = F.matmul(ps, np.asarray(M).T)
    return F.dot(pts, Mx)


def _char_poly_has_root(F: GF, H: np.ndarray) -> bool:
    lam = F.elements()
    I = np.eye(3, dtype=np.int64)
    mats = F.sub(F.mul(lam[:, None, None], I[None]), H[None])
    return bool(np.any(det_batch(F, mats) == 0))


def kestenband_matrix(F: GF) -> np.ndarray:
    """First Hermitian ``H`` (``H^sqrt(q) = H^T``) with irreducible characteristic polynomial.

    Matrices are scanned in row-major lexicographic order of their free
    entries; diagonal entries range over GF(sqrt q).
    """
    s = _sqrt_q(F)
    sub = [int(x) for x in F.elements() if F.power(int(x), s) == int(x)]
    full = [int(x) for x in F.elements()]
    for a11, a12, a13, a22, a23, a33 in itertools.product(sub, full, full, sub, full, sub):
        H = np.array([
            [a11, a12, a13],
            [F.power(a12, s), a22, a23],
            [F.power(a13, s), F.power(a23, s), a33],
        ], dtype=np.int64)
        if not _char_poly_has_root(F, H):
            return H
    raise ArcError("no suitable Hermitian matrix")  # pragma: no cover


def _sqrt_q(F: GF) -> int:
    s = int(round(F.q**0.5))
    if s * s != F.q:
        raise ArcError(f"q = {F.q} is not a square")
    return s


def kestenband_arc(F: GF, H=None) -> Arc:
    """Intersection of the Hermitian curves of ``I`` and ``H`` in PG(2, q)."""
    s = _sqrt_q(F)
    if F.q <= 4:
        raise ArcError("needs q > 4")
    if H is None:
        H = kestenband_matrix(F)
    H = np.asarray(H, dtype=np.int64)
    if not np.array_equal(F.power(H, s), H.T):
        raise ArcError("H is not Hermitian (H^sqrt(q) != H^T)")
    if _char_poly_has_root(F, H):
        raise ArcError("characteristic polynomial of H is reducible")
    pts = all_points(F, 3)
    on_i = _hermitian_values(F, np.eye(3, dtype=np.int64), pts, s) == 0
    on_h = _hermitian_values(F, H, pts, s) == 0
    sel = pts[on_i & on_h]
    return Arc.from_array(F, sel, {"family": "kestenband", "H": H.tolist()})


def twelve_arc() -> Arc:
    """The 12-point arc of PG(2, 13) with t = 3."""
    F = field_create(13)
    order =[(3, 4), (-3, 4), (3, -4), (-3, -4), (4, 3), (4, -3), (-4, 3), (-4, -3),
             (1, 1), (1, -1), (-1, 1), (-1, -1)]
    pts = [(x % 13, y % 13, 1) for x, y in order]
    return Arc.from_array(F, pts, {"family": "twelve_arc"})


def conic_arc(F: GF) -> Arc:
    return nrc(F, 3)


def regular_hyperoval(F: GF) -> Arc:
    """Conic ``{(1,t,t^2)} + (0,0,1)`` together with its nucleus ``(0,1,0)``."""
    return hyperoval(F, "regular")


def special_arc(name: str, F: GF | None = None, **kw) -> Arc:
    if name == "segre3space":
        return segre_3space(F, kw.get("e", 1))
    if name == "glynn":
        return glynn_arc(F)
    if name == "kestenband":
        return kestenband_arc(F, kw.get("H"))
    if name == "twelve":
        return twelve_arc()
    raise ArcError(f"unknown special arc {name!r}")


# ---------------------------------------------------------------------------
# duality and extension
# ---------------------------------------------------------------------------

def dual_arc(A: Arc) -> Arc:
    """Columns of a generator of the dual code, an arc of PG(n-k-1, q)."""
    n, k = len(A), A.k
    if n < k + 2:
        raise ArcError(f"dual of a {n}-arc in PG({k - 1},q) is degenerate")
    D = nullspace(A.field, A.M.T)
    return Arc.from_array(A.field, D.T, {"family": "dual", "of": A.meta.get("family")})


def _blocked_mask(F: GF, V: np.ndarray, k: int, chunk: int = 4096) -> np.ndarray:
    pts = all_points(F, k)
    n = V.shape[0]
    mask = np.zeros(pts.shape[0], dtype=bool)
    if n == 0:
        return mask
    r = min(n, k - 1)
    subs = np.array(list(itertools.combinations(range(n), r)), dtype=np.int64)
    if r == k - 1:
        forms = hyperplane_forms(F, V[subs])
        for i in range(0, forms.shape[0], chunk):
            vals = F.matmul(pts, forms[i: i + chunk].T)
            mask |= (vals == 0).any(axis=1)
    else:
        for sub in subs:
            ker = nullspace(F, V[sub])
            vals = F.matmul(pts, ker.T)
            mask |= (vals == 0).all(axis=1)
    return mask


def extensions(A: Arc) -> np.ndarray:
    """Canonical points ``x`` such that ``A + {x}`` is still an arc."""
    mask = _blocked_mask(A.field, A.M, A.k)
    return all_points(A.field, A.k)[~mask]


def is_complete(A: Arc) -> bool:
    return extensions(A).shape[0] == 0


def on_conic(A: Arc) -> bool:
    """True if the planar arc lies on the conic through its first five points."""
    if A.k != 3:
        raise ArcError("planar arcs only")
    if len(A) < 5:
        raise ArcError("need at least five points")
    C = conic_through(A.field, A.M[:5])
    return bool(np.all(C.contains(A.M)))


def tangent_count_check(A: Arc) -> bool:
    """Every ``(k-2)``-subset lies on exactly ``t`` hyperplanes missing the rest of ``A``."""
    from .geometry import hyperplanes_through

    F, k = A.field, A.k
    t = A.t
    for S in itertools.combinations(range(len(A)), k - 2):
        pencil = hyperplanes_through(F, A.M[list(S)])
        rest = np.delete(A.M, list(S), axis=0)
        vals = F.matmul(pencil, rest.T)
        if int(np.sum(~(vals == 0).any(axis=1))) != t:
            return False
    return True
