"""Points, hyperplanes, conics and projectivities of PG(k-1, q).

Vectors are integer-encoded over a :class:`~arclab.gf.GF` (see that module).
A *point* is any nonzero vector; its canonical representative has first
nonzero coordinate 1.  Linear forms (hyperplanes) use the same convention on
their dual coordinates.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import GF
from .linalg import det, det_batch, inverse, nullspace, rank


class GeometryError(ValueError):
    pass


def normalize_rows(F: GF, V) -> np.ndarray:
    """Canonical representatives of the rows of ``V`` (first nonzero -> 1)."""
    V = np.asarray(V, dtype=np.int64)
    flat = V.reshape(-1, V.shape[-1])
    nz = flat != 0
    if not nz.any(axis=1).all():
        raise GeometryError("zero vector is not a projective point")
    lead = flat[np.arange(flat.shape[0]), np.argmax(nz, axis=1)]
    out = F.mul(flat, F.inv(lead)[:, None])
    return out.reshape(V.shape)


def normalize(F: GF, v) -> tuple[int, ...]:
    return tuple(int(x) for x in normalize_rows(F, np.asarray(v)[None])[0])


def same_point(F: GF, u, v) -> bool:
    return normalize(F, u) == normalize(F, v)


@functools.lru_cache(maxsize=None)
def _points(F: GF, k: int) -> np.ndarray:
    blocks = []
    for lead in range(k - 1, -1, -1):
        tail = k - lead - 1
        if tail:
            rest = np.indices((F.q,) * tail, dtype=np.int64).reshape(tail, -1).T
        else:
            rest = np.zeros((1, 0), dtype=np.int64)
        blk = np.zeros((rest.shape[0], k), dtype=np.int64)
        blk[:, lead] = 1
        blk[:, lead + 1:] = rest
        blocks.append(blk)
    pts = np.concatenate(blocks)
    pts.setflags(write=False)
    return pts


def all_points(F: GF, k: int) -> np.ndarray:
    """All points of PG(k-1, q) as canonical rows in lexicographic order."""
    return _points(F, k)


def num_points(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def point_codes(F: GF, V) -> np.ndarray:
    """Injective integer code of canonical rows (base-q digits)."""
    V = np.asarray(V, dtype=np.int64)
    k = V.shape[-1]
    w = F.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return V @ w


@functools.lru_cache(maxsize=None)
def _index_lookup(F: GF, k: int) -> dict[int, int]:
    codes = point_codes(F, _points(F, k))
    return {int(c): i for i, c in enumerate(codes)}


def point_index(F: GF, V) -> np.ndarray:
    """Index in :func:`all_points` of each row of ``V`` (any representative)."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    lookup = _index_lookup(F, V.shape[-1])
    codes = point_codes(F, normalize_rows(F, V))
    return np.array([lookup[int(c)] for c in codes], dtype=np.int64)


# ---------------------------------------------------------------------------
# determinants and hyperplanes
# ---------------------------------------------------------------------------

def det_ordered(F: GF, u, C: Sequence) -> int:
    """Determinant with ``u`` as first row and the rows of ``C`` after it.

    Works on raw vectors: the sign and scale depend on the representatives
    and on the order of ``C``.
    """
    u = np.asarray(u, dtype=np.int64)
    C = np.asarray(C, dtype=np.int64).reshape(-1, u.shape[0])
    if C.shape[0] != u.shape[0] - 1:
        raise GeometryError(f"need {u.shape[0] - 1} rows after u, got {C.shape[0]}")
    return det(F, np.vstack([u[None], C]))


def evaluate_forms(F: GF, forms, points) -> np.ndarray:
    """Matrix of values ``forms[i](points[j])``."""
    forms = np.atleast_2d(np.asarray(forms, dtype=np.int64))
    points = np.atleast_2d(np.asarray(points, dtype=np.int64))
    return F.sum(F.mul(forms[:, None, :], points[None, :, :]), axis=-1)


def span_forms(F: GF, pts) -> np.ndarray:
    """Basis of the linear forms vanishing on all of ``pts``."""
    pts = np.atleast_2d(np.asarray(pts, dtype=np.int64))
    return nullspace(F, pts)


def hyperplane_through(F: GF, pts) -> tuple[int, ...]:
    """The hyperplane spanned by ``k-1`` independent points."""
    pts = np.atleast_2d(np.asarray(pts, dtype=np.int64))
    ns = span_forms(F, pts)
    if ns.shape[0] != 1:
        raise GeometryError("points do not span a hyperplane")
    return normalize(F, ns[0])


def hyperplanes_through(F: GF, S) -> np.ndarray:
    """The pencil of ``q+1`` hyperplanes containing the ``(k-2)``-set ``S``.

    Rows are canonical dual coordinates in increasing lexicographic order.
    """
    S = np.asarray(S, dtype=np.int64)
    if S.ndim == 1:
        S = S[None]
    k = S.shape[1]
    if S.shape[0] != k - 2 and not (k == 2 and S.size == 0):
        raise GeometryError(f"need {k - 2} points, got {S.shape[0]}")
    if k == 2:
        return all_points(F, 2).copy()
    if rank(F, S) != k - 2:
        raise GeometryError("points are dependent")
    b = nullspace(F, S)
    lam = F.elements()
    pencil = np.vstack([F.add(b[0][None, :], F.mul(lam[:, None], b[1][None, :])), b[1][None, :]])
    pencil = normalize_rows(F, pencil)
    order = np.lexsort(pencil.T[::-1])
    return pencil[order]


def points_on_hyperplane(F: GF, form, k: int | None = None) -> np.ndarray:
    """Indices (into :func:`all_points`) of the points on a hyperplane."""
    form = np.asarray(form, dtype=np.int64)
    pts = all_points(F, form.shape[0])
    return np.flatnonzero(F.dot(pts, form[None, :]) == 0)


# ---------------------------------------------------------------------------
# projection
# ---------------------------------------------------------------------------

def project(F: GF, A, x, plane) -> np.ndarray:
    """Project the points ``A`` from ``x`` onto the hyperplane ``plane``.

    The image of ``a`` is ``plane(x) a - plane(a) x``, the intersection of
    the line ``xa`` with the hyperplane; ambient coordinates are returned.
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    x = np.asarray(x, dtype=np.int64)
    plane = np.asarray(plane, dtype=np.int64)
    px = int(F.dot(x, plane))
    if px == 0:
        raise GeometryError("centre of projection lies on the target hyperplane")
    xn = normalize(F, x)
    for a in A:
        if normalize(F, a) == xn:
            raise GeometryError("cannot project the centre itself")
    pa = F.dot(A, plane[None, :])
    img = F.sub(F.mul(px, A), F.mul(pa[:, None], x[None, :]))
    return img


def hyperplane_basis(F: GF, plane) -> np.ndarray:
    """A fixed basis (rows) of the hyperplane ``plane``: its RREF kernel basis."""
    return nullspace(F, np.asarray(plane, dtype=np.int64)[None])


def to_hyperplane_coords(F: GF, points, plane) -> np.ndarray:
    """Coordinates of points of ``plane`` w.r.t. :func:`hyperplane_basis`."""
    B = hyperplane_basis(F, plane)
    points = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if np.any(F.dot(points, np.asarray(plane)[None, :]) != 0):
        raise GeometryError("point not on hyperplane")
    # kernel basis rows are unit vectors on the non-pivot columns
    plane = np.asarray(plane)
    pivot = int(np.flatnonzero(plane)[0])
    cols = [c for c in range(plane.shape[0]) if c != pivot]
    coords = points[:, cols]
    check = F.matmul(coords, B)
    if not np.array_equal(check, points):
        raise GeometryError("coordinate extraction failed")  # pragma: no cover
    return coords


# ---------------------------------------------------------------------------
# conics
# ---------------------------------------------------------------------------

CONIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


@dataclass(frozen=True)
class Conic:
    """Ternary quadratic form, coefficients on :data:`CONIC_MONOMIALS`."""

    field: GF
    coeffs: tuple[int, ...]

    def evaluate(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=np.int64))
        return F_quadric(self.field, self.coeffs, pts)

    def contains(self, pts) -> np.ndarray:
        return self.evaluate(pts) == 0

    def polarization(self) -> np.ndarray:
        """Symmetric matrix ``B`` with ``B(x, y) = Q(x+y) - Q(x) - Q(y)``."""
        F = self.field
        a, b, c, d, e, f = self.coeffs
        two = lambda v: F.add(v, v)
        return np.array([[two(a), b, c], [b, two(d), e], [c, e, two(f)]], dtype=np.int64)


def F_quadric(F: GF, coeffs, pts) -> np.ndarray:
    mons = np.array(CONIC_MONOMIALS)
    vals = np.ones((pts.shape[0], len(CONIC_MONOMIALS)), dtype=np.int64)
    for j, mon in enumerate(mons):
        for i, e in enumerate(mon):
            if e:
                vals[:, j] = F.mul(vals[:, j], F.power(pts[:, i], int(e)))
    return F.dot(vals, np.asarray(coeffs, dtype=np.int64)[None, :])


def conic_through(F: GF, five) -> Conic:
    """The unique conic through five points of a planar arc."""
    five = np.asarray(five, dtype=np.int64)
    if five.shape != (5, 3):
        raise GeometryError("need five points of PG(2, q)")
    M = np.zeros((5, 6), dtype=np.int64)
    for j, mon in enumerate(CONIC_MONOMIALS):
        col = np.ones(5, dtype=np.int64)
        for i, e in enumerate(mon):
            if e:
                col = F.mul(col, F.power(five[:, i], e))
        M[:, j] = col
    ns = nullspace(F, M)
    if ns.shape[0] != 1:
        raise GeometryError("three of the five points are collinear")
    return Conic(F, normalize(F, ns[0]))


# ---------------------------------------------------------------------------
# the Veronese map of PG(1, q) and lifted projectivities
# ---------------------------------------------------------------------------

def nu(F: GF, k: int, x) -> np.ndarray:
    """``(x1^(k-1), x1^(k-2) x2, ..., x2^(k-1))`` for rows ``x = (x1, x2)``."""
    x = np.atleast_2d(np.asarray(x, dtype=np.int64))
    out = np.empty((x.shape[0], k), dtype=np.int64)
    for i in range(k):
        out[:, i] = F.mul(F.power(x[:, 0], k - 1 - i), F.power(x[:, 1], i))
    return out


def _binary_form_mul(F: GF, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = int(F.add(out[i + j], F.mul(ai, bj)))
    return out


def lift_projectivity(F: GF, alpha, k: int) -> np.ndarray:
    """The ``k x k`` matrix ``L`` with ``nu(x @ alpha) = nu(x) @ L``.

    Points of PG(1, q) are row vectors acted on from the right; the lift is
    then a homomorphism, ``lift(a @ b) = lift(a) @ lift(b)``.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    if alpha.shape != (2, 2) or det(F, alpha) == 0:
        raise GeometryError("alpha must be an invertible 2x2 matrix")
    (a, b), (c, d) = alpha.tolist()
    # y1 = a x1 + c x2, y2 = b x1 + d x2 as coefficient lists in the x2-degree
    y1, y2 = [a, c], [b, d]
    L = np.zeros((k, k), dtype=np.int64)
    for j in range(k):
        poly = [1]
        for _ in range(k - 1 - j):
            poly = _binary_form_mul(F, poly, y1)
        for _ in range(j):
            poly = _binary_form_mul(F, poly, y2)
        for i, coef in enumerate(poly):
            L[i, j] = coef
    return L


def apply_projectivity(F: GF, M, pts) -> np.ndarray:
    """Images ``pts @ M`` of row vectors."""
    return F.matmul(np.atleast_2d(pts), M)


def frame_projectivity(F: GF, frame) -> np.ndarray:
    """Matrix ``M`` with ``frame[i] @ M ~ e_i`` and ``frame[k] @ M ~ (1,...,1)``."""
    frame = np.asarray(frame, dtype=np.int64)
    k = frame.shape[1]
    B = frame[:k]
    Binv = inverse(F, B)
    lam = F.matmul(frame[k][None, :], Binv)[0]
    if np.any(lam == 0):
        raise GeometryError("points are not a frame")
    P = F.mul(B, lam[:, None])
    return inverse(F, P)
