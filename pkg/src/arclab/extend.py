"""Linear obstructions to extending a point set to a larger arc.

For a set ``G`` of arc points and ``n >= 0`` the matrix ``P_n`` has a row for
every pair ``(S, U)`` (``S`` a ``(k-2)``-subset of ``G``, ``U`` an ``n``-subset
of ``G - S``) and a column for every ``(k-1)``-subset ``C`` of ``G``.  The
entry is ``prod_{u in U} det(u, C)`` when ``S < C`` and 0 otherwise.  If ``G``
lies in an arc of size ``q + 2k - 1 - |G| + n`` then ``P_n`` has a kernel
vector with no zero coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .arc import Arc
from .gf import GF
from .linalg import det, det_batch, nullspace as _nullspace
from .tangent import TangentSystem

__all__ = ["PnMatrix", "build_pn", "nullspace", "extendability_verdict", "alpha_vector", "Verdict"]

ENUM_GUARD = 2**20


class ExtendError(ValueError):
    pass


@dataclass
class PnMatrix:
    matrix: np.ndarray
    rows: list[tuple[tuple[int, ...], tuple[int, ...]]]
    cols: list[tuple[int, ...]]
    n: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def _column_dets(G: Arc) -> tuple[list[tuple[int, ...]], np.ndarray]:
    F, k, N = G.field, G.k, len(G)
    cols = list(itertools.combinations(range(N), k - 1))
    Cs = G.M[np.array(cols, dtype=np.int64)]
    mats = np.concatenate(
        [np.broadcast_to(G.M[None, :, None, :], (len(cols), N, 1, k)),
         np.broadcast_to(Cs[:, None], (len(cols), N, k - 1, k))], axis=2)
    return cols, det_batch(F, mats)  # dets[c, u] = det(u, C_c)


def build_pn(G: Arc, n: int) -> PnMatrix:
    """Materialise ``P_n``; rows and columns in lexicographic order of index tuples."""
    F, k, N = G.field, G.k, len(G)
    if n < 0:
        raise ExtendError("n must be >= 0")
    if N < k + n:
        raise ExtendError(f"need |G| >= k+n = {k + n}")
    cols, dets = _column_dets(G)
    col_index = {C: i for i, C in enumerate(cols)}
    rows = []
    data = []
    for S in itertools.combinations(range(N), k - 2):
        rest = [i for i in range(N) if i not in S]
        # columns containing S
        cidx = [col_index[tuple(sorted(S + (c,)))] for c in rest]
        for U in itertools.combinations(rest, n):
            row = np.zeros(len(cols), dtype=np.int64)
            vals = F.prod(dets[np.ix_(cidx, list(U))], axis=1) if U else np.ones(len(cidx), dtype=np.int64)
            row[cidx] = vals
            rows.append((S, U))
            data.append(row)
    M = np.array(data, dtype=np.int64).reshape(len(rows), len(cols))
    return PnMatrix(M, rows, cols, n)


def nullspace(F: GF, M) -> tuple[np.ndarray, int]:
    """Kernel basis of ``M`` (rows) and the rank of ``M``."""
    M = np.asarray(M, dtype=np.int64)
    basis = _nullspace(F, M)
    return basis, M.shape[1] - basis.shape[0]


def alpha_vector(sys: TangentSystem, G_idx, P: PnMatrix) -> np.ndarray:
    """``g(C) prod_{u in G - C} det(u, C)^-1`` for the columns of ``P``.

    ``G_idx`` lists the arc indices (in ``sys.arc``) making up ``G``, in the
    same order used to build ``P``.
    """
    A = sys.arc
    F = A.field
    G_idx = list(G_idx)
    out = np.empty(len(P.cols), dtype=np.int64)
    for j, C in enumerate(P.cols):
        Cg = [G_idx[c] for c in C]
        val = sys.G(Cg)
        for u in range(len(G_idx)):
            if u in C:
                continue
            d = det(F, np.vstack([A.M[G_idx[u]][None], A.M[sorted(Cg)]]))
            val = F.mul(val, F.inv(d))
        out[j] = int(val)
    return out


@dataclass
class Verdict:
    outcome: str  # "obstructed", "possible" or "undecided"
    n: int
    target: int
    rank: int
    nullity: int
    witnesses: list[list[int]] = dc_field(default_factory=list)
    witness_count: int = 0

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome, "n": self.n, "target": self.target,
            "rank": self.rank, "nullity": self.nullity,
            "witness_count": self.witness_count, "witnesses": self.witnesses,
        }


def _projective_coeffs(F: GF, d: int, chunk: int):
    """Canonical coefficient vectors of PG(d-1, q), in chunks."""
    q = F.q
    for lead in range(d):
        tail = d - lead - 1
        total = q**tail
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((idx.size, d), dtype=np.int64)
            block[:, lead] = 1
            for j in range(tail):
                block[:, d - 1 - j] = idx % q
                idx = idx // q
            yield block


def extendability_verdict(G: Arc, target: int, max_witnesses: int = 16, chunk: int = 4096) -> Verdict:
    """Decide whether ``P_n`` has a kernel vector with all coordinates nonzero."""
    F, k = G.field, G.k
    n = target - F.q - 2 * k + 1 + len(G)
    if n < 0:
        raise ExtendError(f"target {target} gives n = {n} < 0")
    t = F.q + k - 1 - target
    if t < 0:
        raise ExtendError(f"target {target} exceeds q+k-1")
    P = build_pn(G, n)
    basis, rk = nullspace(F, P.matrix)
    d = basis.shape[0]
    v = Verdict("obstructed", n, target, rk, d)
    if d == 0:
        return v
    if (F.q**d - 1) // (F.q - 1) > ENUM_GUARD:
        v.outcome = "undecided"
        return v
    for coeffs in _projective_coeffs(F, d, chunk):
        vecs = F.matmul(coeffs, basis)
        good = (vecs != 0).all(axis=1)
        cnt = int(good.sum())
        if cnt:
            v.witness_count += cnt
            room = max_witnesses - len(v.witnesses)
            if room > 0:
                v.witnesses.extend(vecs[good][:room].tolist())
    v.outcome = "possible" if v.witness_count else "obstructed"
    return v
