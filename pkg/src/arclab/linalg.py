"""Exact linear algebra over GF(q) on integer-encoded numpy arrays."""

from __future__ import annotations

import numpy as np

from .gf import GF


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(R[r], F.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = F.sub(R[rows], F.mul(col[rows][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{v : M v = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, M)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[r, f]))
    return basis


def row_space(F: GF, M) -> np.ndarray:
    """Canonical basis of the row space (nonzero rows of the RREF)."""
    R, piv = rref(F, M)
    return R[: len(piv)]


def solve(F: GF, A, b) -> np.ndarray | None:
    """One solution of ``A x = b`` or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(F, np.hstack([A, b]))
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return R[:, n:]


def det_batch(F: GF, mats) -> np.ndarray:
    """Determinants of a stack of square matrices with shape ``(..., m, m)``."""
    A = np.array(mats, dtype=np.int64, copy=True)
    lead = A.shape[:-2]
    m = A.shape[-1]
    A = A.reshape(-1, m, m)
    N = A.shape[0]
    det = np.ones(N, dtype=np.int64)
    idx = np.arange(N)
    for c in range(m):
        col = A[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = c + np.argmax(nz, axis=1)
        swap = has & (piv != c)
        if swap.any():
            s = idx[swap]
            rows_c = A[s, c].copy()
            A[s, c] = A[s, piv[swap]]
            A[s, piv[swap]] = rows_c
            det[s] = F.neg(det[s])
        pv = A[:, c, c]
        pv_safe = np.where(pv == 0, 1, pv)
        det = F.mul(det, pv)
        if c + 1 < m:
            factor = F.mul(A[:, c + 1:, c], F.inv(pv_safe)[:, None])
            A[:, c + 1:, :] = F.sub(A[:, c + 1:, :], F.mul(factor[:, :, None], A[:, c, None, :]))
    return det.reshape(lead)


def det(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return 1
    return int(det_batch(F, M[None])[0])


def inverse_batch(F: GF, mats) -> tuple[np.ndarray, np.ndarray]:
    """Batched Gauss-Jordan inverse.

    Returns ``(inv, ok)`` where ``ok`` flags the invertible matrices; rows of
    ``inv`` for singular inputs are meaningless.
    """
    A = np.array(mats, dtype=np.int64, copy=True)
    N, m, _ = A.shape
    aug = np.concatenate([A, np.broadcast_to(np.eye(m, dtype=np.int64), (N, m, m))], axis=2)
    ok = np.ones(N, dtype=bool)
    idx = np.arange(N)
    for c in range(m):
        nz = aug[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        swap = has & (piv != c)
        if swap.any():
            s = idx[swap]
            rows_c = aug[s, c].copy()
            aug[s, c] = aug[s, piv[swap]]
            aug[s, piv[swap]] = rows_c
        pv = aug[:, c, c]
        pv_inv = F.inv(np.where(pv == 0, 1, pv))
        aug[:, c, :] = F.mul(aug[:, c, :], pv_inv[:, None])
        factor = aug[:, :, c].copy()
        factor[:, c] = 0
        aug = F.sub(aug, F.mul(factor[:, :, None], aug[:, c, None, :]))
    return aug[:, :, m:], ok
