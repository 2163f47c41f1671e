"""Exhaustive search for arcs up to projective equivalence.

Every arc with at least ``k+1`` points contains a frame, and projectivities
act regularly on ordered frames, so it suffices to search arcs through the
standard frame ``e_1, ..., e_k, e_1 + ... + e_k``.  Found arcs are reduced to
classes with :func:`canonical_form`.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from .arc import Arc, ArcError, hyperplane_forms, is_arc, on_conic
from .geometry import all_points, normalize_rows, point_codes, point_index
from .gf import GF
from .linalg import inverse_batch


class CensusError(ValueError):
    pass


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def _frame_maps(F: GF, V: np.ndarray, frames: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Matrices sending each ordered frame (indices into V) to the standard frame."""
    k = V.shape[1]
    B = V[frames[:, :k]]
    Binv, ok = inverse_batch(F, B)
    c = F.matmul(V[frames[:, k]][:, None, :], Binv)[:, 0, :]
    ok &= (c != 0).all(axis=1)
    cinv = F.inv(np.where(c == 0, 1, c))
    return F.mul(Binv, cinv[:, None, :]), ok


def _ordered_frames(n: int, k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n), k + 1)), dtype=np.int64)


def canonical_form(A: Arc, chunk: int = 8192) -> tuple[int, ...]:
    """Lexicographically least sorted code tuple over all images of ``A``
    that send an ordered frame of ``A`` to the standard frame."""
    F, k, n = A.field, A.k, len(A)
    if n < k + 1:
        raise CensusError("canonical form needs at least k+1 points")
    V = A.M
    frames = _ordered_frames(n, k)
    best = None
    for i in range(0, frames.shape[0], chunk):
        Ms, ok = _frame_maps(F, V, frames[i: i + chunk])
        if not ok.all():
            raise ArcError("point set contains a dependent frame; not an arc")
        imgs = F.matmul(np.broadcast_to(V, (Ms.shape[0],) + V.shape), Ms)
        codes = np.sort(point_codes(F, normalize_rows(F, imgs)), axis=1)
        row = codes[np.lexsort(codes.T[::-1])[0]]
        cand = tuple(int(x) for x in row)
        if best is None or cand < best:
            best = cand
    return best


def equivalent(A: Arc, B: Arc) -> bool:
    """True if a projectivity maps the point set of ``A`` onto that of ``B``.

    One ordered frame of ``A`` is mapped onto every ordered frame of ``B``.
    """
    if A.field is not B.field or A.k != B.k:
        raise CensusError("arcs live in different spaces")
    if len(A) != len(B):
        raise CensusError("arcs have different sizes")
    F, k, n = A.field, A.k, len(A)
    if n < k + 1:
        raise CensusError("need at least k+1 points")
    MA, okA = _frame_maps(F, A.M, np.arange(k + 1)[None])
    if not okA.all():
        raise ArcError("first k+1 points of A are not a frame")
    imgA = point_codes(F, normalize_rows(F, F.matmul(A.M, MA[0])))
    target = np.sort(imgA)
    frames = _ordered_frames(n, k)
    MB, okB = _frame_maps(F, B.M, frames)
    imgs = F.matmul(np.broadcast_to(B.M, (MB.shape[0],) + B.M.shape), MB)
    codes = np.sort(point_codes(F, normalize_rows(F, imgs)), axis=1)
    return bool(((codes == target[None]).all(axis=1) & okB).any())


def is_conic_arc(A: Arc) -> bool:
    """True if the conic through the first five points contains every point."""
    return on_conic(A)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    field: GF
    k: int
    size: int
    complete_only: bool
    representatives: list[Arc]
    stats: dict = dc_field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "k": self.k,
            "size": self.size,
            "complete_only": self.complete_only,
            "classes": self.count,
            "representatives": [A.M.tolist() for A in self.representatives],
            "stats": self.stats,
        }


class _Space:
    """Point/hyperplane incidences of PG(k-1, q) as Python integer bitmasks."""

    def __init__(self, F: GF, k: int):
        self.F, self.k = F, k
        self.pts = all_points(F, k)
        self.N = self.pts.shape[0]
        inc = F.matmul(self.pts, self.pts.T) == 0  # inc[h, x]: point x on hyperplane h
        weights = [1 << i for i in range(self.N)]
        self.hyper_mask = [sum(w for w, on in zip(weights, row) if on) for row in inc]
        self.full = (1 << self.N) - 1

    def block(self, chosen: list[int], x: int) -> int:
        """Union of hyperplanes through ``x`` and each ``(k-2)``-subset of ``chosen``."""
        k = self.k
        if len(chosen) < k - 2:
            return 0
        subs = np.array(list(itertools.combinations(chosen, k - 2)), dtype=np.int64).reshape(-1, k - 2)
        rows = np.concatenate([self.pts[subs], np.broadcast_to(self.pts[x], (subs.shape[0], 1, k))], axis=1)
        forms = hyperplane_forms(self.F, rows)
        idx = point_index(self.F, normalize_rows(self.F, forms))
        mask = 0
        for h in set(int(i) for i in idx):
            mask |= self.hyper_mask[h]
        return mask


def standard_frame(F: GF, k: int) -> np.ndarray:
    return np.vstack([np.eye(k, dtype=np.int64), np.ones((1, k), dtype=np.int64)])


def census(F: GF, k: int, size: int, complete_only: bool = False,
           max_nodes: int = 50_000_000, checkpoint: str | None = None,
           jobs: int = 1) -> CensusReport:
    """Classes of arcs of the given size (optionally complete) through the standard frame.

    ``jobs`` is accepted for interface stability; the search runs in one
    process.  ``checkpoint`` names a JSON file updated after every top-level
    branch, and read back on restart.
    """
    if size < k + 1:
        raise CensusError("size must be at least k+1")
    if size > F.q + k - 1 + (1 if (k == 3 and F.p == 2) else 0):
        return CensusReport(F, k, size, complete_only, [], {"nodes": 0, "found": 0})
    sp = _Space(F, k)
    frame = [int(i) for i in point_index(F, standard_frame(F, k))]
    blocked = 0
    chosen: list[int] = []
    for x in frame:
        blocked |= sp.block(chosen, x) | (1 << x)
        chosen.append(x)
    classes: dict[tuple[int, ...], np.ndarray] = {}
    done: set[int] = set()
    nodes = 0
    found = 0
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            state = json.load(fh)
        if (state["q"], state["k"], state["size"], state["complete_only"]) != (F.q, k, size, complete_only):
            raise CensusError("checkpoint belongs to a different search")
        done = set(state["done"])
        nodes, found = state["nodes"], state["found"]
        for pts in state["reps"]:
            A = Arc.from_array(F, pts)
            classes[canonical_form(A)] = A.M

    t0 = time.time()

    def record(pts: list[int]):
        nonlocal found
        found += 1
        A = Arc.from_array(F, sp.pts[pts])
        key = canonical_form(A)
        if key not in classes:
            classes[key] = A.M

    def dfs(chosen: list[int], blocked: int, start: int):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise CensusError(f"search exceeded {max_nodes} nodes")
        if len(chosen) == size:
            if not complete_only or blocked == sp.full:
                record(chosen)
            return
        need = size - len(chosen)
        free = [x for x in range(start, sp.N) if not (blocked >> x) & 1]
        if len(free) < need:
            return
        for i, x in enumerate(free):
            if len(free) - i < need:
                break
            dfs(chosen + [x], blocked | sp.block(chosen, x) | (1 << x), x + 1)

    first_free = [x for x in range(sp.N) if not (blocked >> x) & 1]
    if len(chosen) == size:
        if not complete_only or blocked == sp.full:
            record(chosen)
    else:
        for x in first_free:
            if x in done:
                continue
            dfs(chosen + [x], blocked | sp.block(chosen, x) | (1 << x), x + 1)
            done.add(x)
            if checkpoint:
                _save(checkpoint, F, k, size, complete_only, done, nodes, found, classes)
    reps = [Arc.from_array(F, classes[key], {"family": "census"}) for key in sorted(classes)]
    stats = {"nodes": nodes, "found": found, "seconds": round(time.time() - t0, 3), "jobs": 1}
    return CensusReport(F, k, size, complete_only, reps, stats)


def _save(path, F, k, size, complete_only, done, nodes, found, classes):
    state = {
        "q": F.q, "k": k, "size": size, "complete_only": complete_only,
        "done": sorted(done), "nodes": nodes, "found": found,
        "reps": [classes[key].tolist() for key in sorted(classes)],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh)
    os.replace(tmp, path)
