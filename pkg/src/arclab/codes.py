"""Linear codes from arcs: generator matrices, minimum distance, duals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arc import Arc, nrc
from .gf import GF
from .linalg import nullspace, rank, row_space

MESSAGE_GUARD = 2**24


class CodeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: GF
    gen: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.gen, dtype=np.int64))
        if rank(self.field, g) != g.shape[0]:
            raise CodeError("generator matrix must have full row rank")
        g.setflags(write=False)
        object.__setattr__(self, "gen", g)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    def is_mds(self) -> bool:
        return min_distance(self) == self.n - self.k + 1

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "k": self.k, "gen": self.gen.tolist()}

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return code_equal(self, other)

    __hash__ = None


def code_from_arc(A: Arc) -> LinearCode:
    """Code generated by the matrix whose columns are the arc's vectors."""
    if len(A) < A.k:
        raise CodeError("need at least k points")
    return LinearCode(A.field, A.M.T.copy())


def code_equal(C: LinearCode, D: LinearCode) -> bool:
    if C.field is not D.field or C.n != D.n or C.k != D.k:
        return False
    return bool(np.array_equal(row_space(C.field, C.gen), row_space(D.field, D.gen)))


def dual_code(C: LinearCode) -> LinearCode:
    """Annihilator of ``C`` under the standard inner product."""
    return LinearCode(C.field, nullspace(C.field, C.gen))


def _messages(F: GF, k: int, chunk: int):
    # projective messages: first nonzero coordinate equal to 1
    q = F.q
    for lead in range(k):
        tail = k - lead - 1
        total = q**tail
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((idx.size, k), dtype=np.int64)
            block[:, lead] = 1
            for j in range(tail):
                block[:, k - 1 - j] = idx % q
                idx = idx // q
            yield block


def min_distance(C: LinearCode, chunk: int = 1 << 14) -> int:
    """Exact minimum weight by enumerating every codeword up to scalars."""
    F = C.field
    if F.q ** C.k > MESSAGE_GUARD:
        raise CodeError(f"q^k = {F.q ** C.k} exceeds the enumeration guard {MESSAGE_GUARD}")
    best = C.n
    for msgs in _messages(F, C.k, chunk):
        words = F.matmul(msgs, C.gen)
        best = min(best, int((words != 0).sum(axis=1).min()))
    return best


def weight_distribution(C: LinearCode, chunk: int = 1 << 14) -> np.ndarray:
    """Number of codewords of each weight ``0..n``."""
    F = C.field
    if F.q ** C.k > MESSAGE_GUARD:
        raise CodeError("enumeration guard exceeded")
    counts = np.zeros(C.n + 1, dtype=np.int64)
    counts[0] = 1
    for msgs in _messages(F, C.k, chunk):
        w = (F.matmul(msgs, C.gen) != 0).sum(axis=1)
        counts += np.bincount(w, minlength=C.n + 1) * (F.q - 1)
    return counts


def rs_code(F: GF, k: int) -> LinearCode:
    """Extended Reed-Solomon code ``[q+1, k, q-k+2]`` from the normal rational curve."""
    return code_from_arc(nrc(F, k))


def columns_as_arc(C: LinearCode) -> Arc:
    return Arc.from_array(C.field, C.gen.T)
