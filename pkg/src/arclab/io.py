"""JSON round-tripping for fields, arcs, codes and polynomials.

Field elements are written as coefficient lists (low degree first), so files
stay meaningful whatever the integer encoding.  Readers also accept plain
integers.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .arc import Arc
from .codes import LinearCode
from .gf import GF, field_from_json
from .poly import HomPoly


def element_to_json(F: GF, a: int) -> list[int]:
    return list(F.coeffs(int(a)))


def element_from_json(F: GF, v: Any) -> int:
    if isinstance(v, int):
        if not 0 <= v < F.q:
            raise ValueError(f"element {v} out of range for GF({F.q})")
        return v
    return F.from_coeffs([int(c) for c in v])


def vectors_to_json(F: GF, V) -> list[list[list[int]]]:
    return [[element_to_json(F, a) for a in row] for row in np.atleast_2d(V)]


def vectors_from_json(F: GF, rows) -> np.ndarray:
    return np.array([[element_from_json(F, a) for a in row] for row in rows], dtype=np.int64)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    return x


def arc_to_json(A: Arc) -> dict:
    out = {"field": A.field.to_json(), "k": A.k, "points": vectors_to_json(A.field, A.M)}
    if A.meta:
        out["meta"] = _jsonable(A.meta)
    return out


def arc_from_json(d: dict) -> Arc:
    F = field_from_json(d["field"])
    V = vectors_from_json(F, d["points"])
    k = int(d.get("k", V.shape[1]))
    if V.shape[1] != k:
        raise ValueError(f"points have {V.shape[1]} coordinates but k = {k}")
    return Arc.from_array(F, V, d.get("meta"))


def code_to_json(C: LinearCode) -> dict:
    return {"field": C.field.to_json(), "n": C.n, "k": C.k, "gen": vectors_to_json(C.field, C.gen)}


def code_from_json(d: dict) -> LinearCode:
    F = field_from_json(d["field"])
    return LinearCode(F, vectors_from_json(F, d["gen"]))


def poly_to_json(P: HomPoly) -> dict:
    return P.to_json()


def poly_from_json(F: GF, d: dict) -> HomPoly:
    return HomPoly.from_json(F, d)


def load_arc(path: str) -> Arc:
    with open(path) as fh:
        return arc_from_json(json.load(fh))


def save_arc(A: Arc, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(arc_to_json(A), fh)


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=None, separators=(",", ":"))
