import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arclab.arc import Arc, extensions, is_arc, nrc
from arclab.classify import CensusError, canonical_form, census, equivalent, is_conic_arc
from arclab.geometry import apply_projectivity
from arclab.gf import field_of_order
from arclab.linalg import rank

F7 = field_of_order(7)


def random_projectivity(F, k, seed):
    rng = np.random.default_rng(seed)
    while True:
        M = rng.integers(0, F.q, size=(k, k))
        if rank(F, M) == k:
            return M


@pytest.fixture(scope="module")
def complete_six_q7():
    return census(F7, 3, 6, complete_only=True)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.permutations(range(6)))
def test_canonical_form_is_invariant(seed, order):
    A = nrc(F7, 3).subset(range(6))
    M = random_projectivity(F7, 3, seed)
    B = Arc.from_array(F7, apply_projectivity(F7, M, A.M)).reordered(order)
    assert canonical_form(A) == canonical_form(B)
    assert equivalent(A, B) and equivalent(B, A)


def test_two_routes_agree_on_inequivalent_arcs(complete_six_q7):
    conic6 = nrc(F7, 3).subset(range(6))
    arcs = [conic6] + complete_six_q7.representatives
    for a in arcs:
        for b in arcs:
            same = canonical_form(a) == canonical_form(b)
            assert same == equivalent(a, b)
            assert same == (a is b)


def test_frames_are_all_equivalent():
    rng = np.random.default_rng(5)
    base = Arc.from_array(F7, np.vstack([np.eye(3, dtype=np.int64), np.ones((1, 3), dtype=np.int64)]))
    tried = 0
    while tried < 5:
        V = rng.integers(0, 7, size=(4, 3))
        if V.any(axis=1).all() and is_arc(F7, V):
            assert equivalent(base, Arc.from_array(F7, V))
            tried += 1


@pytest.mark.parametrize("q,k,size,classes", [(5, 3, 6, 1), (7, 3, 8, 1), (4, 3, 6, 1), (5, 4, 6, 1)])
def test_census_small_counts(q, k, size, classes):
    rep = census(field_of_order(q), k, size)
    assert rep.count == classes
    for A in rep.representatives:
        assert len(A) == size and is_arc(A.field, A.M)
    if k == 3 and q % 2:
        assert all(is_conic_arc(A) for A in rep.representatives)


def test_complete_six_arcs_q7(complete_six_q7):
    assert complete_six_q7.count == 2
    for A in complete_six_q7.representatives:
        assert is_arc(F7, A.M)
        assert extensions(A).shape[0] == 0
        assert not is_conic_arc(A)


def test_oversized_census_is_empty():
    assert census(F7, 3, 9).count == 0


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "ck.json")
    fresh = census(F7, 3, 6, complete_only=True)
    with pytest.raises(CensusError):
        census(F7, 3, 6, complete_only=True, checkpoint=path, max_nodes=40)
    with open(path) as fh:
        state = json.load(fh)
    assert state["done"]
    resumed = census(F7, 3, 6, complete_only=True, checkpoint=path)
    assert [canonical_form(A) for A in resumed.representatives] == \
        [canonical_form(A) for A in fresh.representatives]
    with pytest.raises(CensusError):
        census(F7, 3, 7, checkpoint=path)


def test_argument_checks():
    A = nrc(F7, 3)
    with pytest.raises(CensusError):
        equivalent(A, A.subset(range(5)))
    with pytest.raises(CensusError):
        census(F7, 3, 3)
