import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from arclab.arc import contained_in_nrc, glynn_arc, hyperoval, is_arc, nrc
from arclab.codes import (
    CodeError,
    LinearCode,
    code_equal,
    code_from_arc,
    columns_as_arc,
    dual_code,
    min_distance,
    rs_code,
    weight_distribution,
)
from arclab.gf import field_of_order
from oracles import NaiveField, brute_min_distance, dot

F5 = field_of_order(5)


def naive(F):
    return NaiveField(F.p, list(F.modulus))


@st.composite
def full_rank_generators(draw, q=5, n=6):
    k = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    F = field_of_order(q)
    try:
        return LinearCode(F, np.array(rows))
    except CodeError:
        assume(False)


@settings(max_examples=40, deadline=None)
@given(full_rank_generators())
def test_min_distance_matches_brute_force(C):
    d = min_distance(C)
    assert d == brute_min_distance(naive(C.field), C.gen.tolist())
    assert d <= C.n - C.k + 1


@settings(max_examples=30, deadline=None)
@given(full_rank_generators())
def test_dual_is_orthogonal_and_involutive(C):
    D = dual_code(C)
    assert D.k == C.n - C.k
    assert np.all(C.field.matmul(C.gen, D.gen.T) == 0)
    assert code_equal(dual_code(D), C)


@pytest.mark.parametrize("q,k", [(5, 2), (7, 3), (8, 3), (9, 4)])
def test_rs_dual_is_rs(q, k):
    F = field_of_order(q)
    C = rs_code(F, k)
    assert code_equal(dual_code(C), rs_code(F, q + 1 - k))
    assert min_distance(C) == q - k + 2


def test_rs_dual_columns_lie_on_nrc():
    F = field_of_order(7)
    D = columns_as_arc(dual_code(rs_code(F, 3)))
    assert D.k == 5 and is_arc(F, D.M)
    assert contained_in_nrc(F, D.M)


def test_dual_of_short_rs_is_mds():
    C = code_from_arc(nrc(F5, 2))
    D = dual_code(C)
    assert (D.n, D.k) == (6, 4)
    assert min_distance(D) == 3


@pytest.mark.parametrize("make,d", [(lambda: glynn_arc(), 6), (lambda: hyperoval(field_of_order(4), "regular"), 4)])
def test_arc_codes_are_mds(make, d):
    C = code_from_arc(make())
    assert min_distance(C) == d == C.n - C.k + 1
    assert C.is_mds()


def test_nonzero_codeword_zeros_bounded():
    # a nonzero codeword of an arc code vanishes on at most k-1 coordinates
    A = nrc(field_of_order(7), 4)
    C = code_from_arc(A)
    rng = np.random.default_rng(0)
    msgs = rng.integers(0, 7, size=(200, 4))
    msgs = msgs[msgs.any(axis=1)]
    words = A.field.matmul(msgs, C.gen)
    assert int((words == 0).sum(axis=1).max()) <= A.k - 1


def test_weight_distribution_of_mds_code():
    C = rs_code(F5, 2)
    w = weight_distribution(C)
    assert w.sum() == 25
    assert w[0] == 1 and w[1:5].sum() == 0
    N = naive(F5)
    # count codewords of full weight directly
    full = 0
    for a in range(5):
        for b in range(5):
            word = [dot(N, (a, b), col) for col in C.gen.T.tolist()]
            full += all(word)
    assert w[6] == full


def test_rank_deficient_generator_rejected():
    with pytest.raises(CodeError):
        LinearCode(F5, [[1, 2, 3], [2, 4, 1]])


def test_equality_is_by_row_space():
    C = rs_code(F5, 3)
    G = C.gen.copy()
    G[0] = F5.add(G[0], G[1])
    assert LinearCode(F5, G) == C
