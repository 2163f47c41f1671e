import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arclab.arc import Arc, nrc, twelve_arc
from arclab.gf import field_of_order
from arclab.tangent import (
    DetTable,
    TangentError,
    build_scaled_system,
    check_lemma_of_tangents,
    check_scaled_law,
    count_cases,
    delta_equation,
    g_value,
    inversions,
    lambda_combination,
    sum_equation,
    sweep_delta,
    sweep_lemma,
    sweep_scaled,
    sweep_sums,
    tangent_forms,
    unscaled_system,
)
from oracles import NaiveField, dot, projective_points


def arc_of(q, k, n):
    return nrc(field_of_order(q), k).subset(range(n))


def sign(F, odd):
    return int(F.neg(1)) if odd else 1


# (q, k, n) with t = q + k - 1 - n of both parities
CASES = [(7, 3, 7), (7, 3, 6), (8, 3, 8), (5, 3, 5), (7, 4, 7), (7, 4, 8)]


@pytest.mark.parametrize("q,k,n", CASES)
def test_tangent_forms_match_enumeration(q, k, n):
    A = arc_of(q, k, n)
    F = A.field
    N = NaiveField(F.p, list(F.modulus))
    pts = A.M.tolist()
    for S in itertools.combinations(range(n), k - 2):
        want = sorted(h for h in projective_points(q, k)
                      if all((dot(N, h, p) == 0) == (i in S) for i, p in enumerate(pts)))
        got = sorted(tuple(int(v) for v in r) for r in tangent_forms(A, S))
        assert got == want
        assert len(got) == A.t


@pytest.mark.parametrize("q,k,n", CASES)
def test_G_is_independent_of_removed_point(q, k, n):
    A = arc_of(q, k, n)
    sysm = build_scaled_system(A)
    F, t = A.field, A.t
    for C in itertools.combinations(range(n), k - 1):
        vals = set()
        for c in C:
            after = sum(1 for x in C if x > c)
            rest = tuple(x for x in C if x != c)
            vals.add(int(F.mul(sign(F, after * (t + 1) % 2), sysm.f(rest, c))))
        assert len(vals) == 1
        assert vals.pop() == sysm.G(C) != 0


@pytest.mark.parametrize("q,k,n", CASES)
def test_g_permutation_law(q, k, n):
    A = arc_of(q, k, n)
    sysm = build_scaled_system(A)
    F, t = A.field, A.t
    for C in itertools.combinations(range(n), k - 1):
        for perm in itertools.permutations(C):
            expected = F.mul(sign(F, inversions(perm) * (t + 1) % 2), sysm.G(C))
            assert g_value(sysm, perm) == expected
        if len(C) >= 2:
            swapped = (C[1], C[0]) + C[2:]
            # t odd: symmetric; t even: alternating
            assert g_value(sysm, swapped) == (sysm.G(C) if t % 2 else int(F.neg(sysm.G(C))))


@pytest.mark.parametrize("q,k,n", CASES)
def test_all_sweeps_pass(q, k, n):
    sysm = build_scaled_system(arc_of(q, k, n))
    reports = [sweep_lemma(sysm), sweep_scaled(sysm), sweep_sums(sysm)]
    if k <= sysm.field.p:
        reports.append(sweep_delta(sysm))
    for r in reports:
        assert r.ok, r.to_json()
        assert r.total == count_cases(n, k, sysm.t)[r.name]


def test_twelve_arc_sums_vanish():
    sysm = build_scaled_system(twelve_arc())
    rep = sweep_sums(sysm)
    assert rep.ok and rep.total == 5544


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_rescaling_base_scales_every_G(b1, b2):
    A = arc_of(7, 4, 7)
    F = A.field
    s1, s2 = build_scaled_system(A, b1), build_scaled_system(A, b2)
    ratio = F.div(b2, b1)
    for C in itertools.combinations(range(len(A)), 3):
        assert s2.G(C) == F.mul(ratio, s1.G(C))


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(7)))
def test_reordering_keeps_sums_zero(order):
    A = arc_of(7, 3, 7).reordered(order)
    assert sweep_sums(build_scaled_system(A)).ok
    assert sweep_scaled(build_scaled_system(A)).ok


def test_lemma_holds_without_scaling():
    A = arc_of(7, 4, 8)
    assert sweep_lemma(unscaled_system(A)).ok
    assert check_lemma_of_tangents(A, [0], 1, 2, 3)


def test_unscaled_system_breaks_sum_equations():
    A = arc_of(7, 3, 6)
    assert not sweep_sums(unscaled_system(A)).ok
    assert not sweep_scaled(unscaled_system(A)).ok


def test_dropping_one_g_value_breaks_the_sum():
    A = arc_of(7, 3, 6)
    sysm = build_scaled_system(A)
    E = tuple(range(A.k + A.t))
    S = (0,)
    assert sum_equation(sysm, E, S) == 0
    assert sum_equation(sysm, E, S, g_override={(0, 1): 0}) != 0
    assert sum_equation(sysm, E, S, g_override={(0, 1): 3}) != 0


@pytest.mark.parametrize("q,k,n", [(7, 3, 6), (7, 4, 7), (5, 3, 5)])
def test_lambda_identity_for_arbitrary_g(q, k, n):
    # holds for any set function G, so the unscaled system serves as random input
    A = arc_of(q, k, n)
    for sysm in (unscaled_system(A), build_scaled_system(A)):
        dets = DetTable(A)
        E = tuple(range(k + A.t))
        for Delta in itertools.combinations(E, A.t + 2):
            lhs, rhs = lambda_combination(sysm, E, Delta, dets)
            assert lhs == rhs


def test_delta_equation_needs_small_k():
    A = nrc(field_of_order(8), 3).subset(range(8))
    sysm = build_scaled_system(A)
    with pytest.raises(TangentError):
        delta_equation(sysm, range(A.k + A.t), range(A.t + 2))


def test_non_arc_rejected():
    F = field_of_order(7)
    A = nrc(F, 3).subset(range(5))
    bad = A.with_points([F.add(A.M[0], A.M[1])])
    with pytest.raises(TangentError):
        build_scaled_system(bad)


def test_argument_validation():
    sysm = build_scaled_system(arc_of(7, 4, 7))
    with pytest.raises(TangentError):
        check_scaled_law(sysm, [0, 1], 2, 3)
    with pytest.raises(TangentError):
        g_value(sysm, (0, 0, 1))
    with pytest.raises(TangentError):
        sum_equation(sysm, range(5), (0, 1))
    with pytest.raises(TangentError):
        build_scaled_system(arc_of(7, 3, 6), base=0)


def test_f_at_matches_values_on_arc():
    A = arc_of(8, 3, 7)
    sysm = build_scaled_system(A)
    for S in [(0,), (3,)]:
        assert np.array_equal(sysm.f_at(S, A.M), sysm.values[S])
