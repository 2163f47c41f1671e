import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arclab.arc import hyperoval, kestenband_arc, nrc, twelve_arc
from arclab.envelope import (
    EnvelopeError,
    complete_via_envelope,
    detj_substitute,
    envelope_m,
    envelope_uniqueness_dim,
    hyperplane_to_dual,
    linear_factors,
    minors,
    point_factor,
    polarization_tensor,
    sbbt_envelope,
    twelve_arc_tensor,
    vanishing_forms,
    verify_planar_tensor,
)
from arclab.geometry import all_points, conic_through, normalize
from arclab.gf import field_of_order
from arclab.poly import HomPoly
from oracles import NaiveField, dot, leibniz_det, projective_points


def naive(F):
    return NaiveField(F.p, list(F.modulus))


def brute_tangents(A):
    """Hyperplanes meeting the arc in exactly k-2 points, by enumeration."""
    N = naive(A.field)
    pts = A.M.tolist()
    out = []
    for h in projective_points(A.q, A.k):
        if sum(dot(N, h, p) == 0 for p in pts) == A.k - 2:
            out.append(h)
    return out


def test_m_by_parity():
    assert [envelope_m(q) for q in (4, 5, 8, 9)] == [1, 2, 1, 2]


def test_detj_substitute_first_minor():
    F = field_of_order(7)
    Z1 = HomPoly.variable(F, 3, 0)
    got = detj_substitute(Z1)
    X = [HomPoly.variable(F, 6, i) for i in range(6)]
    # rows (X0 X1 X2), (X3 X4 X5); deleting column 0 leaves X1 X5 - X2 X4
    assert got == X[1] * X[5] - X[2] * X[4]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=12, max_size=12))
def test_minors_match_leibniz(entries):
    F = field_of_order(9)
    R = np.array(entries).reshape(3, 4)
    N = naive(F)
    got = minors(F, R)
    for j in range(4):
        assert got[j] == leibniz_det(N, np.delete(R, j, axis=1).tolist())


@pytest.mark.parametrize("make", [
    lambda: nrc(field_of_order(5), 3),
    lambda: nrc(field_of_order(7), 3).subset(range(7)),
    lambda: nrc(field_of_order(9), 3).subset(range(9)),
    lambda: hyperoval(field_of_order(8), "regular").subset(range(8)),
    lambda: hyperoval(field_of_order(8), "payne").subset(range(9)),
    lambda: twelve_arc(),
    lambda: nrc(field_of_order(7), 4),
])
def test_envelope_vanishes_on_every_tangent(make):
    A = make()
    env = sbbt_envelope(A)
    assert env.degree == env.m * A.t
    tangents = np.array(brute_tangents(A))
    assert len(tangents) > 0
    assert np.all(env.phi.evaluate(hyperplane_to_dual(A.field, tangents)) == 0)


def test_dual_conic_matches_adjugate():
    F = field_of_order(7)
    A = nrc(F, 3)
    env = sbbt_envelope(A)
    C = conic_through(F, A.M[:5])
    B = C.polarization()
    N = naive(F)
    adj = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(B, j, axis=0), i, axis=1).tolist()
            d = leibniz_det(N, minor)
            adj[i][j] = N.neg(d) if (i + j) % 2 else d
    hs = all_points(F, 3)
    quad = [dot(N, h, [dot(N, row, h) for row in adj]) for h in hs.tolist()]
    vals = env.phi.evaluate(hyperplane_to_dual(F, hs))
    ratios = {int(F.div(v, w)) for v, w in zip(vals, quad) if w}
    assert len(ratios) == 1 and 0 not in ratios
    assert all((v == 0) == (w == 0) for v, w in zip(vals, quad))


def test_irreducible_dual_conic_has_no_linear_factor():
    env = sbbt_envelope(nrc(field_of_order(5), 3))
    assert linear_factors(env.phi) == []
    assert envelope_uniqueness_dim(nrc(field_of_order(5), 3)) == 1


def test_missing_point_squared_divides_odd_envelope():
    F = field_of_order(9)
    full = nrc(F, 3)
    A = full.subset(range(9))
    env = sbbt_envelope(A)
    ell = point_factor(F, full.M[9])
    assert (ell * ell).divides(env.phi)
    assert complete_via_envelope(A, env).same_points(full)


def test_even_envelope_finds_missing_hyperoval_points():
    F = field_of_order(8)
    H = hyperoval(F, "payne")
    A = H.subset(range(8))
    env = sbbt_envelope(A)
    found = {c for c, _ in linear_factors(env.phi)}
    missing = {tuple(int(v) for v in hyperplane_to_dual(F, H.M[i])[0]) for i in (8, 9)}
    assert {normalize(F, c) for c in missing} <= found
    assert complete_via_envelope(A, env).same_points(H)


def test_envelope_is_order_independent():
    A = nrc(field_of_order(7), 3).subset(range(7))
    base = sbbt_envelope(A).phi
    for order in [(6, 5, 4, 3, 2, 1, 0), (3, 0, 6, 1, 5, 2, 4)]:
        assert sbbt_envelope(A.reordered(order)).phi == base


def test_hypothesis_violation_raises():
    with pytest.raises(EnvelopeError):
        sbbt_envelope(kestenband_arc(field_of_order(9)))
    with pytest.raises(EnvelopeError):
        sbbt_envelope(hyperoval(field_of_order(8), "regular"))


def test_vanishing_form_dimensions():
    F = field_of_order(7)
    conic = nrc(F, 3).M
    assert len(vanishing_forms(F, conic, 2).basis) == 1
    vf = vanishing_forms(F, conic, 3)
    assert len(vf.basis) == 3 and len(vf.socle) == 7
    for f in vf.basis:
        assert np.all(f.evaluate(conic) == 0)
    tw = twelve_arc()
    assert len(vanishing_forms(tw.field, tw.M, 3).basis) == 0


def test_conic_polarization_is_a_planar_tensor():
    F = field_of_order(7)
    A = nrc(F, 3)
    C = conic_through(F, A.M[:5])
    chk = verify_planar_tensor(A, polarization_tensor(F, C.coeffs))
    assert chk.ok and chk.proportional and chk.symmetric
    assert all(chk.factors)


def test_zero_form_is_not_a_planar_tensor():
    F = field_of_order(7)
    A = nrc(F, 3)
    assert not verify_planar_tensor(A, HomPoly.zero(F, 6, 2))


def test_twelve_arc_tensor():
    chk = verify_planar_tensor(twelve_arc(), twelve_arc_tensor())
    assert chk.ok


def test_tensor_bidegree_checked():
    F = field_of_order(7)
    with pytest.raises(EnvelopeError):
        verify_planar_tensor(nrc(F, 3), HomPoly.zero(F, 5, 2))


def test_plain_uniqueness_space_for_odd_q_has_extra_forms():
    # tangents of a q-arc on a conic lie on the dual conic and on one dual line,
    # so every quartic Q * ell * (linear) vanishes there
    from arclab.envelope import envelope_space

    F = field_of_order(9)
    full = nrc(F, 3)
    A = full.subset(range(9))
    env = sbbt_envelope(A)
    ell = point_factor(F, full.M[9])
    Q = env.phi.divide_exact(ell * ell)
    space = envelope_space(A)
    assert len(space) == 3
    assert all((Q * ell).divides(f) for f in space)
    double = envelope_space(A, multiplicity=2)
    assert len(double) == 1
    assert double[0].normalized()[0] == env.phi


def test_even_uniqueness_space_is_the_envelope():
    from arclab.envelope import envelope_space

    A = hyperoval(field_of_order(8), "regular").subset(range(8))
    space = envelope_space(A)
    assert len(space) == 1
    assert space[0].normalized()[0] == sbbt_envelope(A).phi
    with pytest.raises(EnvelopeError):
        envelope_space(A, multiplicity=2)
