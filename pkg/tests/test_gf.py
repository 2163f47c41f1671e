import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arclab.gf import (
    FieldElem,
    FieldError,
    embedding,
    field_create,
    field_from_json,
    field_of_order,
    fractional_power,
    is_irreducible,
    least_irreducible,
)
from oracles import NaiveField

ORDERS = [(2, 1), (3, 1), (5, 1), (13, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def _has_factor(mod, p):
    # brute force: any monic factor of degree 1..h//2
    h = len(mod) - 1
    for d in range(1, h // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            r = list(mod)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j, dv in enumerate(div):
                        r[i - d + j] = (r[i - d + j] - c * dv) % p
            if not any(r[:d]):
                return True
    return False


@pytest.mark.parametrize("p,h", ORDERS)
def test_tables_match_schoolbook_arithmetic(p, h):
    F = field_create(p, h)
    N = NaiveField(p, list(F.modulus))
    for a in range(F.q):
        for b in range(F.q):
            assert F.add(a, b) == N.add(a, b)
            assert F.mul(a, b) == N.mul(a, b)
        assert F.neg(a) == N.neg(a)


@pytest.mark.parametrize("p,h", ORDERS)
def test_default_modulus_is_least_irreducible(p, h):
    F = field_create(p, h)
    assert not _has_factor(list(F.modulus), p)
    # every smaller monic candidate (in the integer encoding) is reducible
    code = sum(c * p**i for i, c in enumerate(F.modulus[:-1]))
    for smaller in range(code):
        cand = [(smaller // p**i) % p for i in range(h)] + [1]
        assert _has_factor(cand, p)


def test_default_moduli_values():
    assert field_create(3, 2).modulus == (1, 0, 1)
    assert field_create(2, 3).modulus == (1, 1, 0, 1)
    assert field_create(2).modulus == (0, 1)
    assert field_create(2, 2).modulus == (1, 1, 1)


def test_json_round_trip():
    F = field_create(3, 2)
    assert F.to_json() == {"p": 3, "h": 2, "modulus": [1, 0, 1]}
    assert field_from_json(F.to_json()) is F


def test_invalid_parameters():
    with pytest.raises(FieldError):
        field_create(4)
    with pytest.raises(FieldError):
        field_create(2, 2, modulus=[1, 0, 1])  # x^2+1 = (x+1)^2 over GF(2)
    with pytest.raises(FieldError):
        field_of_order(12)
    with pytest.raises(FieldError):
        field_create(2, 0)


def test_generator_is_primitive():
    for p, h in ORDERS:
        F = field_create(p, h)
        assert F.order(F.generator) == F.q - 1


def test_inverse_of_zero_raises():
    F = field_create(7)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        FieldElem(F, 0).inverse()


def test_fractional_power_payne_at_8():
    F = field_create(2, 3)
    t = F.elements()
    # 1/6 is 6 mod 7, 3/6 is 4, 5/6 is 2
    got = F.add(F.add(fractional_power(F, t, 1, 6), fractional_power(F, t, 3, 6)), fractional_power(F, t, 5, 6))
    want = F.add(F.add(F.power(t, 6), F.power(t, 4)), F.power(t, 2))
    assert np.array_equal(got, want)


def test_fractional_power_square_root_char_two():
    F = field_create(2, 4)
    t = F.elements()
    r = fractional_power(F, t, 1, 2)
    assert np.array_equal(F.mul(r, r), t)


def test_fractional_power_undefined():
    with pytest.raises(FieldError):
        fractional_power(field_create(7), 3, 1, 2)


def test_elements_with_eta_fourth_minus_one():
    F = field_create(3, 2)
    roots = [int(x) for x in F.elements() if F.power(int(x), 4) == F.neg(1)]
    assert roots == [4, 5, 7, 8]


def test_trace_values():
    F = field_create(2, 3)
    tr = [F.trace2(a) for a in range(8)]
    assert sorted(tr) == [0] * 4 + [1] * 4
    assert F.trace2(1) == 1  # h odd
    with pytest.raises(FieldError):
        field_create(3).trace2(1)


def test_embedding_is_a_homomorphism():
    small, big = field_create(2, 2), field_create(2, 4)
    e = embedding(small, big)
    for a in range(4):
        for b in range(4):
            assert e[small.mul(a, b)] == big.mul(e[a], e[b])
            assert e[small.add(a, b)] == big.add(e[a], e[b])


def test_field_elem_operators():
    F = field_create(3, 2)
    a, b = F(4), F(7)
    assert (a * b).value == F.mul(4, 7)
    assert (a + b - b) == a
    assert (a / b) * b == a
    assert a ** 8 == F(1)
    assert (-a + a).value == 0
    with pytest.raises(FieldError):
        _ = a + field_create(5)(1)


def test_least_irreducible_rejects_reducible():
    assert not is_irreducible((1, 0, 1), 2)
    assert is_irreducible(least_irreducible(5, 3), 5)


elem = st.integers(min_value=0, max_value=26)


@settings(max_examples=200, deadline=None)
@given(elem, elem, elem)
def test_field_axioms_gf27(a, b, c):
    F = field_create(3, 3)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 63), st.integers(0, 5))
def test_frobenius_is_additive(a, e):
    F = field_create(2, 6)
    b = 37
    assert F.frobenius(F.add(a, b), e) == F.add(F.frobenius(a, e), F.frobenius(b, e))


def test_large_field_without_tables():
    F = field_create(2, 12)
    assert F.mul_table is None
    a = np.arange(1, 200)
    assert np.all(F.mul(a, F.inv(a)) == 1)
    N = NaiveField(2, list(F.modulus))
    for x, y in [(1234, 3999), (4095, 17), (2048, 2048)]:
        assert F.mul(x, y) == N.mul(x, y)
