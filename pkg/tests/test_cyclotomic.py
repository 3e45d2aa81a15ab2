import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gnlset.cyclotomic import (
    Cyclotomic,
    IncompatibleOrderError,
    cyclotomic_polynomial,
    omega,
    parse_literal,
    root_of_unity,
    to_literal,
)

ORDERS = [1, 2, 3, 4, 6, 12]


def elements(order):
    coeff = st.fractions(
        min_value=-5, max_value=5, max_denominator=4
    )
    return st.lists(coeff, min_size=0, max_size=order).map(
        lambda cs: Cyclotomic(order, cs)
    )


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_of_unity_basic():
    w3 = root_of_unity(3, 1, 6)
    assert w3 == root_of_unity(6, 2, 6)  # zeta_6^2
    assert root_of_unity(3, 3, 6) == 1
    # independent evaluation of exp(2*pi*i/3)
    expected = cmath.exp(2j * cmath.pi / 3)
    assert abs(w3.to_complex() - expected) < 1e-12
    assert abs(w3.to_complex() - (-0.5 + 0.8660254037844386j)) < 1e-12
    assert abs(abs(w3.to_complex()) - 1.0) < 1e-12


def test_root_of_unity_incompatible_order():
    with pytest.raises(IncompatibleOrderError):
        root_of_unity(4, 1, 6)


def test_mul_of_roots():
    w3 = omega(3, 6)
    assert w3 * (w3 * w3) == 1
    assert Cyclotomic.rational(1, 6) + Cyclotomic.rational(-1, 6) == 0
    assert (Cyclotomic.rational(1, 6) - 1).is_zero()


def test_minimal_polynomial_relation():
    # the root-sum identity 1 + w3 + w3^2 = 0
    w3 = omega(3, 6)
    assert (Cyclotomic.one(6) + w3 + w3 * w3).is_zero()
    w4 = omega(4, 4)
    val = Cyclotomic.one(4) + w4 + w4 * w4
    assert not val.is_zero()
    assert abs(abs(val.to_complex()) - 1.0) < 1e-12  # |1 + i - 1| = 1
    assert Cyclotomic.zero(5).is_zero()


def test_arith_rejects_mixed_orders():
    with pytest.raises(IncompatibleOrderError):
        omega(3, 3) + omega(4, 4)
    with pytest.raises(IncompatibleOrderError):
        omega(3, 3) * omega(4, 4)


def test_order_lift():
    assert omega(3, 3).lift(6) == omega(3, 6)
    assert Cyclotomic.one(1).lift(12) == 1
    minus_one = root_of_unity(2, 1, 2)
    assert minus_one.lift(6) == root_of_unity(6, 3, 6)
    x = Cyclotomic(6, [Fraction(1, 2), Fraction(-2)])
    assert abs(x.lift(12).to_complex() - x.to_complex()) < 1e-12
    with pytest.raises(IncompatibleOrderError):
        omega(4, 4).lift(6)


def test_to_complex_zero():
    z = Cyclotomic.zero(6).to_complex()
    assert z == 0j


def test_conj_involution_and_roots():
    w = root_of_unity(12, 5, 12)
    assert w.conj().conj() == w
    assert w * w.conj() == 1
    assert abs(w.conj().to_complex() - w.to_complex().conjugate()) < 1e-12


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_conj_is_ring_homomorphism(pair):
    a, b = pair
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_to_complex_homomorphism(pair):
    a, b = pair
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) <= 1e-10
    assert abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) <= 1e-10


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_canonical_uniqueness(pair):
    a, b = pair
    diff = a - b
    assert diff.is_zero() == all(c == 0 for c in diff.coeffs)
    assert (a == b) == diff.is_zero()


def test_coeffs_have_ambient_length_and_reduced_form():
    x = root_of_unity(6, 5, 6)  # zeta_6^5 reduces below degree phi(6) = 2
    assert len(x.coeffs) == 6
    assert all(c == 0 for c in x.coeffs[2:])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(elements))
def test_literal_round_trip(x):
    assert parse_literal(to_literal(x), x.order) == x


def test_literal_forms():
    assert to_literal(Cyclotomic.zero(6)) == "0"
    assert to_literal(Cyclotomic.rational(Fraction(-3, 2), 6)) == "-3/2"
    assert parse_literal("1 + 1*w^1", 6) == Cyclotomic.from_terms(6, [(0, 1), (1, 1)])
    assert parse_literal("w^2", 4) == root_of_unity(4, 2, 4)
    with pytest.raises(ValueError):
        parse_literal("1 + w^9", 6)
    with pytest.raises(ValueError):
        parse_literal("", 6)
    with pytest.raises(ValueError):
        parse_literal("spam", 6)
