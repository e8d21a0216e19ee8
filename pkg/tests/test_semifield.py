import math

import pytest
from hypothesis import given, settings, strategies as st

from ysyslab.errors import IndexMismatchError, InvariantViolation, NumericRangeError
from ysyslab.poly import Poly, poly_gcd
from ysyslab.semifield import (
    MIXED, NEGATIVE, POSITIVE, ZERO, PosRational, PosRealAssignment, RationalBackend, RealBackend,
    TropicalBackend, TropMonomial, evaluate, make_backend, monomial_sign, rat_equal, trop_add,
)

N = 2

exps = st.tuples(*[st.integers(-4, 4)] * N)
tmonos = exps.map(TropMonomial)
pos_polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * N), st.integers(1, 5), min_size=1, max_size=4
).map(lambda d: Poly(N, d))
rationals = st.tuples(pos_polys, pos_polys).map(lambda nd: PosRational(*nd))
reals = st.floats(0.05, 20.0)
points = st.tuples(*[st.floats(0.1, 3.0)] * N).map(PosRealAssignment)


# -- polynomials ------------------------------------------------------------------


def test_poly_basics():
    y1, y2 = Poly.variable(2, 0), Poly.variable(2, 1)
    p = (1 + y1) * (1 + y2)
    assert p == 1 + y1 + y2 + y1 * y2
    assert p.constant_term == 1 and p.is_nonnegative()
    assert (p ** 2).exact_div(p) == p
    assert poly_gcd(p * (1 + y1), p * (2 + y2)) == p
    with pytest.raises(InvariantViolation):
        (1 + y1).exact_div(1 + y2)
    with pytest.raises(IndexMismatchError):
        Poly.variable(2, 0) + Poly.variable(3, 0)


def test_poly_big_products_agree():
    y = [Poly.variable(3, k) for k in range(3)]
    a = (1 + y[0] + y[1] * y[2]) ** 6
    b = (2 + y[1] + y[0] ** 2) ** 5
    expected = a.to_sympy() * b.to_sympy()
    assert (a * b).to_sympy() == expected
    assert (a * b).exact_div(b) == a


def test_poly_evaluate_overflow():
    with pytest.raises(NumericRangeError):
        Poly.monomial((400,)).evaluate([1e10])


@given(pos_polys, pos_polys)
def test_poly_exact_division_roundtrip(a, b):
    assert (a * b).exact_div(b) == a


# -- tropical ---------------------------------------------------------------------


def test_trop_add_examples():
    assert trop_add(TropMonomial((1, 0)), TropMonomial((0, 0))) == TropMonomial((0, 0))
    assert trop_add(TropMonomial((2, -1)), TropMonomial((-1, 3))) == TropMonomial((-1, -1))
    with pytest.raises(IndexMismatchError):
        trop_add(TropMonomial((1,)), TropMonomial((1, 0)))


def test_monomial_sign():
    assert monomial_sign(TropMonomial((1, 1))) == POSITIVE
    assert monomial_sign(TropMonomial((0, 0))) == ZERO
    assert monomial_sign(TropMonomial((-1, -1))) == NEGATIVE
    assert monomial_sign(TropMonomial((1, -1))) == MIXED


@given(tmonos, tmonos, tmonos)
def test_tropical_laws(a, b, c):
    assert a | b == b | a
    assert (a | b) | c == a | (b | c)
    assert a * (b | c) == (a * b) | (a * c)
    assert a | a == a
    assert a * a.inverse() == TropMonomial.one(N)


# -- subtraction-free rational functions ----------------------------------------------


def test_rat_equal_examples():
    y = Poly.variable(1, 0)
    one = Poly.constant(1)
    assert rat_equal(PosRational(y), PosRational(y * (1 + y), 1 + y))
    assert not rat_equal(PosRational(1 + y), PosRational(one))
    assert rat_equal(PosRational((1 + y) ** 2, 1 + y), PosRational(1 + y))


def test_posrational_rejects_signed_input():
    y = Poly.variable(1, 0)
    with pytest.raises(ValueError):
        PosRational(y - 1)
    with pytest.raises(ZeroDivisionError):
        PosRational(y, Poly(1, {}))


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_rational_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * a.inverse() == PosRational.one(N)
    assert a.mul_reduced(b) == a * b


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, points)
def test_evaluate_is_a_homomorphism(a, b, pt):
    assert math.isclose(evaluate(a * b, pt), evaluate(a, pt) * evaluate(b, pt), rel_tol=1e-12)
    assert math.isclose(evaluate(a + b, pt), evaluate(a, pt) + evaluate(b, pt), rel_tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(rationals)
def test_tropical_projection_is_a_homomorphism(a):
    # [a * b]_T = [a]_T [b]_T and [a + b]_T = [a]_T ⊕ [b]_T
    b = PosRational(Poly.variable(N, 0) + 1, Poly.variable(N, 1) + Poly.variable(N, 0))
    assert (a * b).tropical() == a.tropical() * b.tropical()
    assert (a + b).tropical() == a.tropical() | b.tropical()


@given(reals, reals, reals)
def test_real_laws(a, b, c):
    be = RealBackend(1)
    assert math.isclose(be.mul(a, be.add(b, c)), be.add(be.mul(a, b), be.mul(a, c)), rel_tol=1e-12)
    assert math.isclose(be.add(be.add(a, b), c), be.add(a, be.add(b, c)), rel_tol=1e-12)


# -- evaluation and assignments -----------------------------------------------------


def test_evaluate_examples():
    pt = PosRealAssignment((2.0, 3.0))
    assert evaluate(TropMonomial((1, 1)), pt) == 6.0
    assert evaluate(PosRational(1 + Poly.variable(2, 0)), pt) == 3.0
    assert evaluate(TropMonomial((-1, 0)), pt) == 0.5
    with pytest.raises(IndexMismatchError):
        evaluate(TropMonomial((1,)), pt)


def test_assignment_validation():
    with pytest.raises(NumericRangeError):
        PosRealAssignment((1.0, 0.0))
    with pytest.raises(NumericRangeError):
        PosRealAssignment((float("inf"),))
    a = PosRealAssignment.from_json_map({"y_(1,1)": 2, "y_(1,2)": 3}, ["y_(1,1)", "y_(1,2)"])
    assert a.values == (2.0, 3.0)
    with pytest.raises(IndexMismatchError):
        PosRealAssignment.from_json_map({"y_(1,1)": 2}, ["y_(1,1)", "y_(1,2)"])


def test_real_backend_guards():
    be = RealBackend(1)
    with pytest.raises(NumericRangeError):
        be.power(1e300, 5)


def test_make_backend():
    assert isinstance(make_backend("tropical", 2), TropicalBackend)
    assert isinstance(make_backend("rational", 2), RationalBackend)
    assert isinstance(make_backend("numeric", 2), RealBackend)
    with pytest.raises(ValueError):
        make_backend("complex", 2)
