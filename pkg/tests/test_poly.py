from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golodlab.poly import (EVERY_DEGREE, Polynomial, RingSpec, euler_apply, format_polynomial, is_homogeneous,
                           monomials_of_degree, partial_derivative, weighted_degree)

from conftest import homogeneous, polynomials, rings, xy


def test_weighted_degree():
    R = RingSpec((1, 2, 3))
    assert weighted_degree((1, 1, 1), R) == 6
    assert weighted_degree((0, 0, 0), R) == 0
    with pytest.raises(ValueError):
        weighted_degree((1, 1), R)


def test_ring_validation():
    with pytest.raises(ValueError):
        RingSpec((1, 0))
    with pytest.raises(ValueError):
        RingSpec((1, 1), ("x", "x"))
    assert RingSpec.standard(3).names == ("x", "y", "z")
    assert RingSpec.standard(4).names == ("x1", "x2", "x3", "x4")


def test_is_homogeneous_examples():
    R, x, y = xy()
    assert is_homogeneous(x**2 + x * y) == 2
    assert is_homogeneous(x + y**2) is None
    W = RingSpec((2, 1))
    assert is_homogeneous(W.var(0) + W.var(1) ** 2) == 2
    assert is_homogeneous(R.zero()) is EVERY_DEGREE


def test_partial_derivative_examples():
    R, x, y = xy()
    assert partial_derivative(x**2, 0) == 2 * x
    assert partial_derivative(Polynomial.constant(R, 5), 0).is_zero()
    assert partial_derivative(x * y**2, 1) == 2 * x * y
    with pytest.raises(IndexError):
        partial_derivative(x, 2)


def test_euler_examples():
    R, x, y = xy()
    assert euler_apply(x**2) == 2 * x**2
    assert euler_apply(x * y) == 2 * x * y
    W = RingSpec((1, 2))
    u, v = W.gens()
    f = u**4 + v**2
    assert euler_apply(f) == 4 * f
    with pytest.raises(ValueError):
        euler_apply(x + y**2)


def test_ring_operation_examples():
    R, x, y = xy()
    assert (x + y) * (x - y) == x**2 - y**2
    f = 3 * x**2 - y
    assert (f + (-f)).is_zero()
    assert (f + (-f)).items() == {}.items()
    assert (2 * x).scale(Fraction(1, 2)) == x


def test_terms_leading_first():
    R, x, y = xy()
    f = y + x**2 + x * y + 1
    assert [m for m, _ in f.terms()] == [(2, 0), (1, 1), (0, 1), (0, 0)]
    assert f.leading_term() == ((2, 0), 1)


def test_monomials_of_degree_weighted():
    assert sorted(monomials_of_degree(4, (1, 2))) == [(0, 2), (2, 1), (4, 0)]
    assert monomials_of_degree(0, (1, 1)) == [(0, 0)]
    assert monomials_of_degree(1, (2, 2)) == []


def test_format():
    R = RingSpec.standard(3)
    x, y, z = R.gens()
    f = Fraction(1, 2) * x**2 * y - 3 * z
    assert format_polynomial(f) == "1/2*x^2*y - 3*z"
    assert str(R.zero()) == "0"


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_euler_identity_random(data):
    ring = data.draw(rings())
    d = data.draw(st.integers(0, 6))
    f = data.draw(homogeneous(ring, d))
    assert euler_apply(f, ring) == f.scale(d)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_derivative_linear_and_leibniz(data):
    ring = data.draw(rings())
    f = data.draw(polynomials(ring))
    g = data.draw(polynomials(ring))
    c = data.draw(st.integers(-5, 5))
    i = data.draw(st.integers(0, ring.n - 1))
    assert partial_derivative(f + g.scale(c), i) == partial_derivative(f, i) + partial_derivative(g, i).scale(c)
    assert partial_derivative(f * g, i) == f * partial_derivative(g, i) + g * partial_derivative(f, i)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    ring = data.draw(rings())
    f, g, h = (data.draw(polynomials(ring, max_degree=3)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f * g == g * f
    assert (f - f).is_zero() and not list((f - f).items())


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3), st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_weighted_degree_additive(a, b):
    R = RingSpec((1, 2, 3))
    prod = tuple(i + j for i, j in zip(a, b))
    assert weighted_degree(prod, R) == weighted_degree(tuple(a), R) + weighted_degree(tuple(b), R)
