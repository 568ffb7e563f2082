import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golodlab.golod import (chains, golod_certificate, jacobian_cycles, jacobian_determinant,
                            jacobian_product_rule_expand, trivial_multiplication_check)
from golodlab.groebner import ideal_power
from golodlab.koszul import KoszulElement, QuotientRing, differential, is_boundary, wedge
from golodlab.poly import RingSpec, partial_derivative
from golodlab.resolution import minimal_free_resolution

from conftest import homogeneous, rings, xy, xyz


def test_jacobian_examples():
    R, x, y = xy()
    assert jacobian_determinant([x**2], [0]) == 2 * x
    assert jacobian_determinant([y, x**2], [0, 1]) == -2 * x
    f = x**3 + x * y
    assert jacobian_determinant([f, f], [0, 1]).is_zero()
    with pytest.raises(ValueError):
        jacobian_determinant([x, y], [0])
    with pytest.raises(ValueError):
        jacobian_determinant([x, y], [1, 0])


def test_product_rule_examples():
    R, x, y = xy()
    g = x**2 + y**2
    assert jacobian_product_rule_expand([], [g], [0]) == [(jacobian_determinant([g], [0]), R.one())]
    (j1, c1), (j2, c2) = jacobian_product_rule_expand([], [g, g], [0])
    assert j1 == j2 == partial_derivative(g, 0) and c1 == c2 == g
    parts = jacobian_product_rule_expand([y], [x, y], [0, 1])
    assert parts == [(-R.one(), y), (R.zero(), x)]
    assert sum((j * c for j, c in parts), R.zero()) == jacobian_determinant([y, x * y], [0, 1]) == -y
    with pytest.raises(ValueError):
        jacobian_product_rule_expand([y], [], [0, 1])


def _element(R, comps):
    return KoszulElement.build(1, comps, R)


def test_degree_one_cycles():
    S1 = RingSpec.standard(1)
    (x,) = S1.gens()
    R = QuotientRing(S1, [x**2])
    res = minimal_free_resolution([x**2])
    (c,) = jacobian_cycles(res, R)
    assert c.element == _element(R, {(0,): 2 * x})
    S, x, y = xy()
    R = QuotientRing(S, [x * y])
    (c,) = jacobian_cycles(minimal_free_resolution([x * y]), R)
    assert c.element == _element(R, {(0,): y, (1,): x})


def test_square_of_maximal_ideal_cycles():
    S, x, y = xy()
    J = ideal_power([x, y], 2)
    R = QuotientRing(S, J)
    res = minimal_free_resolution(J)
    assert all(len(chains(res, 2, j)) == 2 for j in range(2))
    cycles = jacobian_cycles(res, R)
    assert [c.degree for c in cycles] == [1, 1, 1, 2, 2]
    assert {str(c.element) for c in cycles if c.degree == 1} == {"(2*x)*e1", "(y)*e1 + (x)*e2", "(2*y)*e2"}
    for c in cycles:
        assert not c.fallback
        assert differential(c.element, R).is_zero()
        if c.degree == 2:
            assert not is_boundary(c.element, R)[0]


@pytest.mark.parametrize("k", [2, 3])
def test_certificate_maximal_ideal(k):
    S, x, y = xy()
    cert = golod_certificate([x, y], k, ring=S)
    assert cert.verdict, cert.failures()
    assert cert.massey_trivial
    assert "fallback-representatives" not in cert.flags
    assert all(p.zero for p in cert.products)
    assert len(cert.products) == len(cert.cycles) * (len(cert.cycles) + 1) // 2


def test_certificate_example_product():
    S, x, y = xy()
    R = QuotientRing(S, ideal_power([x, y], 2))
    a = _element(R, {(0,): 2 * x})
    b = _element(R, {(0,): y, (1,): x})
    assert wedge(a, b, R).is_zero()


def test_certificate_principal_and_weighted():
    S, x, y = xy()
    f = x**2 + x * y
    cert = golod_certificate([f], 2, ring=S)
    assert cert.verdict
    (c,) = cert.cycles
    R = QuotientRing(S, [f**2])
    expected = {(i,): 2 * f * partial_derivative(f, i) for i in range(2)}
    assert c.element == KoszulElement.build(1, expected, R)
    W = RingSpec((1, 2))
    u, v = W.gens()
    assert golod_certificate([u**4 + v**2, u * v], 2, ring=W).verdict


def test_certificate_rejects_bad_input():
    S, x, y = xy()
    with pytest.raises(ValueError):
        golod_certificate([x, y], 1)
    with pytest.raises(ValueError):
        golod_certificate([S.one()], 2, ring=S)
    with pytest.raises(ValueError):
        golod_certificate([x + y**2], 2, ring=S)


def test_trivial_multiplication_examples():
    S, x, y = xy()
    assert trivial_multiplication_check(ideal_power([x, y], 2)).trivial
    check = trivial_multiplication_check([x**2, y**2])
    assert not check.trivial
    z1, z2, prod = check.witness
    R = QuotientRing(S, [x**2, y**2])
    assert {str(z1), str(z2)} == {"(x)*e1", "(y)*e2"}
    assert prod == KoszulElement.build(2, {(0, 1): x * y}, R)
    assert trivial_multiplication_check([x**3 + y**3]).trivial


@pytest.mark.parametrize("I, k", [
    (lambda x, y, z: [x * y, z**2], 2),
    (lambda x, y, z: [x + y, z], 2),
    (lambda x, y, z: [x**2 - y * z], 3),
])
def test_two_routes_agree(I, k):
    S, x, y, z = xyz()
    J = ideal_power(I(x, y, z), k)
    cert = golod_certificate(I(x, y, z), k, ring=S, N=4)
    assert cert.verdict
    assert trivial_multiplication_check(J).trivial


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_degree_one_cycle_identity(data):
    ring = data.draw(rings())
    d = data.draw(st.integers(1, 5))
    g = data.draw(homogeneous(ring, d))
    R = QuotientRing(ring, [])
    z = KoszulElement.build(1, {(i,): partial_derivative(g, i).scale(ring.weights[i]) for i in range(ring.n)}, R)
    assert differential(z, R) == KoszulElement.build(0, {(): g.scale(d)}, R)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_jacobian_product_rule_random(data):
    ring = data.draw(rings())
    l = data.draw(st.integers(1, min(3, ring.n)))
    k = data.draw(st.integers(1, 3))
    head = [data.draw(homogeneous(ring, data.draw(st.integers(1, 3)), max_terms=3)) for _ in range(l - 1)]
    factors = [data.draw(homogeneous(ring, data.draw(st.integers(1, 2)), max_terms=3)) for _ in range(k)]
    variables = sorted(data.draw(st.lists(st.integers(0, ring.n - 1), min_size=l, max_size=l, unique=True)))
    prod = ring.one()
    for f in factors:
        prod = prod * f
    parts = jacobian_product_rule_expand(head, factors, variables)
    assert len(parts) == k
    total = ring.zero()
    for jac, cof in parts:
        total = total + jac * cof
    assert total == jacobian_determinant(head + [prod], variables)
