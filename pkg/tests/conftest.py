from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from golodlab.koszul import KoszulElement, QuotientRing
from golodlab.poly import Polynomial, RingSpec, monomials_of_degree

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

coefficients = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
weight_vectors = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


@st.composite
def rings(draw, max_n: int = 3):
    n = draw(st.integers(1, max_n))
    weights = tuple(draw(st.integers(1, 3)) for _ in range(n))
    return RingSpec(weights)


@st.composite
def homogeneous(draw, ring: RingSpec, degree: int | None = None, max_terms: int = 4):
    """A homogeneous polynomial of the given (or a random) weighted degree; may be zero."""
    if degree is None:
        degree = draw(st.integers(0, 5))
    monos = monomials_of_degree(degree, ring.weights)
    if not monos:
        return ring.zero()
    chosen = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    terms = {m: draw(coefficients) for m in chosen}
    return Polynomial(ring, terms)


@st.composite
def polynomials(draw, ring: RingSpec, max_degree: int = 4, max_terms: int = 5):
    parts = [draw(homogeneous(ring, d, max_terms=2)) for d in range(max_degree + 1)]
    out = ring.zero()
    for p in parts[: max_terms]:
        out = out + p
    return out


@st.composite
def koszul_elements(draw, R: QuotientRing, l: int, internal_degree: int):
    """A homogeneous element of K_l(R) in the given internal degree."""
    ring = R.ring
    comps = {}
    for A in combinations(range(ring.n), l):
        d = internal_degree - sum(ring.weights[i] for i in A)
        if d >= 0 and draw(st.booleans()):
            comps[A] = draw(homogeneous(ring, d, max_terms=3))
    return KoszulElement.build(l, comps, R)


def xy():
    R = RingSpec.standard(2)
    return R, R.var(0), R.var(1)


def xyz():
    R = RingSpec.standard(3)
    return (R,) + tuple(R.gens())


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS

