"""The Koszul complex K(R) of R = S/J on the variables.

K_l(R) has basis e_A for subsets A = (i_1 < ... < i_l) and the differential

    d(f e_A) = sum_t (-1)^t x_{A[t]} f e_{A minus A[t]}     (t 0-based)

so that d(e_1 ^ e_2) = x_1 e_2 - x_2 e_1.  Homology is computed one internal
degree at a time over the monomial basis of R_d given by standard monomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .groebner import GroebnerBasis, buchberger, ideal_power
from .linalg import Echelon, axpy, nullspace, solve
from .poly import Exponent, Polynomial, RingSpec, monomials_of_degree, weighted_degree
from .resolution import Resolution, betti_table

Subset = tuple[int, ...]


class QuotientRing:
    """R = S/J with normal forms relative to a reduced Gröbner basis of J."""

    def __init__(self, ring: RingSpec, J: Sequence[Polynomial]):
        self.ring = ring
        self.generators = tuple(J)
        self.gb: GroebnerBasis = buchberger([g for g in J if not g.is_zero()], ring=ring)
        if self.gb.is_unit_ideal():
            raise ValueError("J is the unit ideal; R would be zero")
        self._leads = [e for _, e in self.gb.leading_exponents()]
        self._basis: dict[int, list[Exponent]] = {}
        self._mul: dict[tuple[int, Exponent], dict] = {}

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.is_zero():
            return f
        return self.gb.normal_form(f)

    def reduce_terms(self, terms: Mapping[Exponent, Fraction]) -> dict[Exponent, Fraction]:
        rem = self.gb.reduce_vec({(0, m): c for m, c in terms.items()})
        return {m: c for (_, m), c in rem.items()}

    def is_standard(self, m: Exponent) -> bool:
        return not any(all(a >= b for a, b in zip(m, e)) for e in self._leads)

    def basis(self, d: int) -> list[Exponent]:
        """Standard monomials of weighted degree d: a K-basis of R_d."""
        if d not in self._basis:
            self._basis[d] = [m for m in monomials_of_degree(d, self.ring.weights) if self.is_standard(m)]
        return self._basis[d]

    def times_var(self, i: int, m: Exponent) -> dict[Exponent, Fraction]:
        """Normal form of x_i * x^m."""
        key = (i, m)
        out = self._mul.get(key)
        if out is None:
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            out = self.reduce_terms({mm: Fraction(1)}) if not self.is_standard(mm) else {mm: Fraction(1)}
            self._mul[key] = out
        return out


@dataclass(frozen=True)
class KoszulElement:
    """Element of K_l(R): components {A: polynomial in normal form}."""

    degree: int
    components: Mapping[Subset, Polynomial] = field(default_factory=dict)

    @classmethod
    def build(cls, l: int, comps: Mapping[Subset, Polynomial], R: QuotientRing) -> "KoszulElement":
        out = {}
        for A, f in comps.items():
            A = tuple(A)
            if len(A) != l or list(A) != sorted(set(A)):
                raise ValueError(f"{A} is not an increasing {l}-subset")
            g = R.reduce(f)
            if not g.is_zero():
                out[A] = g
        return cls(l, dict(sorted(out.items())))

    @classmethod
    def basis_element(cls, A: Subset, R: QuotientRing, coeff: Polynomial | None = None) -> "KoszulElement":
        coeff = coeff if coeff is not None else R.ring.one()
        return cls.build(len(A), {tuple(A): coeff}, R)

    def is_zero(self) -> bool:
        return not self.components

    def internal_degree(self, ring: RingSpec) -> int | None:
        degs = set()
        for A, f in self.components.items():
            wa = sum(ring.weights[i] for i in A)
            for m, _ in f.items():
                degs.add(weighted_degree(m, ring) + wa)
        return degs.pop() if len(degs) == 1 else None

    def coordinates(self) -> dict[tuple[Subset, Exponent], Fraction]:
        return {(A, m): c for A, f in self.components.items() for m, c in f.items()}

    def __eq__(self, other):
        if not isinstance(other, KoszulElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and dict(self.components) == dict(other.components)

    def __hash__(self):
        return hash((self.degree, frozenset(self.components.items())))

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for A, f in self.components.items():
            wedge = "^".join(f"e{i + 1}" for i in A) or "1"
            parts.append(f"({f})*{wedge}")
        return " + ".join(parts)


def _from_coordinates(l: int, coords: Mapping, R: QuotientRing) -> KoszulElement:
    comps: dict[Subset, dict] = {}
    for (A, m), c in coords.items():
        if c:
            comps.setdefault(A, {})[m] = Fraction(c)
    return KoszulElement(l, {A: Polynomial._raw(R.ring, t) for A, t in sorted(comps.items())})


def add(z1: KoszulElement, z2: KoszulElement, R: QuotientRing) -> KoszulElement:
    if z1.is_zero():
        return z2
    if z2.is_zero():
        return z1
    if z1.degree != z2.degree:
        raise ValueError("cannot add elements of different homological degree")
    coords = z1.coordinates()
    axpy(coords, 1, z2.coordinates())
    return _from_coordinates(z1.degree, coords, R)


def scale(z: KoszulElement, c, R: QuotientRing) -> KoszulElement:
    coords = {}
    axpy(coords, Fraction(c), z.coordinates())
    return _from_coordinates(z.degree, coords, R)


def combine(l: int, terms: Iterable[tuple[Fraction, KoszulElement]], R: QuotientRing) -> KoszulElement:
    coords: dict = {}
    for c, z in terms:
        axpy(coords, Fraction(c), z.coordinates())
    return _from_coordinates(l, coords, R)


def _differential_coords(l: int, coords: Mapping, R: QuotientRing) -> dict:
    out: dict = {}
    for (A, m), c in coords.items():
        for t, i in enumerate(A):
            rest = A[:t] + A[t + 1:]
            sign = c if t % 2 == 0 else -c
            for mm, v in R.times_var(i, m).items():
                k = (rest, mm)
                s = out.get(k, 0) + sign * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def differential(z: KoszulElement, R: QuotientRing) -> KoszulElement:
    if z.degree < 1:
        raise ValueError("the differential is defined on K_l for l >= 1")
    return _from_coordinates(z.degree - 1, _differential_coords(z.degree, z.coordinates(), R), R)


def _merge_sign(A: Subset, B: Subset) -> int:
    inversions = sum(1 for a in A for b in B if a > b)
    return -1 if inversions % 2 else 1


def wedge(z1: KoszulElement, z2: KoszulElement, R: QuotientRing) -> KoszulElement:
    l = z1.degree + z2.degree
    out: dict[Subset, Polynomial] = {}
    for A, f in z1.components.items():
        for B, g in z2.components.items():
            if set(A) & set(B):
                continue
            C = tuple(sorted(A + B))
            p = f * g
            if _merge_sign(A, B) < 0:
                p = -p
            out[C] = out[C] + p if C in out else p
    if l > R.ring.n:
        return KoszulElement(l, {})
    return KoszulElement.build(l, out, R)


def bar(z: KoszulElement, R: QuotientRing) -> KoszulElement:
    """The sign twist (-1)^(l+1) z used in the Massey product conditions."""
    return z if z.degree % 2 == 1 else scale(z, -1, R)


def basis_coordinates(l: int, d: int, R: QuotientRing) -> list[tuple[Subset, Exponent]]:
    """K-basis of K_l(R) in internal degree d as (subset, standard monomial) pairs."""
    w = R.ring.weights
    out = []
    for A in combinations(range(R.ring.n), l):
        rest = d - sum(w[i] for i in A)
        if rest < 0:
            continue
        for m in R.basis(rest):
            out.append((A, m))
    return out


def boundary_images(l: int, d: int, R: QuotientRing) -> list[dict]:
    """Images under d of the basis of K_{l+1}(R)_d."""
    if l + 1 > R.ring.n:
        return []
    return [_differential_coords(l + 1, {key: Fraction(1)}, R) for key in basis_coordinates(l + 1, d, R)]


def cycle_space(l: int, d: int, R: QuotientRing) -> list[dict]:
    """Basis of Z_l(R)_d in coordinates."""
    src = basis_coordinates(l, d, R)
    if l == 0:
        return [{k: Fraction(1)} for k in src]
    cols = [_differential_coords(l, {k: Fraction(1)}, R) for k in src]
    return [{src[j]: c for j, c in v.items()} for v in nullspace(cols)]


def homology_dimension(l: int, d: int, R: QuotientRing) -> int:
    if l < 0 or l > R.ring.n:
        return 0
    z = len(cycle_space(l, d, R))
    b = Echelon(boundary_images(l, d, R)).rank
    return z - b


@dataclass
class HomologyBasis:
    degree: int
    representatives: dict[int, list[KoszulElement]]
    dimensions: dict[int, int]

    def total_dimension(self) -> int:
        return sum(self.dimensions.values())

    def all_representatives(self) -> list[KoszulElement]:
        return [z for d in sorted(self.representatives) for z in self.representatives[d]]


class DimensionMismatch(AssertionError):
    pass


def _check_matches(res: Resolution, R: QuotientRing):
    ideal_gens = [g for g in res.ideal if not g.is_zero()]
    if res.ring != R.ring or not all(R.gb.contains(g) for g in ideal_gens):
        raise ValueError("resolution and quotient ring describe different ideals")
    if ideal_gens:
        gb = buchberger(ideal_gens, ring=R.ring)
        if not all(gb.contains(g) for g in R.generators if not g.is_zero()):
            raise ValueError("resolution and quotient ring describe different ideals")
    elif any(not g.is_zero() for g in R.generators):
        raise ValueError("resolution and quotient ring describe different ideals")


def homology_degrees(l: int, res: Resolution, full_scan: bool = False) -> list[int]:
    """Internal degrees where H_l may live: shifts of F_l, or a full window."""
    if full_scan:
        top = max((d for F in res.modules for d in F.shifts), default=0) + sum(res.ring.weights)
        return list(range(0, top + 1))
    return sorted(set(res.modules[l].shifts)) if l < len(res.modules) else []


def homology_basis(l: int, R: QuotientRing, res: Resolution, full_scan: bool = False) -> HomologyBasis:
    """Cycle representatives of a basis of H_l(R), degree by degree.

    Dimensions are checked against the graded Betti numbers of ``res``;
    a disagreement raises :class:`DimensionMismatch`.
    """
    _check_matches(res, R)
    betti = betti_table(res)
    reps: dict[int, list[KoszulElement]] = {}
    dims: dict[int, int] = {}
    for d in homology_degrees(l, res, full_scan):
        ech = Echelon(boundary_images(l, d, R))
        chosen = []
        for v in cycle_space(l, d, R):
            if ech.add(v):
                chosen.append(_from_coordinates(l, v, R))
        expected = betti.get((l, d), 0)
        if len(chosen) != expected:
            raise DimensionMismatch(f"dim H_{l}(R)_{d} = {len(chosen)} but beta_{l},{d} = {expected}")
        if chosen:
            reps[d] = chosen
            dims[d] = len(chosen)
    return HomologyBasis(l, reps, dims)


def is_cycle(z: KoszulElement, R: QuotientRing) -> bool:
    return z.degree == 0 or differential(z, R).is_zero()


def is_boundary(z: KoszulElement, R: QuotientRing) -> tuple[bool, KoszulElement | None]:
    """Decide z in B(R); on success also return w with d(w) = z."""
    if not is_cycle(z, R):
        raise ValueError("is_boundary expects a cycle")
    l = z.degree
    if z.is_zero():
        return True, KoszulElement(l + 1, {})
    d = z.internal_degree(R.ring)
    if d is None:
        raise ValueError("is_boundary expects a homogeneous element")
    if l + 1 > R.ring.n:
        return False, None
    src = basis_coordinates(l + 1, d, R)
    cols = boundary_images(l, d, R)
    w = solve(cols, z.coordinates())
    if w is None:
        return False, None
    return True, _from_coordinates(l + 1, {src[j]: c for j, c in w.items()}, R)


def class_span(l: int, d: int, R: QuotientRing) -> Echelon:
    """Echelon span of B_l(R)_d, to be extended by cycles for independence tests."""
    return Echelon(boundary_images(l, d, R))


def membership_in_power(z: KoszulElement, I: Sequence[Polynomial], m: int, R: QuotientRing,
                        gb: GroebnerBasis | None = None) -> bool:
    """Whether every component of z lies in I^m + J."""
    if m < 0:
        raise ValueError("power must be non-negative")
    if m == 0 or z.is_zero():
        return True
    if gb is None:
        gb = power_plus_basis(I, m, R)
    return all(gb.contains(f) for f in z.components.values())


def power_plus_basis(I: Sequence[Polynomial], m: int, R: QuotientRing) -> GroebnerBasis:
    """Gröbner basis of I^m + J."""
    gens = ideal_power(list(I), m) + [g for g in R.generators if not g.is_zero()]
    return buchberger(gens, ring=R.ring)
