"""Jacobian Koszul cycles and Golod certificates for powers of ideals.

For a chain j_1 -> j_2 -> ... -> j_l -> 1 through the matrices of the minimal
resolution of S/J, the element

    sum_{i_1<...<i_l} a_{i_1}...a_{i_l} det(d alpha / d x_{i}) e_{i_1}^...^e_{i_l}

with entries (alpha^(l)_{j1 j2}, alpha^(l-1)_{j2 j3}, ..., alpha^(1)_{jl 1}) is
assembled for every chain starting at j_1.  Rational chain coefficients are
solved for so that the combination is a cycle.  When J = I^k the last entry of
each chain is a product of k generators of I, and the product rule puts every
such Jacobian into I^(k-1), which forces all pairwise wedge products of the
chosen cycles to vanish in K(S/I^k).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .groebner import ModuleVector, StepBudget, buchberger, ideal_power_factored
from .koszul import (DimensionMismatch, KoszulElement, QuotientRing, _differential_coords,
                     _from_coordinates, boundary_images, class_span, cycle_space, differential,
                     homology_basis, is_boundary, membership_in_power, power_plus_basis, wedge)
from .linalg import Echelon, axpy, nullspace
from .poly import Polynomial, RingSpec, is_homogeneous, partial_derivative
from .resolution import Resolution, betti_table, minimal_free_resolution, verify_resolution
from .series import SeriesComparison, golod_by_series

Chain = tuple[int, ...]


def _det(rows: list[list[Polynomial]], ring: RingSpec) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for t in range(n):
        a = rows[0][t]
        if a.is_zero():
            continue
        minor = [r[:t] + r[t + 1:] for r in rows[1:]]
        term = a * _det(minor, ring)
        total = total + term if t % 2 == 0 else total - term
    return total


def jacobian_determinant(entries: Sequence[Polynomial], variables: Sequence[int]) -> Polynomial:
    """det of the matrix with (s, t) entry d entries[s] / d x_{variables[t]}."""
    if not entries:
        raise ValueError("need at least one entry")
    if len(entries) != len(variables):
        raise ValueError(f"{len(entries)} entries but {len(variables)} variables")
    if any(b <= a for a, b in zip(variables, variables[1:])):
        raise ValueError("variables must be strictly increasing")
    ring = entries[0].ring
    rows = [[partial_derivative(f, i) for i in variables] for f in entries]
    return _det(rows, ring)


def jacobian_product_rule_expand(head: Sequence[Polynomial], factors: Sequence[Polynomial],
                                 variables: Sequence[int]) -> list[tuple[Polynomial, Polynomial]]:
    """Split J(head..., g_1 ... g_k) into k summands (J(head..., g_s), prod_{t != s} g_t).

    The summands add up (jacobian times cofactor) to the Jacobian of the
    expanded product, and every cofactor is a product of k - 1 of the factors.
    """
    if not factors:
        raise ValueError("need at least one factor")
    ring = factors[0].ring
    out = []
    for s in range(len(factors)):
        cof = ring.one()
        for t, g in enumerate(factors):
            if t != s:
                cof = cof * g
        out.append((jacobian_determinant(list(head) + [factors[s]], variables), cof))
    return out


@dataclass(frozen=True)
class JacobianCycle:
    degree: int
    j1: int
    internal_degree: int
    coefficients: dict[Chain, Fraction]
    element: KoszulElement
    fallback: bool = False


def _chain_entries(res: Resolution, l: int, j1: int, chain: Chain) -> list[Polynomial]:
    idx = (j1,) + chain + (0,)
    return [res.alpha(l - t)[idx[t]][idx[t + 1]] for t in range(l)]


def chains(res: Resolution, l: int, j1: int) -> list[Chain]:
    """Chains (j_2, ..., j_l) with all entries along j1 -> ... -> 1 nonzero."""
    out = []

    def rec(level, current, prefix):
        # level = homological index of the matrix whose row is ``current``
        if level == 1:
            if not res.alpha(1)[current][0].is_zero():
                out.append(prefix)
            return
        row = res.alpha(level)[current]
        for nxt, a in enumerate(row):
            if not a.is_zero():
                rec(level - 1, nxt, prefix + (nxt,))

    rec(l, j1, ())
    return out


def chain_element(res: Resolution, l: int, j1: int, chain: Chain, R: QuotientRing) -> KoszulElement:
    """Weighted sum of the Jacobians of one chain over all l-subsets of variables."""
    ring = R.ring
    entries = _chain_entries(res, l, j1, chain)
    comps = {}
    for A in combinations(range(ring.n), l):
        jac = jacobian_determinant(entries, A)
        if jac.is_zero():
            continue
        wprod = 1
        for i in A:
            wprod *= ring.weights[i]
        comps[A] = jac.scale(wprod)
    return KoszulElement.build(l, comps, R)


class NoIndependentJacobianCycle(LookupError):
    pass


def jacobian_chain_cycle(res: Resolution, l: int, j1: int, R: QuotientRing,
                         span: Echelon | None = None) -> JacobianCycle:
    """A cycle of Jacobian type for the basis element f_{l, j1} of F_l.

    The chain coefficients solving d(z) = 0 are found by exact linear algebra;
    the echelon basis of that solution space is tried in order and the first
    solution whose class is independent of ``span`` (boundaries plus classes
    already chosen in this degree) is taken and added to ``span``.
    """
    if not 1 <= l <= res.length:
        raise ValueError(f"homological degree {l} outside 1..{res.length}")
    if not 0 <= j1 < res.modules[l].rank:
        raise ValueError(f"basis index {j1} outside F_{l}")
    d = res.modules[l].shifts[j1]
    if span is None:
        span = class_span(l, d, R)
    found = [(c, chain_element(res, l, j1, c, R)) for c in chains(res, l, j1)]
    found = [(c, w) for c, w in found if not w.is_zero()]
    cols = [_differential_coords(l, w.coordinates(), R) for _, w in found]
    for sol in nullspace(cols):
        coords: dict = {}
        for j, c in sol.items():
            axpy(coords, c, found[j][1].coordinates())
        if not coords:
            continue
        if span.add(coords):
            z = _from_coordinates(l, coords, R)
            coeffs = {found[j][0]: c for j, c in sorted(sol.items())}
            return JacobianCycle(l, j1, d, coeffs, z)
    raise NoIndependentJacobianCycle(f"no Jacobian cycle for f_({l},{j1}) is independent")


def jacobian_cycles(res: Resolution, R: QuotientRing) -> list[JacobianCycle]:
    """One representative per basis element of every F_l, l >= 1.

    Basis elements whose Jacobian candidates are all dependent get a plain
    homology representative instead, flagged ``fallback``.
    """
    out = []
    for l in range(1, res.length + 1):
        spans: dict[int, Echelon] = {}
        missing = []
        for j1, d in enumerate(res.modules[l].shifts):
            span = spans.setdefault(d, class_span(l, d, R))
            try:
                out.append(jacobian_chain_cycle(res, l, j1, R, span))
            except NoIndependentJacobianCycle:
                missing.append((j1, d))
        for j1, d in missing:
            span = spans[d]
            for v in cycle_space(l, d, R):
                if span.add(v):
                    out.append(JacobianCycle(l, j1, d, {}, _from_coordinates(l, v, R), fallback=True))
                    break
            else:
                raise DimensionMismatch(f"no homology class left for f_({l},{j1})")
    out.sort(key=lambda c: (c.degree, c.j1))
    return out


@dataclass(frozen=True)
class ProductCheck:
    first: int
    second: int
    zero: bool
    vacuous: bool


@dataclass
class GolodCertificate:
    ring: RingSpec
    I: tuple[Polynomial, ...]
    k: int
    J: tuple[Polynomial, ...]
    J_factors: tuple[tuple[int, ...], ...]
    resolution: Resolution
    resolution_ok: bool
    homology_dims: dict[tuple[int, int], int]
    dims_match: bool
    cycles: list[JacobianCycle]
    cycle_ok: list[bool]
    classes_form_basis: bool
    membership: list[bool]
    products: list[ProductCheck]
    series: SeriesComparison | None
    flags: list[str] = field(default_factory=list)

    @property
    def massey_trivial(self) -> bool:
        # with every product literally zero, gamma(h_1..h_m) = 0 for m >= 2 solves the higher conditions
        return all(p.zero for p in self.products)

    @property
    def verdict(self) -> bool:
        return (self.resolution_ok and self.dims_match and self.classes_form_basis
                and all(self.cycle_ok) and all(self.membership) and self.massey_trivial
                and self.series is not None and self.series.equal)

    def failures(self) -> list[str]:
        out = []
        if not self.resolution_ok:
            out.append("resolution failed verification")
        if not self.dims_match:
            out.append("Koszul homology dimensions differ from Betti numbers")
        if not all(self.cycle_ok):
            out.append("a representative is not a cycle")
        if not self.classes_form_basis:
            out.append("representatives do not form a homology basis")
        if not all(self.membership):
            out.append(f"a representative is not in I^{self.k - 1} K(R)")
        bad = [p for p in self.products if not p.zero]
        if bad:
            out.append(f"product of representatives {bad[0].first} and {bad[0].second} is nonzero")
        if self.series is None:
            out.append("series comparison missing")
        elif not self.series.poincare.complete:
            out.append("Poincaré series incomplete: step budget exhausted")
        elif not self.series.equal:
            out.append("Poincaré series differs from Serre's bound: " + self.series.describe())
        return out


def _check_ideal(I: Sequence[Polynomial], ring: RingSpec):
    if not I or all(g.is_zero() for g in I):
        raise ValueError("I must have a nonzero generator")
    for g in I:
        if is_homogeneous(g, ring) is None:
            raise ValueError(f"generator {g} is not homogeneous")
    if buchberger([g for g in I if not g.is_zero()], ring=ring).is_unit_ideal():
        raise ValueError("I is the unit ideal")


def golod_certificate(I: Sequence[Polynomial], k: int, N: int = 5, ring: RingSpec | None = None,
                      full_scan: bool = False, budget: StepBudget | None = None) -> GolodCertificate:
    """Build and check the Golod certificate of S/I^k."""
    if k < 2:
        raise ValueError("the power k must be at least 2")
    I = [g for g in I if not g.is_zero()]
    ring = ring or (I[0].ring if I else None)
    _check_ideal(I, ring)
    factored = ideal_power_factored(I, k)
    J = [p for _, p in factored]
    res = minimal_free_resolution(J, ring=ring)
    J_factors = tuple(factored[i][0] for i in res.generator_order)
    resolution_ok = verify_resolution(res).ok
    R = QuotientRing(ring, J)
    flags: list[str] = []

    dims: dict[tuple[int, int], int] = {}
    dims_match = True
    totals: dict[int, int] = {}
    for l in range(1, ring.n + 1):
        try:
            hb = homology_basis(l, R, res, full_scan)
        except DimensionMismatch:
            dims_match = False
            continue
        for d, n in hb.dimensions.items():
            dims[(l, d)] = n
        totals[l] = hb.total_dimension()

    cycles = jacobian_cycles(res, R) if dims_match else []
    if any(c.fallback for c in cycles):
        flags.append("fallback-representatives")
    cycle_ok = [differential(c.element, R).is_zero() for c in cycles]

    classes_form_basis = dims_match
    if dims_match:
        by_degree: dict[tuple[int, int], list[KoszulElement]] = {}
        for c in cycles:
            by_degree.setdefault((c.degree, c.internal_degree), []).append(c.element)
        for (l, d), n in dims.items():
            reps = by_degree.get((l, d), [])
            span = class_span(l, d, R)
            if len(reps) != n or not all(span.add(z.coordinates()) for z in reps):
                classes_form_basis = False
        if set(by_degree) - set(dims):
            classes_form_basis = False

    gb_power = power_plus_basis(I, k - 1, R)
    membership = [membership_in_power(c.element, I, k - 1, R, gb_power) for c in cycles]

    products = []
    for a in range(len(cycles)):
        for b in range(a, len(cycles)):
            za, zb = cycles[a].element, cycles[b].element
            if za.degree + zb.degree > ring.n:
                products.append(ProductCheck(a, b, True, True))
                continue
            products.append(ProductCheck(a, b, wedge(za, zb, R).is_zero(), False))

    series = golod_by_series(J, N, ring, homology_dims=totals, budget=budget) if dims_match else None
    return GolodCertificate(ring, tuple(I), k, tuple(res.ideal[i] for i in res.generator_order), J_factors,
                            res, resolution_ok, dims, dims_match, cycles, cycle_ok, classes_form_basis,
                            membership, products, series, flags)


@dataclass(frozen=True)
class TrivialMultiplication:
    trivial: bool
    witness: tuple[KoszulElement, KoszulElement, KoszulElement] | None = None


def trivial_multiplication_check(J: Sequence[Polynomial], ring: RingSpec | None = None) -> TrivialMultiplication:
    """Whether all products of positive-degree Koszul homology classes vanish.

    On failure the witness is (z1, z2, z1 ^ z2) with z1 ^ z2 not a boundary.
    """
    ring = ring or J[0].ring
    J = [g for g in J if not g.is_zero()]
    res = minimal_free_resolution(J, ring=ring)
    R = QuotientRing(ring, J)
    reps = []
    for l in range(1, ring.n + 1):
        reps.extend(homology_basis(l, R, res).all_representatives())
    for a in range(len(reps)):
        for b in range(a, len(reps)):
            p = wedge(reps[a], reps[b], R)
            if p.is_zero():
                continue
            ok, _ = is_boundary(p, R)
            if not ok:
                return TrivialMultiplication(False, (reps[a], reps[b], p))
    return TrivialMultiplication(True)
