"""Truncated Poincaré series of R = S/J and Serre's upper bound.

The two sides are computed independently: the Poincaré side resolves the
residue field over R by iterated syzygies (Gröbner bases over S, then reduced
modulo J), the bound side only uses Koszul homology dimensions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

from .groebner import BudgetExceeded, ModuleVector, StepBudget, minimal_generator_indices, syzygy_basis
from .koszul import QuotientRing, homology_basis
from .poly import Polynomial, RingSpec
from .resolution import minimal_free_resolution

BUDGET_ENV = "GOLODLAB_STEP_BUDGET"


@dataclass(frozen=True)
class SeriesTruncation:
    coefficients: tuple[int, ...]
    label: str
    complete: bool = True

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]


@dataclass(frozen=True)
class SeriesComparison:
    poincare: SeriesTruncation
    bound: SeriesTruncation

    @property
    def first_difference(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.poincare.coefficients, self.bound.coefficients)):
            if a != b:
                return i
        return None

    @property
    def equal(self) -> bool:
        return (self.poincare.complete and self.first_difference is None
                and len(self.poincare.coefficients) == len(self.bound.coefficients))

    @property
    def bounded(self) -> bool:
        return all(a <= b for a, b in zip(self.poincare.coefficients, self.bound.coefficients))

    def describe(self) -> str:
        i = self.first_difference
        if i is None and not self.poincare.complete:
            return f"series agree up to t^{self.poincare.order}, Poincaré series incomplete (step budget exhausted)"
        if i is None:
            return f"series agree up to t^{self.poincare.order}"
        return f"first difference at t^{i} ({self.poincare[i]} vs {self.bound[i]})"


def default_budget() -> StepBudget:
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return StepBudget(None)
    try:
        limit = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if limit <= 0:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return StepBudget(limit)


def _nonzero(J: Sequence[Polynomial]) -> list[Polynomial]:
    return [g for g in J if not g.is_zero()]


def poincare_truncation(J: Sequence[Polynomial], N: int, ring: RingSpec | None = None,
                        budget: StepBudget | None = None) -> SeriesTruncation:
    """dim_K Tor_i^R(K, K) for i = 0..N from a minimal R-free resolution of K.

    Each step lifts the current matrix to S, computes syzygies over S of its
    rows together with J times the target basis, projects away the J-part and
    keeps a minimal generating set modulo J.  If the step budget runs out the
    coefficients found so far are returned with ``complete=False``.
    """
    ring = ring or J[0].ring
    J = _nonzero(J)
    R = QuotientRing(ring, J)
    budget = budget or default_budget()
    coeffs = [1]
    if N == 0:
        return SeriesTruncation((1,), "poincare")
    try:
        xs = ring.gens()
        keep = minimal_generator_indices(xs, modulo=J)
        rows = [ModuleVector((R.reduce(xs[i]),), (0,)) for i in keep]
        coeffs.append(len(rows))
        for _ in range(2, N + 1):
            if not rows:
                coeffs.append(0)
                continue
            shifts = rows[0].shifts
            syz = syzygy_basis(rows, modulo=J, budget=budget, ring=ring, shifts=shifts)
            syz.sort(key=lambda v: v.degree())
            rows = [ModuleVector(tuple(R.reduce(c) for c in v.components), v.shifts) for v in syz]
            coeffs.append(len(rows))
    except BudgetExceeded:
        return SeriesTruncation(tuple(coeffs), "poincare", complete=False)
    return SeriesTruncation(tuple(coeffs), "poincare")


def serre_bound_from_dims(n: int, homology_dims: Mapping[int, int], N: int) -> SeriesTruncation:
    """Expand (1+t)^n / (1 - sum_{i>=1} dim H_i t^(i+1)) to order N."""
    num = [comb(n, k) if k <= n else 0 for k in range(N + 1)]
    out: list[int] = []
    for k in range(N + 1):
        c = num[k]
        for i, h in homology_dims.items():
            if i >= 1 and k - i - 1 >= 0:
                c += h * out[k - i - 1]
        out.append(c)
    return SeriesTruncation(tuple(out), "serre-bound")


def koszul_homology_totals(J: Sequence[Polynomial], ring: RingSpec, full_scan: bool = False) -> dict[int, int]:
    """Total dimensions of H_i(x; R) for i >= 1."""
    res = minimal_free_resolution(J, ring=ring)
    R = QuotientRing(ring, _nonzero(J))
    return {l: homology_basis(l, R, res, full_scan).total_dimension() for l in range(1, ring.n + 1)}


def _check_embedding(J: Sequence[Polynomial]):
    for g in J:
        for m, _ in g.items():
            if sum(m) < 2:
                raise ValueError(f"J must lie in the square of the maximal ideal; {g} does not")


def serre_bound_series(J: Sequence[Polynomial], N: int, ring: RingSpec | None = None,
                       homology_dims: Mapping[int, int] | None = None) -> SeriesTruncation:
    """Serre's bound with the variables as minimal generators of the maximal ideal.

    Requires J inside m^2, otherwise the variables are not minimal generators.
    """
    ring = ring or J[0].ring
    J = _nonzero(J)
    _check_embedding(J)
    if homology_dims is None:
        homology_dims = koszul_homology_totals(J, ring)
    return serre_bound_from_dims(ring.n, homology_dims, N)


def golod_by_series(J: Sequence[Polynomial], N: int, ring: RingSpec | None = None,
                    homology_dims: Mapping[int, int] | None = None,
                    budget: StepBudget | None = None) -> SeriesComparison:
    ring = ring or J[0].ring
    return SeriesComparison(poincare_truncation(J, N, ring, budget),
                            serre_bound_series(J, N, ring, homology_dims))
