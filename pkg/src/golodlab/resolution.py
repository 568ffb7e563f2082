"""Minimal graded free resolutions of cyclic modules S/J.

The resolution is stored through its matrices: ``maps[i-1]`` is the
b_i x b_{i-1} matrix alpha^(i) whose row j is the image of the basis element
f_ij of F_i written in the basis of F_{i-1}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import ModuleVector, StepBudget, buchberger, minimal_generator_indices, syzygy_basis
from .poly import Polynomial, RingSpec, is_homogeneous


@dataclass(frozen=True)
class FreeModule:
    """Graded free module with basis degrees ``shifts``."""

    shifts: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.shifts)


@dataclass(frozen=True)
class ChainMap:
    source: FreeModule
    target: FreeModule
    matrix: tuple[tuple[Polynomial, ...], ...]

    def row(self, j: int) -> ModuleVector:
        return ModuleVector(self.matrix[j], self.target.shifts)

    def rows(self) -> list[ModuleVector]:
        return [self.row(j) for j in range(self.source.rank)]


@dataclass(frozen=True)
class Resolution:
    ring: RingSpec
    ideal: tuple[Polynomial, ...]
    modules: tuple[FreeModule, ...]
    maps: tuple[ChainMap, ...]
    # index into the input generator list for each basis element of F_1
    generator_order: tuple[int, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def betti_numbers(self) -> list[int]:
        return [F.rank for F in self.modules]

    def alpha(self, i: int) -> tuple[tuple[Polynomial, ...], ...]:
        """Matrix of phi_i (1-based homological index)."""
        return self.maps[i - 1].matrix

    def shifts(self, i: int) -> tuple[int, ...]:
        return self.modules[i].shifts


def _sorted_rows(rows: Sequence[ModuleVector]) -> list[int]:
    return sorted(range(len(rows)), key=lambda j: (rows[j].degree(), j))


def minimal_free_resolution(J: Sequence[Polynomial], ring: RingSpec | None = None,
                            budget: StepBudget | None = None) -> Resolution:
    """Minimal graded free resolution of S/J by iterated minimal syzygies.

    Each F_{i+1} maps onto a minimal generating set of ker(phi_i), so no unit
    entries can arise.  Bases are ordered by degree, ties by construction order.
    """
    J = list(J)
    if ring is None:
        if not J:
            raise ValueError("ring required for the zero ideal")
        ring = J[0].ring
    for g in J:
        if is_homogeneous(g, ring) is None:
            raise ValueError(f"generator {g} is not homogeneous")
    nonzero = [g for g in J if not g.is_zero()]
    if nonzero and buchberger(nonzero, ring=ring).is_unit_ideal():
        raise ValueError("J is the unit ideal")

    F0 = FreeModule((0,))
    modules = [F0]
    maps: list[ChainMap] = []
    if not nonzero:
        return Resolution(ring, tuple(J), tuple(modules), (), ())

    nz_idx = [i for i, g in enumerate(J) if not g.is_zero()]
    keep = minimal_generator_indices([J[i] for i in nz_idx])
    generator_order = tuple(nz_idx[t] for t in keep)
    gens = [J[i] for i in generator_order]
    F1 = FreeModule(tuple(g.degree() for g in gens))
    modules.append(F1)
    maps.append(ChainMap(F1, F0, tuple((g,) for g in gens)))

    while True:
        prev = maps[-1]
        syz = syzygy_basis(prev.rows(), budget=budget, ring=ring, shifts=prev.target.shifts)
        if not syz:
            break
        order = _sorted_rows(syz)
        syz = [syz[j] for j in order]
        F = FreeModule(tuple(s.degree() for s in syz))
        modules.append(F)
        maps.append(ChainMap(F, prev.source, tuple(s.components for s in syz)))
        if len(maps) > ring.n:
            raise AssertionError("resolution longer than the number of variables")
    return Resolution(ring, tuple(J), tuple(modules), tuple(maps), generator_order)


def betti_table(res: Resolution) -> dict[tuple[int, int], int]:
    """Graded Betti numbers {(i, d): beta_{i,d}}."""
    table: Counter = Counter()
    for i, F in enumerate(res.modules):
        for d in F.shifts:
            table[(i, d)] += 1
    return dict(sorted(table.items()))


@dataclass
class ResolutionReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


def verify_resolution(res: Resolution) -> ResolutionReport:
    """Check shape, minimality, grading, phi*phi = 0 and exactness.

    Failures are collected in that order, so ``first_failure`` names the
    earliest category that breaks.
    """
    report = ResolutionReport()
    ring = res.ring
    fail = report.failures.append
    if res.modules[0].shifts != (0,):
        fail("shape: F_0 must be S with shift 0")
    if res.length > ring.n:
        fail(f"shape: length {res.length} exceeds n = {ring.n}")
    for i, phi in enumerate(res.maps, start=1):
        if phi.source != res.modules[i] or phi.target != res.modules[i - 1]:
            fail(f"shape: phi_{i} does not connect F_{i} and F_{i - 1}")
        if len(phi.matrix) != phi.source.rank or any(len(r) != phi.target.rank for r in phi.matrix):
            fail(f"shape: phi_{i} matrix has wrong size")
    if report.failures:
        return report

    for i, phi in enumerate(res.maps, start=1):
        for j, row in enumerate(phi.matrix):
            for k, a in enumerate(row):
                if not a.is_zero() and a.constant_term():
                    fail(f"minimality: phi_{i} entry ({j},{k}) = {a} has a unit term")
    for i, phi in enumerate(res.maps, start=1):
        for j, row in enumerate(phi.matrix):
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                want = phi.source.shifts[j] - phi.target.shifts[k]
                if is_homogeneous(a, ring) != want or want <= 0:
                    fail(f"grading: phi_{i} entry ({j},{k}) = {a} should have degree {want} > 0")
    for i in range(2, res.length + 1):
        A, B = res.alpha(i), res.alpha(i - 1)
        for j in range(len(A)):
            for c in range(len(B[0])):
                s = ring.zero()
                for k in range(len(B)):
                    s = s + A[j][k] * B[k][c]
                if not s.is_zero():
                    fail(f"composition: (phi_{i - 1} o phi_{i}) entry ({j},{c}) = {s}")
    if report.failures:
        return report

    if res.maps:
        image = [r[0] for r in res.alpha(1)]
        gb_image = buchberger(image, ring=ring)
        gb_ideal = buchberger([g for g in res.ideal if not g.is_zero()], ring=ring)
        if not all(gb_image.contains(g) for g in res.ideal) or not all(gb_ideal.contains(g) for g in image):
            fail("exactness at stage 0: image of phi_1 differs from J")
    for i in range(1, res.length + 1):
        phi = res.maps[i - 1]
        kernel = syzygy_basis(phi.rows(), ring=ring, shifts=phi.target.shifts)
        if i == res.length:
            if kernel:
                fail(f"exactness at stage {i}: phi_{i} is not injective")
            continue
        nxt = res.maps[i]
        gb = buchberger(nxt.rows(), ring=ring, shifts=phi.source.shifts)
        for v in kernel:
            if not gb.contains(ModuleVector(v.components, phi.source.shifts)):
                fail(f"exactness at stage {i}: syzygy {v} not in the image of phi_{i + 1}")
                break
    return report
