"""Gröbner bases for ideals of S and submodules of graded free S-modules.

Module elements are handled internally as sparse dicts ``{(comp, exp): c}``.
Monomials are compared by weighted degree reverse lexicographic order; module
terms use position over term with lower component index first, so an ideal is
simply the rank one case.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence, Union

from .linalg import Echelon, axpy
from .poly import Exponent, Polynomial, RingSpec, format_polynomial, revlex_key

Term = tuple[int, Exponent]


class BudgetExceeded(RuntimeError):
    """Raised when a :class:`StepBudget` runs out."""


class StepBudget:
    """Shared counter of S-pair and generator reductions."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"step budget of {self.limit} reductions exhausted")


class TermOrder:
    """Weighted degrevlex, extended to modules position over term."""

    def __init__(self, weights: tuple[int, ...], shifts: tuple[int, ...] = (0,)):
        self.weights = weights
        self.shifts = tuple(shifts)
        self._keys: dict[Term, tuple] = {}

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def key(self, term: Term) -> tuple:
        k = self._keys.get(term)
        if k is None:
            comp, e = term
            k = (-comp, sum(a * b for a, b in zip(e, self.weights)), revlex_key(e))
            self._keys[term] = k
        return k

    def degree(self, term: Term) -> int:
        comp, e = term
        return self.shifts[comp] + sum(a * b for a, b in zip(e, self.weights))

    def lead(self, vec: dict) -> Term:
        return max(vec, key=self.key)


@dataclass(frozen=True)
class ModuleVector:
    """Element of the graded free module S^r with basis degrees ``shifts``."""

    components: tuple[Polynomial, ...]
    shifts: tuple[int, ...] = None

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a module vector needs at least one component")
        object.__setattr__(self, "components", comps)
        shifts = (0,) * len(comps) if self.shifts is None else tuple(self.shifts)
        if len(shifts) != len(comps):
            raise ValueError("one shift per component required")
        object.__setattr__(self, "shifts", shifts)

    @property
    def ring(self) -> RingSpec:
        return self.components[0].ring

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self) -> int | None:
        """Graded degree if homogeneous and nonzero."""
        degs = set()
        for c, s in zip(self.components, self.shifts):
            for m, _ in c.items():
                degs.add(s + sum(a * b for a, b in zip(m, c.ring.weights)))
        return degs.pop() if len(degs) == 1 else None

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        return ModuleVector(tuple(a + b for a, b in zip(self.components, other.components)), self.shifts)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return ModuleVector(tuple(a - b for a, b in zip(self.components, other.components)), self.shifts)

    def __neg__(self):
        return ModuleVector(tuple(-a for a in self.components), self.shifts)

    def __mul__(self, f):
        return ModuleVector(tuple(a * f for a in self.components), self.shifts)

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(format_polynomial(c) for c in self.components) + ")"


Element = Union[Polynomial, ModuleVector]


def _to_vec(f: Element) -> dict:
    if isinstance(f, Polynomial):
        return {(0, m): c for m, c in f.items()}
    out = {}
    for comp, p in enumerate(f.components):
        for m, c in p.items():
            out[(comp, m)] = c
    return out


def _from_vec(vec: dict, ring: RingSpec, shifts: tuple[int, ...], as_poly: bool) -> Element:
    if as_poly:
        return Polynomial._raw(ring, {m: c for (_, m), c in vec.items()})
    parts: list[dict] = [{} for _ in shifts]
    for (comp, m), c in vec.items():
        parts[comp][m] = c
    return ModuleVector(tuple(Polynomial._raw(ring, p) for p in parts), shifts)


def _shift_vec(g: dict, q: Exponent) -> dict:
    return {(c, tuple(a + b for a, b in zip(e, q))): v for (c, e), v in g.items()}


def _monic(vec: dict, order: TermOrder) -> dict:
    lc = vec[order.lead(vec)]
    if lc == 1:
        return vec
    inv = 1 / lc
    return {t: v * inv for t, v in vec.items()}


class _Reducer:
    """Lead-term lookup for a list of monic basis vectors, bucketed by component."""

    def __init__(self, order: TermOrder):
        self.order = order
        self.by_comp: dict[int, list[tuple[Exponent, dict]]] = {}

    def add(self, g: dict):
        comp, e = self.order.lead(g)
        self.by_comp.setdefault(comp, []).append((e, g))

    def divisor(self, term: Term):
        comp, e = term
        for be, g in self.by_comp.get(comp, ()):
            if all(x >= y for x, y in zip(e, be)):
                return tuple(x - y for x, y in zip(e, be)), g
        return None

    def reduce(self, vec: dict) -> dict:
        p = dict(vec)
        rem = {}
        key = self.order.key
        while p:
            t = max(p, key=key)
            hit = self.divisor(t)
            if hit is None:
                rem[t] = p.pop(t)
                continue
            q, g = hit
            c = p[t]
            for (gc, ge), v in g.items():
                k = (gc, tuple(a + b for a, b in zip(ge, q)))
                s = p.get(k, 0) - c * v
                if s:
                    p[k] = s
                else:
                    del p[k]
        return rem


def _vec_degree(vec: dict, order: TermOrder) -> int:
    return max(order.degree(t) for t in vec)


def _groebner(gens: Iterable[dict], order: TermOrder, budget: StepBudget | None = None) -> list[dict]:
    """Reduced Gröbner basis of the span of ``gens``.

    Pairs and input generators share one queue ordered by degree (normal
    strategy).  Buchberger's chain criterion is always used; the coprime lead
    criterion only for ideals, where it is valid.
    """
    use_product = order.rank == 1
    G: list[dict] = []
    leads: list[Term] = []
    reducer = _Reducer(order)
    queue: list = []
    pending: set[tuple[int, int]] = set()
    seq = 0
    for g in gens:
        if g:
            queue.append((_vec_degree(g, order), seq, None, g))
            seq += 1
    heapq.heapify(queue)

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(leads[i][1], leads[j][1]))

    def chain_skip(i, j, lcm):
        comp = leads[i][0]
        for k, (kc, ke) in enumerate(leads):
            if k == i or k == j or kc != comp:
                continue
            if all(x >= y for x, y in zip(lcm, ke)):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    return True
        return False

    while queue:
        _, _, pair, data = heapq.heappop(queue)
        if pair is not None:
            i, j = pair
            pending.discard(pair)
            lcm = data
            ei, ej = leads[i][1], leads[j][1]
            if use_product and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                continue
            if chain_skip(i, j, lcm):
                continue
            s = _shift_vec(G[i], tuple(a - b for a, b in zip(lcm, ei)))
            axpy(s, -1, _shift_vec(G[j], tuple(a - b for a, b in zip(lcm, ej))))
        else:
            s = data
        if budget is not None:
            budget.tick()
        h = reducer.reduce(s)
        if not h:
            continue
        h = _monic(h, order)
        idx = len(G)
        G.append(h)
        leads.append(order.lead(h))
        reducer.add(h)
        comp = leads[idx][0]
        for i in range(idx):
            if leads[i][0] == comp:
                lcm = lcm_of(i, idx)
                pending.add((i, idx))
                heapq.heappush(queue, (order.shifts[comp] + sum(a * b for a, b in zip(lcm, order.weights)),
                                       seq, (i, idx), lcm))
                seq += 1
    return _interreduce(G, order)


def _interreduce(G: list[dict], order: TermOrder) -> list[dict]:
    leads = [order.lead(g) for g in G]
    keep = []
    for i, (ci, ei) in enumerate(leads):
        redundant = False
        for j, (cj, ej) in enumerate(leads):
            if j != i and cj == ci and all(x >= y for x, y in zip(ei, ej)):
                if ei != ej or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        r = _Reducer(order)
        for j in keep:
            if j != i:
                r.add(G[j])
        out.append(_monic(r.reduce(G[i]), order))
    out.sort(key=lambda g: order.key(order.lead(g)))
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis of an ideal (rank 1) or a submodule of S^rank."""

    ring: RingSpec
    shifts: tuple[int, ...]
    elements: tuple[dict, ...]
    is_ideal: bool = True
    reduced: bool = True
    _reducer: _Reducer = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        order = TermOrder(self.ring.weights, self.shifts)
        r = _Reducer(order)
        for g in self.elements:
            r.add(g)
        object.__setattr__(self, "_reducer", r)

    @property
    def order(self) -> TermOrder:
        return self._reducer.order

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def __len__(self):
        return len(self.elements)

    def generators(self) -> list[Element]:
        return [_from_vec(g, self.ring, self.shifts, self.is_ideal) for g in self.elements]

    def leading_exponents(self) -> list[Term]:
        return [self.order.lead(g) for g in self.elements]

    def reduce_vec(self, vec: dict) -> dict:
        return self._reducer.reduce(vec)

    def normal_form(self, f: Element) -> Element:
        return normal_form(f, self)

    def contains(self, f: Element) -> bool:
        return not self._reducer.reduce(_to_vec(f))

    def is_unit_ideal(self) -> bool:
        return self.is_ideal and self.contains(self.ring.one())


def _infer(gens: Sequence[Element], ring, rank, shifts):
    is_ideal = True
    for g in gens:
        if isinstance(g, ModuleVector):
            is_ideal = False
            ring = ring or g.ring
            shifts = shifts or g.shifts
            if len(g.shifts) != len(shifts):
                raise ValueError("module vectors of different rank")
        else:
            ring = ring or g.ring
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    if shifts is None:
        shifts = (0,) * (rank or 1)
    if is_ideal and len(shifts) != 1:
        is_ideal = False
    return ring, tuple(shifts), is_ideal


def buchberger(gens: Sequence[Element], *, ring: RingSpec | None = None, rank: int | None = None,
               shifts: Sequence[int] | None = None, budget: StepBudget | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal or module spanned by ``gens``."""
    ring, shifts, is_ideal = _infer(gens, ring, rank, shifts)
    order = TermOrder(ring.weights, shifts)
    elems = _groebner([_to_vec(g) for g in gens], order, budget)
    return GroebnerBasis(ring, shifts, tuple(elems), is_ideal)


def normal_form(f: Element, gb: GroebnerBasis) -> Element:
    rem = gb.reduce_vec(_to_vec(f))
    if isinstance(f, ModuleVector):
        if f.rank != gb.rank:
            raise ValueError(f"rank mismatch: vector of rank {f.rank}, basis of rank {gb.rank}")
        return _from_vec(rem, gb.ring, f.shifts, False)
    return _from_vec(rem, gb.ring, gb.shifts, True)


def module_membership(v: Element, gens: Sequence[Element]) -> bool:
    if isinstance(v, ModuleVector):
        for g in gens:
            if isinstance(g, ModuleVector) and g.rank != v.rank:
                raise ValueError(f"rank mismatch: {v.rank} vs {g.rank}")
        gb = buchberger(gens, ring=v.ring, shifts=v.shifts)
    else:
        gb = buchberger(gens, ring=v.ring)
    return gb.contains(v)


def minimal_subset(vecs: Sequence[dict], order: TermOrder, extra: Sequence[dict] = (),
                   budget: StepBudget | None = None) -> list[int]:
    """Indices of a minimal generating subset of homogeneous ``vecs`` modulo ``extra``.

    Degrees are processed upward.  In degree d a vector is redundant iff its
    normal form against the module generated by ``extra`` and the lower-degree
    survivors lies in the span of the normal forms of the same-degree survivors.
    Ties resolve in input order.
    """
    live = [i for i, v in enumerate(vecs) if v]
    degs = {i: _vec_degree(vecs[i], order) for i in live}
    live.sort(key=lambda i: (degs[i], i))
    kept: list[int] = []
    gb_elems: list[dict] = _groebner(extra, order, budget) if extra else []
    pos = 0
    while pos < len(live):
        d = degs[live[pos]]
        group = []
        while pos < len(live) and degs[live[pos]] == d:
            group.append(live[pos])
            pos += 1
        reducer = _Reducer(order)
        for g in gb_elems:
            reducer.add(g)
        ech = Echelon()
        new = []
        for i in group:
            if ech.add(reducer.reduce(vecs[i])):
                new.append(i)
        if new:
            kept.extend(new)
            if pos < len(live):
                gb_elems = _groebner(gb_elems + [vecs[i] for i in new], order, budget)
    return kept


def minimal_generator_indices(gens: Sequence[Element], modulo: Sequence[Element] = ()) -> list[int]:
    """Indices of a minimal homogeneous generating subset of ``gens`` modulo ``modulo``.

    Survivors come back sorted by degree, ties in input order.
    """
    if not gens:
        return []
    ring, shifts, _ = _infer(list(gens) + list(modulo), None, None, None)
    order = TermOrder(ring.weights, shifts)
    return minimal_subset([_to_vec(g) for g in gens], order, [_to_vec(g) for g in modulo])


def minimal_generators(gens: Sequence[Element], modulo: Sequence[Element] = ()) -> list[Element]:
    return [gens[i] for i in minimal_generator_indices(gens, modulo)]


def syzygy_basis(gens: Sequence[Element], modulo: Sequence[Polynomial] = (),
                 budget: StepBudget | None = None, *, ring: RingSpec | None = None,
                 shifts: Sequence[int] | None = None) -> list[ModuleVector]:
    """Minimal homogeneous generators of the syzygy module of ``gens``.

    The result lives in S^m (m = len(gens)) with basis degrees deg(gens[t]).
    With ``modulo`` = generators of an ideal J the syzygies are taken over S/J:
    vectors c with sum c_t gens_t in J*S^r, returned as lifts and minimal
    modulo J*S^m.
    """
    ring, shifts, _ = _infer(gens, ring, None, shifts)
    r = len(shifts)
    vecs = [_to_vec(g) for g in gens]
    m = len(vecs)
    if m == 0:
        return []
    order_in = TermOrder(ring.weights, shifts)
    tag_shifts = []
    for v in vecs:
        if not v:
            tag_shifts.append(0)
            continue
        ds = {order_in.degree(t) for t in v}
        if len(ds) != 1:
            raise ValueError("syzygies are only computed for homogeneous generators")
        tag_shifts.append(ds.pop())
    tag_shifts = tuple(tag_shifts)
    big = TermOrder(ring.weights, shifts + tag_shifts)
    jvecs = [_to_vec(j) for j in modulo if not j.is_zero()]
    graph = []
    for t, v in enumerate(vecs):
        w = dict(v)
        w[(r + t, (0,) * ring.n)] = Fraction(1)
        graph.append(w)
    for jv in jvecs:
        for comp in range(r):
            graph.append({(comp, e): c for (_, e), c in jv.items()})
        for t in range(m):
            graph.append({(r + t, e): c for (_, e), c in jv.items()})
    gb = _groebner(graph, big, budget)
    tag_order = TermOrder(ring.weights, tag_shifts)
    syz = []
    for g in gb:
        comp, _ = big.lead(g)
        if comp >= r:
            syz.append({(c - r, e): v for (c, e), v in g.items()})
    extra = []
    for jv in jvecs:
        for t in range(m):
            extra.append({(t, e): c for (_, e), c in jv.items()})
    keep = minimal_subset(syz, tag_order, extra, budget)
    out = [_from_vec(syz[i], ring, tag_shifts, False) for i in keep]
    j_reducer = None
    if jvecs:
        j_order = TermOrder(ring.weights, (0,))
        j_reducer = _Reducer(j_order)
        for g in _groebner(jvecs, j_order):
            j_reducer.add(g)
    for s in out:
        total = {}
        for t, c in enumerate(s.components):
            for (comp, e), v in vecs[t].items():
                for m2, c2 in c.items():
                    k = (comp, tuple(a + b for a, b in zip(e, m2)))
                    axpy(total, 1, {k: v * c2})
        if jvecs:
            assert _in_jmodule(total, j_reducer), "syzygy check failed"
        else:
            assert not total, "syzygy check failed"
    return out


def _in_jmodule(vec: dict, j_reducer: _Reducer) -> bool:
    comps = {c for c, _ in vec}
    for comp in comps:
        part = {(0, e): c for (cc, e), c in vec.items() if cc == comp}
        if j_reducer.reduce(part):
            return False
    return True


def ideal_power_factored(gens: Sequence[Polynomial], k: int) -> list[tuple[tuple[int, ...], Polynomial]]:
    """Minimal generators of I^k chosen among the k-fold products of ``gens``.

    Returns ``(indices, product)`` pairs, indices nondecreasing.  Candidates are
    scanned by degree, ties by the lexicographic index tuple; a product is kept
    iff it is not in the ideal of lower-degree survivors plus the span of
    earlier same-degree survivors.
    """
    if k < 1:
        raise ValueError("power must be at least 1")
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    cands = []
    for idx in combinations_with_replacement(range(len(gens)), k):
        p = ring.one()
        for i in idx:
            p = p * gens[i]
        cands.append((idx, p))
    order = TermOrder(ring.weights, (0,))
    keep = minimal_subset([_to_vec(p) for _, p in cands], order)
    return [cands[i] for i in keep]


def ideal_power(gens: Sequence[Polynomial], k: int) -> list[Polynomial]:
    return [p for _, p in ideal_power_factored(gens, k)]


def spair_check(gb: GroebnerBasis) -> bool:
    """Re-verify Buchberger's criterion: every S-pair reduces to zero."""
    order = gb.order
    elems = list(gb.elements)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            ci, ei = order.lead(elems[i])
            cj, ej = order.lead(elems[j])
            if ci != cj:
                continue
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            s = _shift_vec(elems[i], tuple(a - b for a, b in zip(lcm, ei)))
            axpy(s, -1, _shift_vec(elems[j], tuple(a - b for a, b in zip(lcm, ej))))
            if gb.reduce_vec(s):
                return False
    return True
