"""Brute-force oracles that avoid Gröbner bases: everything is dense linear
algebra over monomial bases of S = K[x_1..x_n]."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from golodlab.poly import Polynomial, RingSpec, monomials_of_degree


def dense_rank(rows) -> int:
    """Rank of a list of equal-length Fraction rows (plain Gaussian elimination)."""
    rows = [list(map(Fraction, r)) for r in rows if any(r)]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                t = rows[i][col] / rows[rank][col]
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def in_ideal_by_degree(f: Polynomial, gens) -> bool:
    """Homogeneous ideal membership by linear algebra in the degree of f."""
    if f.is_zero():
        return True
    ring = f.ring
    d = f.degree()
    monos = monomials_of_degree(d, ring.weights)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        dg = g.degree()
        if g.is_zero() or dg is None or dg > d:
            continue
        for m in monomials_of_degree(d - dg, ring.weights):
            p = g.shift(m)
            row = [Fraction(0)] * len(monos)
            for e, c in p.items():
                row[index[e]] = c
            rows.append(row)
    target = [Fraction(0)] * len(monos)
    for e, c in f.items():
        target[index[e]] = c
    return dense_rank(rows + [target]) == dense_rank(rows)


def _ideal_span_rows(J, ring, d, index, block, width):
    rows = []
    for g in J:
        dg = g.degree()
        if g.is_zero() or dg is None or dg > d:
            continue
        for m in monomials_of_degree(d - dg, ring.weights):
            row = [Fraction(0)] * width
            for e, c in g.shift(m).items():
                row[block + index[e]] = c
            rows.append(row)
    return rows


def koszul_homology_oracle(J, ring: RingSpec, l: int, d: int) -> int:
    """dim H_l(K(x; S/J))_d computed with dense matrices over S, no Gröbner bases.

    K_l(R)_d is K_l(S)_d modulo J*K_l(S)_d; ranks of the induced differentials
    come from rank(image + J-part) - rank(J-part).
    """
    def layout(k):
        blocks, width = {}, 0
        for A in combinations(range(ring.n), k):
            e = d - sum(ring.weights[i] for i in A)
            if e < 0:
                continue
            monos = monomials_of_degree(e, ring.weights)
            blocks[A] = (width, e, {m: i for i, m in enumerate(monos)})
            width += len(monos)
        return blocks, width

    def j_rows(k):
        blocks, width = layout(k)
        rows = []
        for A, (start, e, index) in blocks.items():
            rows += _ideal_span_rows(J, ring, e, index, start, width)
        return rows

    def induced_rank(k):
        # rank of d: K_k(R)_d -> K_{k-1}(R)_d
        if k < 1 or k > ring.n:
            return 0
        src, _ = layout(k)
        tgt, width = layout(k - 1)
        rows = []
        for A, (_, e, index) in src.items():
            for m in index:
                row = [Fraction(0)] * width
                for t, i in enumerate(A):
                    B = A[:t] + A[t + 1:]
                    start, _, tindex = tgt[B]
                    mm = tuple(a + (j == i) for j, a in enumerate(m))
                    row[start + tindex[mm]] += (-1) ** t
                rows.append(row)
        base = j_rows(k - 1)
        return dense_rank(rows + base) - dense_rank(base)

    if l < 0 or l > ring.n:
        return 0
    _, width = layout(l)
    dim_k = width - dense_rank(j_rows(l))
    return dim_k - induced_rank(l) - induced_rank(l + 1)


def series_expand(numerator, denominator, N):
    """Coefficients of numerator/denominator to order N (denominator[0] == 1) by inverting the denominator."""
    inv = [Fraction(1)] + [Fraction(0)] * N
    for k in range(1, N + 1):
        inv[k] = -sum(denominator[i] * inv[k - i] for i in range(1, min(k, len(denominator) - 1) + 1))
    return [sum(numerator[i] * inv[k - i] for i in range(min(k, len(numerator) - 1) + 1)) for k in range(N + 1)]


def _rref(rows):
    """Fully reduced row echelon form of sparse dict rows; columns compare by natural order."""
    basis: list[tuple[object, dict]] = []
    for row in rows:
        v = {k: Fraction(c) for k, c in row.items() if c}
        for p, b in basis:
            c = v.get(p)
            if c:
                for k, a in b.items():
                    v[k] = v.get(k, 0) - c * a
                    if not v[k]:
                        del v[k]
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {k: a * inv for k, a in v.items()}
        for i, (q, b) in enumerate(basis):
            c = b.get(p)
            if c:
                for k, a in v.items():
                    b[k] = b.get(k, 0) - c * a
                    if not b[k]:
                        del b[k]
        basis.append((p, v))
    return basis


def _kernel(columns):
    """Basis of {c : sum_j c_j columns[j] = 0} as dicts j -> Fraction."""
    rows: dict = {}
    for j, col in enumerate(columns):
        for k, a in col.items():
            rows.setdefault(k, {})[j] = a
    pivots = _rref(rows.values())
    pivot_cols = {p for p, _ in pivots}
    out = []
    for f in range(len(columns)):
        if f in pivot_cols:
            continue
        v = {f: Fraction(1)}
        for p, b in pivots:
            if f in b:
                v[p] = -b[f]
        out.append(v)
    return out


class _Quotient:
    """R = S/J degree by degree: standard monomials are the non-pivot columns of J_d."""

    def __init__(self, J, ring: RingSpec, top: int):
        self.ring = ring
        self.pieces = {}
        for d in range(top + 1):
            monos = monomials_of_degree(d, ring.weights)
            rows = []
            for g in J:
                dg = g.degree()
                if dg is None or dg > d:
                    continue
                for m in monomials_of_degree(d - dg, ring.weights):
                    rows.append(dict(g.shift(m).items()))
            pivots = dict(_rref(rows))
            std = [m for m in monos if m not in pivots]
            self.pieces[d] = (pivots, std)

    def std(self, d):
        return self.pieces[d][1] if d in self.pieces else []

    def reduce(self, d, vec):
        pivots = self.pieces[d][0]
        v = dict(vec)
        for p, row in pivots.items():
            c = v.get(p)
            if c:
                for k, a in row.items():
                    v[k] = v.get(k, 0) - c * a
                    if not v[k]:
                        del v[k]
        return v


def _times(Q: _Quotient, elem: dict, shifts, m, d):
    """Monomial m times a free-module element, landing in degree d."""
    out: dict = {}
    for (h, mono), c in elem.items():
        prod = tuple(a + b for a, b in zip(mono, m))
        out.setdefault(h, {})[prod] = out.get(h, {}).get(prod, 0) + c
    res = {}
    for h, vec in out.items():
        for mono, c in Q.reduce(d - shifts[h], vec).items():
            res[(h, mono)] = c
    return res


def tor_oracle(J, ring: RingSpec, N: int, top: int | None = None) -> list[int]:
    """dim Tor_i^R(K, K) for i <= N by brute-force iterated syzygies over R = S/J.

    Each step computes the kernel of F_i -> F_{i-1} in every degree up to
    ``top`` and keeps a complement of R_+ times the generators already found.
    ``top`` must bound the generator degrees; 2N is enough for ideals generated
    in degree two.
    """
    top = 2 * N * max(ring.weights) if top is None else top
    Q = _Quotient([g for g in J if not g.is_zero()], ring, top)
    # F_1 -> F_0 = R sends generator i to x_i
    shifts_prev = [0]
    shifts = list(ring.weights)
    images = [{(0, tuple(int(j == i) for j in range(ring.n))): Fraction(1)} for i in range(ring.n)]
    counts = [1, ring.n]
    for _ in range(2, N + 1):
        new_shifts, new_images = [], []
        for d in range(top + 1):
            basis = [(g, m) for g, s in enumerate(shifts) for m in Q.std(d - s)] if d >= min(shifts, default=0) else []
            if not basis:
                continue
            cols = [_times(Q, images[g], shifts_prev, m, d) for g, m in basis]
            ker = [{basis[j]: c for j, c in v.items()} for v in _kernel(cols)]
            span = []
            for e, gen in zip(new_shifts, new_images):
                if e < d:
                    for m in monomials_of_degree(d - e, ring.weights):
                        span.append(_times(Q, gen, shifts, m, d))
            echelon = _rref(span)
            rank = len(echelon)
            for v in ker:
                trial = _rref(span + [v])
                if len(trial) > rank:
                    span.append(v)
                    rank += 1
                    new_shifts.append(d)
                    new_images.append(v)
        counts.append(len(new_shifts))
        shifts_prev, shifts, images = shifts, new_shifts, new_images
        if not shifts:
            counts.extend([0] * (N - len(counts) + 1))
            break
    return counts[: N + 1]
