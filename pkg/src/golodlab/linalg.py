"""Exact linear algebra over Q.

Vectors are sparse dicts ``{key: Fraction}`` with comparable keys.  The
:class:`Echelon` span is used for kernels, images and quotient bases; the
fraction-free :func:`integer_rank` works on dense integer matrices and is kept
separate so that certificate checks do not share code with the main path.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

Vector = dict


def axpy(y: dict, a, x: Mapping) -> None:
    """In place ``y += a * x``, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """A subspace kept in sparse reduced row echelon form.

    With ``track=True`` every row remembers how it was built from the labelled
    vectors passed to :meth:`add`, so dependencies come out as explicit
    relations (``last_relation``).
    """

    def __init__(self, vectors: Iterable[Mapping] = (), track: bool = False):
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.track = track
        self.last_relation: dict | None = None
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping, combo: dict | None = None) -> dict:
        rem = {k: Fraction(v) for k, v in vec.items() if v}
        for p in [p for p in rem if p in self.rows]:
            c = rem.get(p)
            if c:
                axpy(rem, -c, self.rows[p])
                if combo is not None:
                    axpy(combo, -c, self.combos[p])
        return rem

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping, label: Hashable = None) -> bool:
        """Insert ``vec``; return True iff it was independent of the span."""
        combo = {label: Fraction(1)} if self.track else None
        rem = self.reduce(vec, combo)
        if not rem:
            self.last_relation = combo
            return False
        self.last_relation = None
        pivot = min(rem)
        inv = 1 / rem[pivot]
        rem = {k: v * inv for k, v in rem.items()}
        if combo is not None:
            combo = {k: v * inv for k, v in combo.items()}
        for p, row in self.rows.items():
            c = row.get(pivot)
            if c:
                axpy(row, -c, rem)
                if combo is not None:
                    axpy(self.combos[p], -c, combo)
        self.rows[pivot] = rem
        if combo is not None:
            self.combos[pivot] = combo
        return True


def nullspace(columns: Sequence[Mapping]) -> list[dict[int, Fraction]]:
    """Kernel basis of the map sending coordinate ``j`` to ``columns[j]``.

    Columns are scanned left to right; each dependent column ``j`` yields one
    kernel vector with coefficient 1 at ``j`` and support on earlier columns
    only, i.e. the usual echelon basis indexed by free variables.
    """
    ech = Echelon(track=True)
    basis = []
    for j, col in enumerate(columns):
        if not ech.add(col, j):
            basis.append({k: v for k, v in ech.last_relation.items() if v})
    return basis


def solve(columns: Sequence[Mapping], target: Mapping) -> dict[int, Fraction] | None:
    """Some ``w`` with ``sum_j w[j] * columns[j] == target``, or None."""
    ech = Echelon(track=True)
    for j, col in enumerate(columns):
        ech.add(col, j)
    combo: dict = {}
    rem = ech.reduce(target, combo)
    if rem:
        return None
    return {k: -v for k, v in combo.items() if v}


def rank(columns: Sequence[Mapping]) -> int:
    return Echelon(columns).rank


def integer_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by fraction-free elimination.

    Rows are scaled to integers first; each elimination step is a
    cross-multiplication followed by removal of the row content, so no
    rational arithmetic happens during the sweep.
    """
    rows = []
    for row in matrix:
        row = [Fraction(v) for v in row]
        den = 1
        for v in row:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in row]
        if any(ints):
            rows.append(ints)
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            if a:
                new = [p * x - a * y for x, y in zip(rows[i], rows[r])]
                g = 0
                for x in new:
                    g = gcd(g, x)
                rows[i] = [x // g for x in new] if g > 1 else new
        r += 1
        if r == len(rows):
            break
    return r
