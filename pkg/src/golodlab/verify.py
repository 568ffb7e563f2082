"""Independent re-check of a serialized Golod certificate.

Only normal forms, the Koszul differential and the wedge product are used;
no resolution is recomputed.  Homology dimensions are recomputed from ranks
of the differential with fraction-free integer elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

from .groebner import buchberger
from .koszul import KoszulElement, QuotientRing, differential, wedge
from .linalg import integer_rank
from .report import element_from_json, polys_from_json, ring_from_json


@dataclass
class VerificationResult:
    failures: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def _basis(R: QuotientRing, l: int, d: int):
    w = R.ring.weights
    out = []
    for A in combinations(range(R.ring.n), l):
        rest = d - sum(w[i] for i in A)
        if rest >= 0:
            out.extend((A, m) for m in R.basis(rest))
    return out


def _differential_matrix(R: QuotientRing, l: int, d: int):
    """Dense matrix of d: K_l(R)_d -> K_{l-1}(R)_d, one row per source basis element."""
    src = _basis(R, l, d)
    tgt = {key: i for i, key in enumerate(_basis(R, l - 1, d))}
    rows = []
    for A, m in src:
        z = KoszulElement(l, {A: R.ring.one().shift(m)})
        row = [Fraction(0)] * len(tgt)
        for B, f in differential(z, R).components.items():
            for mm, c in f.items():
                row[tgt[(B, mm)]] = c
        rows.append(row)
    return src, rows


def _homology_dim(R: QuotientRing, l: int, d: int) -> int:
    n = R.ring.n
    dim_k = len(_basis(R, l, d))
    rank_out = integer_rank(_differential_matrix(R, l, d)[1]) if l >= 1 else 0
    rank_in = integer_rank(_differential_matrix(R, l + 1, d)[1]) if l + 1 <= n else 0
    return dim_k - rank_out - rank_in


def verify_certificate(data: dict) -> VerificationResult:
    """Re-check a payload produced by ``certificate_to_json``."""
    result = VerificationResult()
    fail = result.failures.append
    ring = ring_from_json(data["ring"])
    I = polys_from_json(data["I"], ring)
    k = data["k"]
    J = polys_from_json([g["generator"] for g in data["J"]], ring)
    if k < 2:
        fail("k < 2")
        return result
    for g, entry in zip(J, data["J"]):
        prod = ring.one()
        for i in entry["factors"]:
            prod = prod * I[i]
        if len(entry["factors"]) != k or prod != g:
            fail(f"generator {g} is not the product of its recorded factors")
    full = [ring.one()]
    for _ in range(k):
        full = [f * g for f in full for g in I]
    gb_j = buchberger(J, ring=ring)
    if not all(gb_j.contains(p) for p in full):
        fail("J does not contain I^k")

    R = QuotientRing(ring, J)
    lower = []
    for idx in combinations_with_replacement(range(len(I)), k - 1):
        p = ring.one()
        for i in idx:
            p = p * I[i]
        lower.append(p)
    gb_lower = buchberger(lower + J, ring=ring)

    reps = [element_from_json(r["element"], R) for r in data["representatives"]]
    for r, z in zip(data["representatives"], reps):
        if z.is_zero():
            fail(f"representative l={r['l']} j1={r['j1']} is zero")
        if not differential(z, R).is_zero():
            fail(f"representative l={r['l']} j1={r['j1']} is not a cycle")
        if not all(gb_lower.contains(f) for f in z.components.values()):
            fail(f"representative l={r['l']} j1={r['j1']} is not in I^{k - 1} K(R)")
    result.checked["representatives"] = len(reps)

    pairs = 0
    for a in range(len(reps)):
        for b in range(a, len(reps)):
            pairs += 1
            if not wedge(reps[a], reps[b], R).is_zero():
                fail(f"product of representatives {a} and {b} is nonzero")
    result.checked["products"] = pairs

    stored = {(l, d): n for l, d, n in data["homology"]}
    groups: dict[tuple[int, int], list[KoszulElement]] = {}
    for r, z in zip(data["representatives"], reps):
        d = z.internal_degree(ring)
        if z.degree != r["l"] or d is None or d != r["internal_degree"]:
            fail(f"representative l={r['l']} j1={r['j1']} is not homogeneous of the recorded degrees")
            continue
        groups.setdefault((z.degree, d), []).append(z)
    top = max((d for _, d in stored), default=0) + sum(ring.weights)
    window = {(l, d) for l in range(1, ring.n + 1) for d in range(top + 1)}
    for key in sorted(set(stored) | set(groups) | window):
        l, d = key
        zs = groups.get(key, [])
        actual = _homology_dim(R, l, d)
        if not actual and not zs and key not in stored:
            continue
        if actual != stored.get(key, 0) or len(zs) != actual:
            fail(f"H_{l} in degree {d}: dimension {actual}, stored {stored.get(key, 0)}, {len(zs)} representatives")
            continue
        # independence modulo boundaries: rank(boundaries + reps) - rank(boundaries) == len(reps)
        tgt = {key2: i for i, key2 in enumerate(_basis(R, l, d))}
        brows = _differential_matrix(R, l + 1, d)[1] if l + 1 <= ring.n else []
        zrows = []
        for z in zs:
            row = [Fraction(0)] * len(tgt)
            for A, f in z.components.items():
                for m, c in f.items():
                    row[tgt[(A, m)]] = c
            zrows.append(row)
        if integer_rank(brows + zrows) - integer_rank(brows) != len(zs):
            fail(f"representatives of H_{l} in degree {d} are dependent modulo boundaries")

    series = data.get("series")
    if series is None:
        fail("no series comparison stored")
    else:
        p = series["poincare"]["coefficients"]
        totals = {}
        for (l, d), n in stored.items():
            totals[l] = totals.get(l, 0) + n
        bound = []
        for i in range(len(p)):
            c = comb(ring.n, i) if i <= ring.n else 0
            c += sum(h * bound[i - l - 1] for l, h in totals.items() if i - l - 1 >= 0)
            bound.append(c)
        if bound != series["bound"]["coefficients"]:
            fail("stored Serre bound does not match the stored homology dimensions")
        if p != bound or not series["poincare"]["complete"]:
            fail("Poincaré series and Serre bound differ")
    return result
