"""JSON payloads for resolutions, homology, series and certificates (schema 1).

Polynomials are written in the text grammar accepted by the parser, Koszul
elements as lists of ``[subset, polynomial]`` pairs with 0-based subsets in
increasing order, rationals as ``"p/q"`` strings.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import __version__
from .golod import GolodCertificate
from .koszul import KoszulElement, QuotientRing
from .parsing import parse_polynomial
from .poly import Polynomial, RingSpec
from .resolution import Resolution, betti_table
from .series import SeriesComparison, SeriesTruncation

SCHEMA = 1
TOOL = {"name": "golodlab", "version": __version__}


def ring_to_json(ring: RingSpec) -> dict:
    return {"variables": list(ring.names), "weights": list(ring.weights)}


def ring_from_json(data: dict) -> RingSpec:
    return RingSpec(tuple(data["weights"]), tuple(data["variables"]))


def polys_to_json(polys: Sequence[Polynomial]) -> list[str]:
    return [str(p) for p in polys]


def polys_from_json(items: Sequence[str], ring: RingSpec) -> list[Polynomial]:
    return [parse_polynomial(s, ring) for s in items]


def element_to_json(z: KoszulElement) -> dict:
    return {"degree": z.degree, "components": [[list(A), str(f)] for A, f in z.components.items()]}


def element_from_json(data: dict, R: QuotientRing) -> KoszulElement:
    comps = {tuple(A): parse_polynomial(f, R.ring) for A, f in data["components"]}
    return KoszulElement.build(data["degree"], comps, R)


def resolution_to_json(res: Resolution) -> dict:
    return {
        "ranks": res.betti_numbers,
        "shifts": [list(F.shifts) for F in res.modules],
        "matrices": [[[str(a) for a in row] for row in phi.matrix] for phi in res.maps],
        "betti": [[i, d, b] for (i, d), b in betti_table(res).items()],
    }


def series_to_json(s: SeriesTruncation) -> dict:
    return {"label": s.label, "coefficients": list(s.coefficients), "complete": s.complete}


def comparison_to_json(c: SeriesComparison) -> dict:
    return {
        "poincare": series_to_json(c.poincare),
        "bound": series_to_json(c.bound),
        "equal": c.equal,
        "bounded": c.bounded,
        "first_difference": c.first_difference,
        "summary": c.describe(),
    }


def certificate_to_json(cert: GolodCertificate) -> dict:
    return {
        "ring": ring_to_json(cert.ring),
        "I": polys_to_json(cert.I),
        "k": cert.k,
        "J": [{"generator": str(g), "factors": list(f)} for g, f in zip(cert.J, cert.J_factors)],
        "resolution": resolution_to_json(cert.resolution),
        "resolution_ok": cert.resolution_ok,
        "homology": [[l, d, n] for (l, d), n in sorted(cert.homology_dims.items())],
        "dims_match": cert.dims_match,
        "representatives": [
            {
                "l": c.degree,
                "j1": c.j1,
                "internal_degree": c.internal_degree,
                "coefficients": [[list(ch), str(v)] for ch, v in c.coefficients.items()],
                "element": element_to_json(c.element),
                "fallback": c.fallback,
                "is_cycle": ok,
                "in_power": mem,
            }
            for c, ok, mem in zip(cert.cycles, cert.cycle_ok, cert.membership)
        ],
        "classes_form_basis": cert.classes_form_basis,
        "products": [[p.first, p.second, p.zero, p.vacuous] for p in cert.products],
        "massey": "gamma(h_1..h_m) = 0 for m >= 2" if cert.massey_trivial else "not established",
        "series": comparison_to_json(cert.series) if cert.series is not None else None,
        "flags": list(cert.flags),
        "failures": cert.failures(),
        "verdict": "pass" if cert.verdict else "fail",
    }


def fraction_from_json(s: str) -> Fraction:
    return Fraction(s)


def make_report(command: str, problem: dict, verdict: str, payload: dict, seconds: float) -> dict:
    return {
        "schema": SCHEMA,
        "tool": dict(TOOL),
        "command": command,
        "input": problem,
        "verdict": verdict,
        "payload": payload,
        "timing": {"seconds": round(seconds, 3)},
    }


def canonical(report: dict) -> dict:
    """The deterministic part of a report (everything except timing)."""
    return {k: v for k, v in report.items() if k != "timing"}
