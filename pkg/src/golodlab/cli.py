"""Command line front end.

    golodlab <command> <spec-file> [--truncate N] [--out report.json] [--full-degree-scan]

Exit codes: 0 success (or analysis finished), 1 mathematical failure,
2 input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .golod import golod_certificate
from .groebner import ideal_power
from .koszul import DimensionMismatch, QuotientRing, homology_basis
from .problem import ProblemError, ProblemSpec, load_problem
from .report import (certificate_to_json, comparison_to_json, element_to_json, make_report,
                     resolution_to_json, ring_to_json)
from .resolution import minimal_free_resolution, verify_resolution
from .series import default_budget, golod_by_series, poincare_truncation

log = logging.getLogger("golodlab")

COMMANDS = ("resolve", "koszul", "golod-certify", "poincare", "corpus")
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _analysed_ideal(spec: ProblemSpec):
    gens = [g for g in spec.ideal if not g.is_zero()]
    if spec.power == 1 or not gens:
        return gens
    return ideal_power(gens, spec.power)


def _problem_json(spec: ProblemSpec, truncate: int, full_scan: bool) -> dict:
    return {
        "ring": ring_to_json(spec.ring),
        "ideal": list(spec.ideal_text),
        "power": spec.power,
        "truncate": truncate,
        "full_degree_scan": full_scan,
    }


def run_command(spec: ProblemSpec, command: str, truncate: int | None = None,
                full_scan: bool = False) -> tuple[dict, int, str]:
    """Run one command; returns (report, exit code, human summary)."""
    N = spec.truncate if truncate is None else truncate
    start = time.perf_counter()
    ring = spec.ring
    lines = []
    if command == "golod-certify":
        if spec.power < 2:
            raise InputError("golod-certify needs power >= 2")
        if not any(not g.is_zero() for g in spec.ideal):
            raise InputError("golod-certify needs a nonzero ideal")
        try:
            cert = golod_certificate(spec.ideal, spec.power, N, ring, full_scan, budget=default_budget())
        except ValueError as exc:
            raise InputError(str(exc)) from None
        payload = certificate_to_json(cert)
        verdict = payload["verdict"]
        code = EXIT_OK if cert.verdict else EXIT_FAIL
        lines.append(f"J = I^{spec.power} with {len(cert.J)} minimal generators; Betti numbers "
                     f"{cert.resolution.betti_numbers}")
        lines.append(f"{len(cert.cycles)} Jacobian representatives, {len(cert.products)} products checked")
        if cert.series is not None:
            lines.append(cert.series.describe())
        lines.extend(f"failure: {f}" for f in cert.failures())
        lines.append(f"verdict: {verdict}")
    else:
        J = _analysed_ideal(spec)
        try:
            if J:
                res = minimal_free_resolution(J, ring=ring)
            else:
                res = minimal_free_resolution([], ring=ring)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if command == "resolve":
            report = verify_resolution(res)
            payload = {"resolution": resolution_to_json(res), "verified": report.ok, "failures": report.failures}
            verdict = "pass" if report.ok else "fail"
            code = EXIT_OK if report.ok else EXIT_FAIL
            lines.append(f"Betti numbers {res.betti_numbers}")
            lines.extend(f"beta_{i},{d} = {b}" for i, d, b in payload["resolution"]["betti"])
        elif command == "koszul":
            R = QuotientRing(ring, J)
            homology = []
            code, verdict = EXIT_OK, "report"
            for l in range(1, ring.n + 1):
                try:
                    hb = homology_basis(l, R, res, full_scan)
                except DimensionMismatch as exc:
                    code, verdict = EXIT_FAIL, "fail"
                    lines.append(f"failure: {exc}")
                    continue
                for d in sorted(hb.representatives):
                    homology.append({"l": l, "d": d, "dimension": hb.dimensions[d],
                                     "basis": [element_to_json(z) for z in hb.representatives[d]]})
                    lines.append(f"dim H_{l}(R)_{d} = {hb.dimensions[d]}")
            payload = {"homology": homology}
        elif command == "poincare":
            try:
                cmp = golod_by_series(J, N, ring, budget=default_budget())
            except ValueError:
                # J not inside m^2: report the Poincaré side only
                cmp = None
            if cmp is None:
                p = poincare_truncation(J, N, ring, budget=default_budget())
                payload = {"poincare": list(p.coefficients), "complete": p.complete}
                lines.append(f"Poincaré coefficients {list(p.coefficients)}")
            else:
                payload = comparison_to_json(cmp)
                lines.append(f"Poincaré   {list(cmp.poincare.coefficients)}")
                lines.append(f"Serre bound {list(cmp.bound.coefficients)}")
                lines.append(cmp.describe())
            code, verdict = EXIT_OK, "report"
        else:
            raise InputError(f"unknown command {command!r}")
    seconds = time.perf_counter() - start
    report = make_report(command, _problem_json(spec, N, full_scan), verdict, payload, seconds)
    return report, code, "\n".join(lines)


def _corpus_item(args):
    path, truncate, full_scan = args
    try:
        spec = load_problem(path)
        command = spec.command or "golod-certify"
        report, code, _ = run_command(spec, command, truncate, full_scan)
    except (ProblemError, InputError) as exc:
        return {"file": path, "command": None, "outcome": "input-error", "expected": None,
                "as_expected": False, "error": str(exc)}
    if command == "golod-certify":
        outcome = report["verdict"]
    elif command == "poincare":
        outcome = "pass" if report["payload"].get("equal") else "fail"
    else:
        outcome = "pass" if code == EXIT_OK else "fail"
    return {"file": path, "command": command, "outcome": outcome, "expected": spec.expect,
            "as_expected": outcome == spec.expect}


def run_corpus(directory: str | Path, truncate: int | None = None, full_scan: bool = False,
               workers: int | None = None) -> tuple[dict, int, str]:
    start = time.perf_counter()
    files = sorted(str(p) for p in Path(directory).glob("*.golod"))
    if not files:
        raise InputError(f"no *.golod files in {directory}")
    jobs = [(f, truncate, full_scan) for f in files]
    if workers == 1:
        results = [_corpus_item(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_corpus_item, jobs))
    ok = all(r["as_expected"] for r in results)
    lines = [f"{'ok ' if r['as_expected'] else 'BAD'} {Path(r['file']).name}: {r['outcome']}"
             f" (expected {r['expected']})" for r in results]
    lines.append(f"{sum(r['as_expected'] for r in results)}/{len(results)} as expected")
    report = make_report("corpus", {"directory": str(directory), "truncate": truncate,
                                    "full_degree_scan": full_scan},
                         "pass" if ok else "fail", {"results": results}, time.perf_counter() - start)
    return report, EXIT_OK if ok else EXIT_FAIL, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="golodlab", description="Golod certificates for powers of ideals")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("spec", help="problem file, or a directory of *.golod files for 'corpus'")
    parser.add_argument("--truncate", type=int, default=None, help="series truncation order N")
    parser.add_argument("--out", default=None, help="write the JSON report here")
    parser.add_argument("--full-degree-scan", action="store_true",
                        help="scan every internal degree when computing Koszul homology")
    parser.add_argument("--workers", type=int, default=None, help="corpus worker processes")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.truncate is not None and args.truncate < 0:
        print("error: --truncate must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        default_budget()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "corpus":
            report, code, summary = run_corpus(args.spec, args.truncate, args.full_degree_scan, args.workers)
        else:
            spec = load_problem(args.spec)
            report, code, summary = run_command(spec, args.command, args.truncate, args.full_degree_scan)
    except (ProblemError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(summary)
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
        log.info("report written to %s", args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
