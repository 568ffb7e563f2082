"""Problem documents: a small ``key: value`` format.

::

    # comments start with '#'
    ring: x, y, z
    weights: 1, 1, 2
    ideal: x^2 + y^2, x*y
    power: 2
    truncate: 5

Optional keys ``command`` and ``expect`` (pass/fail) are used by the corpus
runner.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .parsing import PolynomialSyntaxError, parse_polynomial
from .poly import Polynomial, RingSpec, is_homogeneous, weighted_degree

KEYS = ("ring", "weights", "ideal", "power", "truncate", "command", "expect")
COMMANDS = ("resolve", "koszul", "golod-certify", "poincare")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ProblemError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class ProblemSpec:
    ring: RingSpec
    ideal: tuple[Polynomial, ...]
    ideal_text: tuple[str, ...]
    power: int = 1
    truncate: int = 5
    command: str | None = None
    expect: str = "pass"
    source: str | None = None


def _split_values(value: str, start_col: int):
    """Comma separated items with their 1-based starting columns."""
    out = []
    pos = 0
    for part in value.split(","):
        stripped = part.strip()
        lead = len(part) - len(part.lstrip())
        out.append((stripped, start_col + pos + lead))
        pos += len(part) + 1
    return out


def _int_value(value: str, key: str, line: int, col: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ProblemError(f"{key} must be an integer, got {value!r}", line, col) from None


def parse_problem(text: str, source: str | None = None) -> ProblemSpec:
    fields: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ProblemError("expected 'key: value'", lineno, 1)
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key not in KEYS:
            raise ProblemError(f"unknown key {key!r}", lineno, 1)
        if key in fields:
            raise ProblemError(f"duplicate key {key!r}", lineno, 1)
        col = len(line) - len(value) + 1
        fields[key] = (value, lineno, col)

    if "ring" not in fields:
        raise ProblemError("missing 'ring' declaration")
    value, ln, col = fields["ring"]
    names = []
    for name, c in _split_values(value, col):
        if not _NAME.match(name):
            raise ProblemError(f"invalid variable name {name!r}", ln, c)
        if name in names:
            raise ProblemError(f"duplicate variable {name!r}", ln, c)
        names.append(name)

    if "weights" in fields:
        value, ln, col = fields["weights"]
        items = _split_values(value, col)
        if len(items) != len(names):
            raise ProblemError(f"{len(items)} weights for {len(names)} variables", ln, col)
        weights = []
        for w, c in items:
            a = _int_value(w, "weight", ln, c)
            if a <= 0:
                raise ProblemError(f"weight must be positive, got {a}", ln, c)
            weights.append(a)
    else:
        weights = [1] * len(names)
    ring = RingSpec(tuple(weights), tuple(names))

    gens, texts = [], []
    if "ideal" in fields:
        value, ln, col = fields["ideal"]
        if value.strip():
            for item, c in _split_values(value, col):
                try:
                    f = parse_polynomial(item, ring)
                except PolynomialSyntaxError as exc:
                    msg = str(exc).split(" at column")[0]
                    raise ProblemError(msg, ln, c + exc.pos) from None
                if is_homogeneous(f) is None:
                    lead, _ = f.leading_term()
                    d = weighted_degree(lead, ring)
                    bad = next(m for m, _ in f.terms() if weighted_degree(m, ring) != d)
                    term = Polynomial.monomial(ring, bad)
                    raise ProblemError(f"generator {item!r} is not homogeneous: term {term} has degree "
                                       f"{weighted_degree(bad, ring)}, leading term has degree {d}", ln, c)
                gens.append(f)
                texts.append(item)

    power, truncate = 1, 5
    if "power" in fields:
        value, ln, col = fields["power"]
        power = _int_value(value.strip(), "power", ln, col)
        if power < 1:
            raise ProblemError("power must be at least 1", ln, col)
    if "truncate" in fields:
        value, ln, col = fields["truncate"]
        truncate = _int_value(value.strip(), "truncate", ln, col)
        if truncate < 0:
            raise ProblemError("truncate must be non-negative", ln, col)
    command = None
    if "command" in fields:
        value, ln, col = fields["command"]
        command = value.strip()
        if command not in COMMANDS:
            raise ProblemError(f"unknown command {command!r}", ln, col)
    expect = "pass"
    if "expect" in fields:
        value, ln, col = fields["expect"]
        expect = value.strip()
        if expect not in ("pass", "fail"):
            raise ProblemError("expect must be 'pass' or 'fail'", ln, col)
    return ProblemSpec(ring, tuple(gens), tuple(texts), power, truncate, command, expect, source)


def load_problem(path: str | Path) -> ProblemSpec:
    path = Path(path)
    return parse_problem(path.read_text(), source=str(path))
