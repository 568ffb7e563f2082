"""Sparse multivariate polynomials over the rationals with a positive weight grading.

A :class:`RingSpec` fixes the number of variables, their weights and their
display names.  A :class:`Polynomial` is an immutable map from exponent tuples
to nonzero :class:`~fractions.Fraction` coefficients.  Variable indices are
0-based everywhere in the Python API.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring K[x_1..x_n] with deg x_i = weights[i] > 0."""

    weights: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        weights = tuple(int(a) for a in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise ValueError("a ring needs at least one variable")
        if any(a <= 0 for a in weights):
            raise ValueError(f"weights must be positive, got {weights}")
        if self.names is None:
            names = ("x", "y", "z") if len(weights) <= 3 else ()
            names = names[: len(weights)] or tuple(f"x{i + 1}" for i in range(len(weights)))
            object.__setattr__(self, "names", names)
        else:
            names = tuple(self.names)
            if len(names) != len(weights):
                raise ValueError("one name per variable required")
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate variable names in {names}")
            object.__setattr__(self, "names", names)

    @classmethod
    def standard(cls, n: int, names: Iterable[str] | None = None) -> "RingSpec":
        return cls((1,) * n, tuple(names) if names is not None else None)

    @property
    def n(self) -> int:
        return len(self.weights)

    def var(self, i: int) -> "Polynomial":
        return Polynomial.variable(self, i)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.n)]

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)


def weighted_degree(m: Exponent, ring: RingSpec) -> int:
    if len(m) != ring.n:
        raise ValueError(f"monomial {m} has {len(m)} exponents, ring has {ring.n} variables")
    return sum(e * a for e, a in zip(m, ring.weights))


def revlex_key(m: Exponent) -> tuple[int, ...]:
    # larger key = larger monomial among monomials of equal degree
    return tuple(-e for e in reversed(m))


def monomial_key(m: Exponent, weights: tuple[int, ...]) -> tuple:
    """Sort key for weighted degree reverse lexicographic order."""
    return (sum(e * a for e, a in zip(m, weights)), revlex_key(m))


def monomials_of_degree(d: int, weights: tuple[int, ...]) -> list[Exponent]:
    """All exponent vectors of weighted degree ``d``, largest first."""
    out: list[Exponent] = []
    n = len(weights)

    def rec(i, remaining, prefix):
        if i == n - 1:
            if remaining % weights[i] == 0:
                out.append(prefix + (remaining // weights[i],))
            return
        for e in range(remaining // weights[i], -1, -1):
            rec(i + 1, remaining - e * weights[i], prefix + (e,))

    if d >= 0:
        rec(0, d, ())
    out.sort(key=lambda m: monomial_key(m, weights), reverse=True)
    return out


class _EveryDegree:
    def __repr__(self):
        return "EVERY_DEGREE"


#: returned by :func:`is_homogeneous` for the zero polynomial
EVERY_DEGREE = _EveryDegree()


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Exponent, object] | None = None):
        self.ring = ring
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != ring.n:
                    raise ValueError(f"exponent {m} does not match ring with {ring.n} variables")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # terms must already be canonical: tuple keys, nonzero Fraction values
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Polynomial":
        return cls(ring, {(0,) * ring.n: c})

    @classmethod
    def variable(cls, ring: RingSpec, i: int) -> "Polynomial":
        if not 0 <= i < ring.n:
            raise IndexError(f"variable index {i} out of range for {ring.n} variables")
        return cls._raw(ring, {tuple(int(j == i) for j in range(ring.n)): Fraction(1)})

    @classmethod
    def monomial(cls, ring: RingSpec, m: Exponent, c=1) -> "Polynomial":
        return cls(ring, {m: c})

    # -- inspection ---------------------------------------------------------
    def items(self):
        return self._terms.items()

    def coefficient(self, m: Exponent) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms sorted by the global monomial order, leading term first."""
        w = self.ring.weights
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0], w), reverse=True)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        w = self.ring.weights
        m = max(self._terms, key=lambda e: monomial_key(e, w))
        return m, self._terms[m]

    def degree(self) -> int | None:
        """Weighted degree if homogeneous and nonzero, else ``None``."""
        d = is_homogeneous(self)
        return d if isinstance(d, int) else None

    def max_degree(self) -> int:
        return max((weighted_degree(m, self.ring) for m in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.n, Fraction(0))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring, {m: c * v for m, v in self._terms.items()})

    def shift(self, m: Exponent, c=1) -> "Polynomial":
        """Multiply by the term ``c * x^m``."""
        c = Fraction(c)
        if not c:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(e, m)): c * v for e, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def is_homogeneous(f: Polynomial, ring: RingSpec | None = None):
    """Common weighted degree of the terms of ``f``.

    Returns ``None`` for a mixed polynomial and :data:`EVERY_DEGREE` for zero.
    """
    ring = ring or f.ring
    degs = {weighted_degree(m, ring) for m, _ in f.items()}
    if not degs:
        return EVERY_DEGREE
    if len(degs) > 1:
        return None
    return degs.pop()


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    n = f.ring.n
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for {n} variables")
    out = {}
    for m, c in f.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return Polynomial._raw(f.ring, out)


def euler_apply(f: Polynomial, ring: RingSpec | None = None) -> Polynomial:
    """Weighted Euler operator sum_i a_i x_i df/dx_i (equals deg(f) * f)."""
    ring = ring or f.ring
    if is_homogeneous(f, ring) is None:
        raise ValueError(f"{f} is not homogeneous")
    total = ring.zero()
    for i, a in enumerate(ring.weights):
        total = total + (ring.var(i) * partial_derivative(f, i)).scale(a)
    return total


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.names
    pieces = []
    for m, c in f.terms():
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
