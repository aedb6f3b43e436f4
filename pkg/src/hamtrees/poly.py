"""Sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables ``t1..tn`` is a dict from exponent tuples of
length ``n`` to nonzero ``Fraction`` coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Rational] | Iterable[tuple[Monomial, Rational]] = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        acc: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent {mono} for {nvars} variables")
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(c)
        self.nvars = nvars
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> Polynomial:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c: Rational, nvars: int) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, i: int, nvars: int) -> Polynomial:
        """The coordinate ``t_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable {i} out of range")
        return cls._raw(nvars, {tuple(int(j == i) for j in range(nvars)): Fraction(1)})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def diff(self, i: int) -> Polynomial:
        """Partial derivative in the 0-based variable ``i``."""
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1 :]] = c * e
        return Polynomial._raw(self.nvars, out)

    def __call__(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point of length {len(point)} for {self.nvars} variables")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def valuation(self) -> int | None:
        """Lowest total degree present, None for zero."""
        return min((sum(m) for m in self.terms), default=None)

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)


def format_polynomial(p: Polynomial) -> str:
    """``coeff * t1^e1*t2`` terms joined by `` + ``, highest degree first."""
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, key=lambda m: (-sum(m), tuple(-e for e in m))):
        factors = [f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(m) if e]
        coeff = str(p.terms[m])
        parts.append(f"{coeff} * {'*'.join(factors)}" if factors else coeff)
    return " + ".join(parts)


_FACTOR = re.compile(r"^t(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse ``1 * t1^2*t2 + -1/2 * t2^3``.

    Terms are separated by ``+``; a term is ``*``-separated factors, each a
    rational or ``t<i>[^<e>]``. ``nvars`` defaults to the highest index used.
    """
    raw_terms = []
    highest = 0
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    if not body.strip():
        raise ValueError("empty polynomial")
    for term in body.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        coeff = Fraction(1)
        powers: dict[int, int] = {}
        for factor in term.split("*"):
            factor = factor.strip()
            sign = 1
            while factor.startswith("-") and factor[1:2] == "t":
                sign, factor = -sign, factor[1:]
            match = _FACTOR.match(factor)
            if match:
                i = int(match.group(1))
                if i < 1:
                    raise ValueError(f"variables are numbered from t1, got {factor!r}")
                powers[i] = powers.get(i, 0) + int(match.group(2) or 1)
                highest = max(highest, i)
                coeff *= sign
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ValueError(f"cannot parse factor {factor!r} in {text!r}") from None
        raw_terms.append((coeff, powers))
    if nvars is None:
        nvars = highest
    elif highest > nvars:
        raise ValueError(f"t{highest} used but only {nvars} variables declared")
    return Polynomial(nvars, [(tuple(pw.get(i + 1, 0) for i in range(nvars)), c) for c, pw in raw_terms])
