"""Polynomial vector fields, hamiltonian calculus and elementary differentials.

The symplectic structure on R^{2r} is ``omega(x, y) = sum_i x_i y_{r+i} - x_{r+i} y_i``
and the hamiltonian field of ``H`` is ``{H, -}``:
``a_i = -dH/dt_{i+r}`` and ``a_{r+i} = dH/dt_i`` for ``i <= r``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from .algebra import Combination, xtilde
from .poly import Polynomial, format_polynomial, parse_polynomial
from .trees import FreeTree, RootedTree, enumerate_rooted, is_superfluous, symmetry_factor


class NotHamiltonianError(ValueError):
    pass


class VectorField:
    """``sum_i components[i] * d/dt_i`` with polynomial components."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = len(comps)
        if any(p.nvars != n for p in comps):
            raise ValueError(f"components of a field on R^{n} must be polynomials in {n} variables")
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> VectorField:
        return cls([Polynomial.zero(n)] * n)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def _check(self, other: VectorField) -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField(a + b for a, b in zip(self, other))

    def __sub__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField(a - b for a, b in zip(self, other))

    def __neg__(self) -> VectorField:
        return VectorField(-a for a in self)

    def __mul__(self, scalar: Rational) -> VectorField:
        return VectorField(a * scalar for a in self)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __call__(self, point: Sequence[Rational]) -> tuple[Fraction, ...]:
        return tuple(p(point) for p in self.components)

    def __repr__(self) -> str:
        return "VectorField([" + ", ".join(repr(format_polynomial(p)) for p in self) + "])"

    def is_zero(self) -> bool:
        return not any(self.components)

    def jacobian(self) -> list[list[Polynomial]]:
        """``J[j][i] = d a_j / d t_i``."""
        return [[a.diff(i) for i in range(self.dim)] for a in self]

    def format(self) -> str:
        return "".join(format_polynomial(p) + "\n" for p in self)


def parse_vector_field(text: str) -> VectorField:
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    return VectorField(parse_polynomial(ln, len(lines)) for ln in lines)


def parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(x.strip()) for x in text.split(","))


def format_point(point: Sequence[Fraction]) -> str:
    return ",".join(str(x) for x in point)


def derivative_along(f: VectorField, p: Polynomial) -> Polynomial:
    """``sum_i f_i dp/dt_i``."""
    out = Polynomial.zero(p.nvars)
    for i, fi in enumerate(f):
        if fi:
            out = out + fi * p.diff(i)
    return out


def vf_prelie(f: VectorField, g: VectorField) -> VectorField:
    """``(f |> g)_j = sum_i f_i d_i g_j``."""
    f._check(g)
    return VectorField(derivative_along(f, gj) for gj in g)


def vf_bracket(f: VectorField, g: VectorField) -> VectorField:
    return vf_prelie(f, g) - vf_prelie(g, f)


# ---------------------------------------------------------------------------
# symplectic calculus


def _half_dim(n: int) -> int:
    if n % 2:
        raise ValueError(f"symplectic calculus needs an even dimension, got {n}")
    return n // 2


def omega(x: Sequence, y: Sequence):
    """Standard symplectic form on R^{2r}; entries may be numbers or polynomials."""
    r = _half_dim(len(x))
    if len(y) != len(x):
        raise ValueError("dimension mismatch")
    return sum((x[i] * y[r + i] - x[r + i] * y[i] for i in range(r)), start=0)


def poisson(f: Polynomial, g: Polynomial) -> Polynomial:
    """``{f, g} = sum_i df/dt_i dg/dt_{i+r} - dg/dt_i df/dt_{i+r}``."""
    if f.nvars != g.nvars:
        raise ValueError("dimension mismatch")
    r = _half_dim(f.nvars)
    out = Polynomial.zero(f.nvars)
    for i in range(r):
        out = out + f.diff(i) * g.diff(i + r) - g.diff(i) * f.diff(i + r)
    return out


def hamiltonian_vf(H: Polynomial) -> VectorField:
    r = _half_dim(H.nvars)
    return VectorField([-H.diff(i + r) for i in range(r)] + [H.diff(i) for i in range(r)])


def _gradient_form(a: VectorField) -> list[Polynomial]:
    # Omega a, which is grad H whenever a = {H, -}.
    r = _half_dim(a.dim)
    return [a[r + i] for i in range(r)] + [-a[i] for i in range(r)]


def is_hamiltonian(a: VectorField) -> bool:
    """Exact test that ``Omega . Da`` is symmetric, i.e. ``Omega a`` is a closed 1-form."""
    g = _gradient_form(a)
    n = a.dim
    return all(g[i].diff(j) == g[j].diff(i) for i in range(n) for j in range(i + 1, n))


def extract_hamiltonian(a: VectorField) -> Polynomial:
    """The ``H`` with ``hamiltonian_vf(H) == a`` and ``H(0) == 0``."""
    if not is_hamiltonian(a):
        raise NotHamiltonianError("vector field is not hamiltonian")
    n = a.dim
    g = _gradient_form(a)
    # Radial homotopy: H(x) = sum_i x_i * int_0^1 g_i(s x) ds.
    terms: dict[tuple[int, ...], Fraction] = {}
    for i, gi in enumerate(g):
        for m, c in gi.terms.items():
            mono = m[:i] + (m[i] + 1,) + m[i + 1 :]
            terms[mono] = terms.get(mono, Fraction(0)) + c / (sum(m) + 1)
    return Polynomial(n, terms)


# ---------------------------------------------------------------------------
# elementary differentials and B-series

Assignment = Union[Mapping[int, VectorField], Sequence[VectorField], VectorField]


def _normalize_assignment(a: Assignment) -> dict[int, VectorField]:
    if isinstance(a, VectorField):
        a = {0: a}
    elif not isinstance(a, Mapping):
        a = dict(enumerate(a))
    if not a:
        raise ValueError("empty colour assignment")
    dims = {f.dim for f in a.values()}
    if len(dims) != 1:
        raise ValueError(f"assigned fields have different dimensions {sorted(dims)}")
    return dict(a)


class ElementaryDifferentials:
    """Evaluator of the pre-Lie morphism ``F`` sending the coloured leaf ``d`` to ``a_d``.

    Results for individual trees and partial derivatives of the assigned
    fields are cached, so reuse one instance across many trees.
    """

    def __init__(self, assignment: Assignment):
        self.assignment = _normalize_assignment(assignment)
        self.dim = next(iter(self.assignment.values())).dim
        self._trees: dict[RootedTree, VectorField] = {}
        self._partials: dict[tuple[int, tuple[int, ...]], VectorField] = {}

    @property
    def colors(self) -> int:
        keys = sorted(self.assignment)
        if keys != list(range(len(keys))):
            raise ValueError(f"colours must be 0..K-1, got {keys}")
        return len(keys)

    def field(self, color: int) -> VectorField:
        try:
            return self.assignment[color]
        except KeyError:
            raise KeyError(f"no vector field assigned to colour {color}") from None

    def _partial(self, color: int, idx: tuple[int, ...]) -> VectorField:
        key = (color, idx)
        got = self._partials.get(key)
        if got is None:
            if not idx:
                got = self.field(color)
            else:
                base = self._partial(color, idx[:-1])
                got = VectorField(p.diff(idx[-1]) for p in base)
            self._partials[key] = got
        return got

    def tree(self, t: RootedTree) -> VectorField:
        got = self._trees.get(t)
        if got is not None:
            return got
        n = self.dim
        if not t.children:
            got = self.field(t.color)
        else:
            kids = [self.tree(c) for c in t.children]
            comps = [Polynomial.zero(n) for _ in range(n)]
            # Full sum over ordered index tuples (i_1..i_k).
            for idx in itertools.product(range(n), repeat=len(kids)):
                weight = None
                for kid, i in zip(kids, idx):
                    if not kid[i]:
                        weight = None
                        break
                    weight = kid[i] if weight is None else weight * kid[i]
                if weight is None:
                    continue
                partial = self._partial(t.color, tuple(sorted(idx)))
                for j in range(n):
                    if partial[j]:
                        comps[j] = comps[j] + weight * partial[j]
            got = VectorField(comps)
        self._trees[t] = got
        return got

    def __call__(self, x: RootedTree | Combination) -> VectorField:
        if isinstance(x, RootedTree):
            return self.tree(x)
        if x and x.kind is not RootedTree:
            raise TypeError("elementary differentials are defined on rooted trees")
        out = VectorField.zero(self.dim)
        for t, c in x:
            out = out + self.tree(t) * c
        return out


def elementary_differential(x: RootedTree | Combination, assignment: Assignment | ElementaryDifferentials) -> VectorField:
    F = assignment if isinstance(assignment, ElementaryDifferentials) else ElementaryDifferentials(assignment)
    return F(x)


def bseries_truncated(alpha, assignment, y0: Sequence[Rational], order: int) -> list[tuple[Fraction, ...]]:
    """Coefficients of ``h^0..h^order`` of the B-series at ``y0``.

    ``alpha`` needs ``empty_coefficient`` and item lookup by rooted tree
    (raising ``KeyError`` when undefined), as provided by ``CoefficientMap``.
    """
    F = assignment if isinstance(assignment, ElementaryDifferentials) else ElementaryDifferentials(assignment)
    y0 = tuple(Fraction(x) for x in y0)
    if len(y0) != F.dim:
        raise ValueError(f"point of dimension {len(y0)} for fields on R^{F.dim}")
    out = [tuple(alpha.empty_coefficient * x for x in y0)]
    colors = F.colors
    for k in range(1, order + 1):
        acc = [Fraction(0)] * F.dim
        for t in enumerate_rooted(k, colors, cap=max(k, 1)):
            a = alpha[t]
            if not a:
                continue
            value = F.tree(t)(y0)
            w = Fraction(a) / symmetry_factor(t)
            acc = [s + w * v for s, v in zip(acc, value)]
        out.append(tuple(acc))
    return out


def elementary_hamiltonian(tau: FreeTree, assignment: Assignment | ElementaryDifferentials) -> Polynomial:
    """``H`` with ``{H, -} = F(xtilde(tau))`` and ``H(0) = 0``."""
    F = assignment if isinstance(assignment, ElementaryDifferentials) else ElementaryDifferentials(assignment)
    for color, f in F.assignment.items():
        if not is_hamiltonian(f):
            raise NotHamiltonianError(f"field assigned to colour {color} is not hamiltonian")
    if is_superfluous(tau):
        return Polynomial.zero(F.dim)
    return extract_hamiltonian(F(xtilde(tau)))


def hamiltonian_assignment(hamiltonians: Polynomial | Sequence[Polynomial]) -> ElementaryDifferentials:
    if isinstance(hamiltonians, Polynomial):
        hamiltonians = [hamiltonians]
    return ElementaryDifferentials([hamiltonian_vf(H) for H in hamiltonians])


DEFAULT_TEST_HAMILTONIAN = "1 * t1^2*t2 + 1 * t1*t2^2 + 1 * t2^3"


def default_test_hamiltonian() -> Polynomial:
    return parse_polynomial(DEFAULT_TEST_HAMILTONIAN, 2)
