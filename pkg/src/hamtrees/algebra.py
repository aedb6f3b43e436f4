"""Linear combinations of trees, grafting, the signed rooting map and the diamond product."""

from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .trees import (
    FreeTree,
    RootedTree,
    epsilon,
    format_tree,
    graft_at,
    is_superfluous,
    link_with_map,
    parse_tree,
    rooting,
)

Tree = Union[RootedTree, FreeTree]


class Combination:
    """Finite formal sum of trees with exact rational coefficients.

    All trees in one combination are of the same kind, rooted or free. Zero
    coefficients are never stored; iteration follows the Murua order.
    """

    __slots__ = ("_terms", "kind")

    def __init__(self, terms: Mapping[Tree, Rational] | Iterable[tuple[Tree, Rational]] = (), kind: type | None = None):
        acc: dict[Tree, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for tree, coeff in items:
            if kind is None:
                kind = type(tree)
            elif not isinstance(tree, kind):
                raise TypeError("cannot mix rooted and free trees in one combination")
            acc[tree] = acc.get(tree, Fraction(0)) + Fraction(coeff)
        self._terms = {t: c for t, c in acc.items() if c}
        self.kind = kind

    @classmethod
    def of(cls, tree: Tree, coeff: Rational = 1) -> Combination:
        return cls([(tree, coeff)])

    @classmethod
    def zero(cls, kind: type | None = None) -> Combination:
        return cls((), kind)

    def __iter__(self) -> Iterator[tuple[Tree, Fraction]]:
        for t in sorted(self._terms):
            yield t, self._terms[t]

    def items(self) -> list[tuple[Tree, Fraction]]:
        return list(self)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, tree: Tree) -> Fraction:
        return self._terms.get(tree, Fraction(0))

    def support(self) -> set:
        return set(self._terms)

    def _kind_with(self, other: Combination) -> type | None:
        if self.kind and other.kind and self.kind is not other.kind and self._terms and other._terms:
            raise TypeError("cannot mix rooted and free combinations")
        return self.kind or other.kind

    def __add__(self, other: Combination) -> Combination:
        if not isinstance(other, Combination):
            return NotImplemented
        kind = self._kind_with(other)
        return Combination(list(self._terms.items()) + list(other._terms.items()), kind)

    def __neg__(self) -> Combination:
        return Combination({t: -c for t, c in self._terms.items()}, self.kind)

    def __sub__(self, other: Combination) -> Combination:
        if not isinstance(other, Combination):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Rational) -> Combination:
        if isinstance(scalar, Combination):
            return NotImplemented
        return Combination({t: c * scalar for t, c in self._terms.items()}, self.kind)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Combination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Combination(0)"
        return "Combination(" + " + ".join(f"{c}*{format_tree(t)}" for t, c in self) + ")"

    def format(self) -> str:
        """One ``<rational> <tree>`` line per term."""
        return "".join(f"{c} {format_tree(t)}\n" for t, c in self)


def as_combination(x: Tree | Combination) -> Combination:
    return x if isinstance(x, Combination) else Combination.of(x)


def parse_combination(text: str) -> Combination:
    terms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        coeff, _, tree = line.partition(" ")
        try:
            terms.append((parse_tree(tree), Fraction(coeff)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return Combination(terms)


def _require(x: Combination, kind: type, what: str) -> None:
    if x and x.kind is not kind:
        raise TypeError(f"{what} needs {kind.__name__} combinations")


# ---------------------------------------------------------------------------
# rooted trees


@functools.lru_cache(maxsize=None)
def _graft_all(s: RootedTree, t: RootedTree) -> Combination:
    return Combination([(graft_at(s, t, v), 1) for v in range(t.size)])


def prelie(x: Tree | Combination, y: Tree | Combination) -> Combination:
    """Bilinear grafting product ``x -> y``, summing over every vertex of ``y``."""
    x, y = as_combination(x), as_combination(y)
    _require(x, RootedTree, "prelie")
    _require(y, RootedTree, "prelie")
    acc: dict = {}
    for s, a in x:
        for t, b in y:
            for u, c in _graft_all(s, t)._terms.items():
                acc[u] = acc.get(u, 0) + a * b * c
    return Combination(acc, RootedTree)


def lie_bracket(x: Tree | Combination, y: Tree | Combination) -> Combination:
    return prelie(x, y) - prelie(y, x)


def associator(a, b, c) -> Combination:
    """``a -> (b -> c) - (a -> b) -> c``."""
    return prelie(a, prelie(b, c)) - prelie(prelie(a, b), c)


# ---------------------------------------------------------------------------
# free trees


@functools.lru_cache(maxsize=None)
def _xtilde_tree(tau: FreeTree) -> Combination:
    if is_superfluous(tau):
        return Combination.zero(RootedTree)
    return Combination([(rooting(tau, v)[0], epsilon(v, tau)) for v in range(tau.size)], RootedTree)


def xtilde(x: FreeTree | Combination) -> Combination:
    """Signed sum of all rootings, ``sum_v eps(v, tau) tau_v``, extended linearly."""
    x = as_combination(x)
    _require(x, FreeTree, "xtilde")
    out = Combination.zero(RootedTree)
    for tau, c in x:
        out = out + _xtilde_tree(tau) * c
    return out


@functools.lru_cache(maxsize=None)
def _diamond_trees(sigma: FreeTree, tau: FreeTree) -> Combination:
    # Every link is built and signed, superfluous ones included; they drop out
    # through the zero sign of the linked tree.
    m = sigma.size
    acc: dict = {}
    for v in range(sigma.size):
        ev = epsilon(v, sigma)
        for w in range(tau.size):
            linked, where = link_with_map(sigma, v, tau, w)
            delta = epsilon(where[m + w], linked) * ev * epsilon(w, tau)
            if delta:
                acc[linked] = acc.get(linked, 0) + delta
    return Combination(acc, FreeTree)


def diamond(x: FreeTree | Combination, y: FreeTree | Combination) -> Combination:
    """Bilinear signed linking product of free trees."""
    x, y = as_combination(x), as_combination(y)
    _require(x, FreeTree, "diamond")
    _require(y, FreeTree, "diamond")
    acc: dict = {}
    for s, a in x:
        for t, b in y:
            for u, c in _diamond_trees(s, t)._terms.items():
                acc[u] = acc.get(u, 0) + a * b * c
    return Combination(acc, FreeTree)


def quotient_superfluous(x: FreeTree | Combination) -> Combination:
    """Drop superfluous terms: the projection onto the span of non-superfluous trees."""
    x = as_combination(x)
    _require(x, FreeTree, "quotient_superfluous")
    return Combination([(t, c) for t, c in x if not is_superfluous(t)], FreeTree)


def jacobiator(bracket, a, b, c) -> Combination:
    return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
