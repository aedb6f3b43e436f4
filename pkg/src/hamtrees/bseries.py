"""Coefficient maps of B-series and checks of the canonical, hamiltonian and sign conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .algebra import xtilde
from .polyfield import ElementaryDifferentials
from .trees import (
    FreeTree,
    RootedTree,
    butcher,
    epsilon,
    format_tree,
    free_trees_upto,
    is_superfluous,
    parse_tree,
    project,
    rooted_trees_upto,
    rootings,
    symmetry_factor,
)


class UndefinedCoefficientError(LookupError):
    def __init__(self, trees: Iterable[RootedTree]):
        self.trees = sorted(set(trees))
        shown = " ".join(format_tree(t) for t in self.trees)
        super().__init__(f"undefined coefficient(s): {shown}")


class SignInconsistencyError(ValueError):
    pass


@dataclass
class CoefficientMap:
    """The linear form alpha of a B-series.

    Trees missing from ``terms`` are undefined, which is not the same as zero.
    """

    terms: dict[RootedTree, Fraction] = field(default_factory=dict)
    empty_coefficient: Fraction = Fraction(0)

    def __post_init__(self):
        self.terms = {t: Fraction(c) for t, c in self.terms.items()}
        self.empty_coefficient = Fraction(self.empty_coefficient)

    def __getitem__(self, t: RootedTree) -> Fraction:
        try:
            return self.terms[t]
        except KeyError:
            raise UndefinedCoefficientError([t]) from None

    def __contains__(self, t: RootedTree) -> bool:
        return t in self.terms

    @property
    def colors(self) -> int:
        """Number of colours needed to cover every key."""
        return 1 + max((c for t in self.terms for c in t.colors), default=0)

    def require(self, trees: Iterable[RootedTree]) -> None:
        missing = [t for t in trees if t not in self.terms]
        if missing:
            raise UndefinedCoefficientError(missing)

    def format(self) -> str:
        lines = [f"empty {self.empty_coefficient}\n"]
        lines += [f"{format_tree(t)} {self.terms[t]}\n" for t in sorted(self.terms)]
        return "".join(lines)


@dataclass
class FreeCoefficientMap:
    """``alpha(tau_*)`` for non-superfluous free trees; absent trees count as zero."""

    terms: dict[FreeTree, Fraction] = field(default_factory=dict)
    empty_coefficient: Fraction = Fraction(0)

    def __post_init__(self):
        bad = [t for t in self.terms if is_superfluous(t)]
        if bad:
            raise ValueError(f"superfluous keys not allowed: {' '.join(map(format_tree, bad))}")
        self.terms = {t: Fraction(c) for t, c in self.terms.items() if c}
        self.empty_coefficient = Fraction(self.empty_coefficient)

    def format(self) -> str:
        lines = [f"empty {self.empty_coefficient}\n"]
        lines += [f"{format_tree(t)} {self.terms[t]}\n" for t in sorted(self.terms)]
        return "".join(lines)


def parse_coefficients(text: str) -> CoefficientMap:
    """Parse ``<tree> <rational>`` lines; the key ``empty`` sets alpha of the empty tree."""
    terms: dict[RootedTree, Fraction] = {}
    empty = Fraction(0)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.rpartition(" ")
        key = key.strip()
        try:
            coeff = Fraction(value)
            if key == "empty":
                empty = coeff
                continue
            tree = parse_tree(key)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if not isinstance(tree, RootedTree):
            raise ValueError(f"line {lineno}: coefficient keys are rooted trees")
        if tree in terms and terms[tree] != coeff:
            raise ValueError(f"line {lineno}: conflicting coefficient for {format_tree(tree)}")
        terms[tree] = coeff
    return CoefficientMap(terms, empty)


@dataclass(frozen=True)
class Violation:
    left: RootedTree | FreeTree
    right: RootedTree | FreeTree
    lhs: Fraction
    rhs: Fraction

    def format(self) -> str:
        return f"VIOLATION {format_tree(self.left)} {format_tree(self.right)} lhs={self.lhs} rhs={self.rhs}"


@dataclass
class Report:
    condition: str
    checked: int
    violations: list[Violation]

    @property
    def passed(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = [v.format() for v in self.violations]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict} checked={self.checked} violations={len(self.violations)} condition={self.condition}")
        return "\n".join(lines) + "\n"


def _pairs(n: int, colors: int) -> list[tuple[RootedTree, RootedTree]]:
    """Unordered pairs ``s <= t`` with ``|s| + |t| <= n``, ordered by (|s|+|t|, s, t)."""
    trees = rooted_trees_upto(n - 1, colors, cap=n) if n >= 2 else []
    pairs = [(s, t) for i, s in enumerate(trees) for t in trees[i:] if s.size + t.size <= n]
    pairs.sort(key=lambda p: (p[0].size + p[1].size, p[0]._key, p[1]._key))
    return pairs


def _check_pairs(alpha: CoefficientMap, n: int, condition: str, rhs) -> Report:
    pairs = _pairs(n, alpha.colors)
    alpha.require({t for s, u in pairs for t in (s, u, butcher(s, u), butcher(u, s))})
    violations = []
    for s, t in pairs:
        lhs = alpha[butcher(s, t)] + alpha[butcher(t, s)]
        r = rhs(s, t)
        if lhs != r:
            violations.append(Violation(s, t, lhs, r))
    return Report(condition, len(pairs), violations)


def check_hamiltonian_condition(alpha: CoefficientMap, n: int) -> Report:
    """Pairs with ``alpha(s o t) + alpha(t o s) != 0``."""
    if alpha.empty_coefficient != 0:
        raise ValueError("the hamiltonian condition needs alpha(empty) = 0")
    return _check_pairs(alpha, n, "hamiltonian", lambda s, t: Fraction(0))


def check_canonical_condition(alpha: CoefficientMap, n: int) -> Report:
    """Pairs with ``alpha(s o t) + alpha(t o s) != alpha(s) alpha(t)``."""
    return _check_pairs(alpha, n, "canonical", lambda s, t: alpha[s] * alpha[t])


def check_sign_consistency(alpha: CoefficientMap, n: int) -> Report:
    """Rootings with ``alpha(tau_v) != eps(v, tau) alpha(tau_*)``.

    Violations are reported as (rooting, free tree).
    """
    frees = free_trees_upto(n, alpha.colors, cap=n)
    alpha.require(t for tau in frees for t in rootings(tau))
    violations = []
    checked = 0
    for tau in frees:
        seen = set()
        for v, t in enumerate(rootings(tau)):
            if t in seen:
                continue
            seen.add(t)
            checked += 1
            expected = epsilon(v, tau) * alpha[tau.rep]
            if alpha[t] != expected:
                violations.append(Violation(t, tau, alpha[t], expected))
    return Report("signs", checked, violations)


def compress(alpha: CoefficientMap, n: int) -> FreeCoefficientMap:
    """Regroup a sign-consistent map by free trees, keeping ``alpha(tau_*)``."""
    report = check_sign_consistency(alpha, n)
    if not report.passed:
        raise SignInconsistencyError(report.format().strip())
    terms = {tau: alpha[tau.rep] for tau in free_trees_upto(n, alpha.colors, cap=n) if not is_superfluous(tau)}
    return FreeCoefficientMap(terms, alpha.empty_coefficient)


def expand(beta: FreeCoefficientMap, n: int, colors: int | None = None) -> CoefficientMap:
    """Rebuild ``alpha(tau_v) = eps(v, tau) beta(tau)`` on every rooted tree up to ``n`` vertices."""
    if colors is None:
        colors = 1 + max((c for tau in beta.terms for c in tau.colors), default=0)
    terms: dict[RootedTree, Fraction] = {}
    for t in rooted_trees_upto(n, colors, cap=n):
        tau = project(t)
        coeff = beta.terms.get(tau, Fraction(0))
        v = rootings(tau).index(t)
        terms[t] = epsilon(v, tau) * coeff
    return CoefficientMap(terms, beta.empty_coefficient)


def free_bseries_truncated(beta: FreeCoefficientMap, assignment, y0: Sequence[Rational], order: int) -> list[tuple[Fraction, ...]]:
    """B-series regrouped over free trees: ``h^k`` gets ``sum beta(tau)/sym(tau_*) F(xtilde(tau))(y0)``."""
    F = assignment if isinstance(assignment, ElementaryDifferentials) else ElementaryDifferentials(assignment)
    y0 = tuple(Fraction(x) for x in y0)
    out = [tuple(beta.empty_coefficient * x for x in y0)]
    for k in range(1, order + 1):
        acc = [Fraction(0)] * F.dim
        for tau, b in beta.terms.items():
            if tau.size != k:
                continue
            value = F(xtilde(tau))(y0)
            w = b / symmetry_factor(tau.rep)
            acc = [s + w * x for s, x in zip(acc, value)]
        out.append(tuple(acc))
    return out


# ---------------------------------------------------------------------------
# Runge-Kutta elementary weights


@dataclass(frozen=True)
class ButcherTableau:
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        A = tuple(tuple(Fraction(x) for x in row) for row in self.A)
        b = tuple(Fraction(x) for x in self.b)
        s = len(b)
        if s == 0 or len(A) != s or any(len(row) != s for row in A):
            raise ValueError(f"tableau needs an {s}x{s} matrix A for {s} weights")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def stages(self) -> int:
        return len(self.b)


MIDPOINT = ButcherTableau(((Fraction(1, 2),),), (1,))
EULER = ButcherTableau(((0,),), (1,))
BACKWARD_EULER = ButcherTableau(((1,),), (1,))
TRAPEZOIDAL = ButcherTableau(((0, 0), (Fraction(1, 2), Fraction(1, 2))), (Fraction(1, 2), Fraction(1, 2)))

TABLEAUX = {
    "midpoint": MIDPOINT,
    "euler": EULER,
    "backward-euler": BACKWARD_EULER,
    "trapezoidal": TRAPEZOIDAL,
}


def parse_tableau(text: str) -> ButcherTableau:
    """Rows of A followed by the row b, each as whitespace-separated rationals."""
    rows = [
        [Fraction(x) for x in line.split()]
        for line in (raw.split("#", 1)[0].strip() for raw in text.splitlines())
        if line
    ]
    if len(rows) < 2:
        raise ValueError("tableau needs at least one row of A and the weights b")
    return ButcherTableau(tuple(map(tuple, rows[:-1])), tuple(rows[-1]))


def _stage_values(tab: ButcherTableau, t: RootedTree) -> list[Fraction]:
    if t.color != 0:
        raise ValueError("elementary weights are defined for one-colour trees only")
    g = [Fraction(1)] * tab.stages
    for c in t.children:
        inner = _stage_values(tab, c)
        g = [gi * sum(a * x for a, x in zip(row, inner)) for gi, row in zip(g, tab.A)]
    return g


def rk_elementary_weights(tab: ButcherTableau, t: RootedTree) -> Fraction:
    """``Phi(t) = sum_i b_i g_i(t)`` with ``g(B+(t_1..t_k)) = prod_j A g(t_j)`` stagewise."""
    return sum((b * g for b, g in zip(tab.b, _stage_values(tab, t))), start=Fraction(0))


def rk_coefficient_map(tab: ButcherTableau, n: int) -> CoefficientMap:
    """Elementary weights on every one-colour tree up to ``n`` vertices, with alpha(empty) = 1."""
    return CoefficientMap({t: rk_elementary_weights(tab, t) for t in rooted_trees_upto(n, 1, cap=n)}, Fraction(1))
