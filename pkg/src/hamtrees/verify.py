"""Exhaustive verification drivers for the rooted/free tree identities.

Each driver returns a ``VerifyResult`` with per-size tallies. Drivers that
iterate over pairs or triples accept ``workers``; results are merged in input
order, so output does not depend on the worker count.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import diamond, jacobiator, lie_bracket, xtilde
from .poly import Polynomial
from .polyfield import (
    ElementaryDifferentials,
    default_test_hamiltonian,
    elementary_hamiltonian,
    hamiltonian_vf,
    poisson,
)
from .trees import (
    FreeTree,
    butcher,
    format_tree,
    free_trees_upto,
    is_superfluous,
    maximizing_vertices,
    project,
    root_at,
    rooting_count,
    rootings,
    superfluous_by_maximizers,
    superfluous_witness,
    symmetry_factor,
)


@dataclass
class VerifyResult:
    name: str
    unit: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    tallies: Counter = field(default_factory=Counter)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def format(self) -> str:
        lines = [f"size={k} {self.unit}={v}" for k, v in sorted(self.tallies.items())]
        lines += self.notes
        lines += [f"FAILED {f}" for f in self.failures]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict} {self.unit}={self.cases} failures={len(self.failures)} result={self.name}")
        return "\n".join(lines) + "\n"


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _pair_label(*trees) -> str:
    return " ".join(format_tree(t) for t in trees)


def _theorem4_case(pair: tuple[FreeTree, FreeTree]) -> str | None:
    sigma, tau = pair
    d = diamond(sigma, tau)
    if any(is_superfluous(u) for u, _ in d):
        return f"{_pair_label(sigma, tau)}: product has a superfluous term"
    if (is_superfluous(sigma) or is_superfluous(tau)) and d:
        return f"{_pair_label(sigma, tau)}: product of a superfluous tree is nonzero"
    if xtilde(d) != lie_bracket(xtilde(sigma), xtilde(tau)):
        return f"{_pair_label(sigma, tau)}: xtilde(diamond) != bracket of xtilde images"
    return None


def theorem4(n: int, colors: int = 1, workers: int = 1, cap: int | None = None) -> VerifyResult:
    """``xtilde(s <> t) == [xtilde(s), xtilde(t)]`` for all free pairs with ``|s| + |t| <= n``."""
    frees = free_trees_upto(max(n - 1, 1), colors, cap)
    pairs = [(s, t) for s, t in itertools.product(frees, repeat=2) if s.size + t.size <= n]
    res = VerifyResult("theorem4", "pairs", len(pairs))
    for (s, t), err in zip(pairs, _map(_theorem4_case, pairs, workers)):
        res.tallies[s.size + t.size] += 1
        if err:
            res.failures.append(err)
    return res


def _antisymmetry_case(pair) -> str | None:
    s, t = pair
    if diamond(s, t) + diamond(t, s):
        return f"{_pair_label(s, t)}: s<>t + t<>s != 0"
    return None


def antisymmetry(n: int, colors: int = 1, workers: int = 1, cap: int | None = None) -> VerifyResult:
    frees = free_trees_upto(max(n - 1, 1), colors, cap)
    pairs = [(s, t) for s, t in itertools.product(frees, repeat=2) if s.size + t.size <= n]
    res = VerifyResult("antisymmetry", "pairs", len(pairs))
    for (s, t), err in zip(pairs, _map(_antisymmetry_case, pairs, workers)):
        res.tallies[s.size + t.size] += 1
        if err:
            res.failures.append(err)
    return res


def _jacobi_case(triple) -> str | None:
    if jacobiator(diamond, *triple):
        return f"{_pair_label(*triple)}: cyclic sum nonzero"
    return None


def jacobi(n: int, colors: int = 1, workers: int = 1, cap: int | None = None) -> VerifyResult:
    """Jacobi identity of the diamond product on all ordered triples with total size ``<= n``."""
    frees = free_trees_upto(max(n - 2, 1), colors, cap)
    triples = [x for x in itertools.product(frees, repeat=3) if sum(t.size for t in x) <= n]
    res = VerifyResult("jacobi", "triples", len(triples))
    for x, err in zip(triples, _map(_jacobi_case, triples, workers)):
        res.tallies[sum(t.size for t in x)] += 1
        if err:
            res.failures.append(err)
    return res


def lemma1(n: int, colors: int = 1, cap: int | None = None) -> VerifyResult:
    """Edge-split superfluous test against the maximizer oracle, plus the witness and adjacency claims."""
    frees = free_trees_upto(n, colors, cap)
    res = VerifyResult("lemma1", "trees", len(frees))
    superfluous = Counter()
    for tau in frees:
        res.tallies[tau.size] += 1
        label = format_tree(tau)
        fast = is_superfluous(tau)
        if fast != superfluous_by_maximizers(tau):
            res.failures.append(f"{label}: edge-split and maximizer tests disagree")
            continue
        top = maximizing_vertices(tau)
        if not fast:
            if len(top) != 1:
                res.failures.append(f"{label}: canonical rooting not unique")
            continue
        superfluous[tau.size] += 1
        s = superfluous_witness(tau)
        v, w = top if len(top) == 2 else (None, None)
        if len(top) != 2 or tau.distance(v, w) != 1:
            res.failures.append(f"{label}: maximizing vertices are not the two ends of an edge")
        elif root_at(tau, v) != butcher(s, s) or root_at(tau, w) != butcher(s, s):
            res.failures.append(f"{label}: witness does not give s o s")
    res.notes.append("superfluous " + " ".join(f"size{k}={v}" for k, v in sorted(superfluous.items())))
    res.notes.append(f"superfluous total={sum(superfluous.values())}")
    return res


def prop2(n: int, colors: int = 1, cap: int | None = None) -> VerifyResult:
    """``N(t, tau) sym(t) = sym(tau_*)`` on non-superfluous trees and ``sum_t N(t, tau) = |tau|``."""
    frees = free_trees_upto(n, colors, cap)
    res = VerifyResult("prop2", "trees", len(frees))
    for tau in frees:
        res.tallies[tau.size] += 1
        distinct = set(rootings(tau))
        counts = {t: rooting_count(t, tau) for t in distinct}
        if sum(counts.values()) != tau.size:
            res.failures.append(f"{format_tree(tau)}: rooting counts do not sum to |tau|")
        if any(project(t) != tau for t in distinct):
            res.failures.append(f"{format_tree(tau)}: a rooting projects elsewhere")
        if is_superfluous(tau):
            continue
        sym_star = symmetry_factor(tau.rep)
        for t, count in counts.items():
            if count * symmetry_factor(t) != sym_star:
                res.failures.append(f"{format_tree(tau)} {format_tree(t)}: N*sym(t)={count * symmetry_factor(t)} != {sym_star}")
    return res


def prop5(n: int, hamiltonians: Sequence[Polynomial] | None = None, require_zero: bool = False) -> VerifyResult:
    """``{H(s), H(t)} - H(s <> t)`` is constant for every free pair with ``|s| + |t| <= n``.

    Nonzero constants are listed; with ``require_zero`` they count as failures.
    """
    if not hamiltonians:
        hamiltonians = [default_test_hamiltonian()]
    F = ElementaryDifferentials([hamiltonian_vf(H) for H in hamiltonians])
    nvars = F.dim
    frees = free_trees_upto(max(n - 1, 1), len(hamiltonians))
    cache: dict[FreeTree, Polynomial] = {}

    def H(tau: FreeTree) -> Polynomial:
        if tau not in cache:
            cache[tau] = elementary_hamiltonian(tau, F)
        return cache[tau]

    pairs = [(s, t) for s, t in itertools.product(frees, repeat=2) if s.size + t.size <= n]
    res = VerifyResult("prop5", "pairs", len(pairs))
    offsets = 0
    for s, t in pairs:
        res.tallies[s.size + t.size] += 1
        rhs = Polynomial.zero(nvars)
        for u, c in diamond(s, t):
            rhs = rhs + H(u) * c
        diff = poisson(H(s), H(t)) - rhs
        if not diff.is_constant():
            res.failures.append(f"{_pair_label(s, t)}: difference {diff} is not constant")
        elif diff:
            offsets += 1
            msg = f"{_pair_label(s, t)}: constant offset {diff.constant_term}"
            (res.failures if require_zero else res.notes).append(msg)
    res.notes.append(f"nonzero constant offsets={offsets}")
    return res


DRIVERS = {
    "theorem4": theorem4,
    "antisymmetry": antisymmetry,
    "jacobi": jacobi,
    "lemma1": lemma1,
    "prop2": prop2,
    "prop5": prop5,
}
