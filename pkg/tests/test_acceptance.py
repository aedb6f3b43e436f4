"""Acceptance suite: one group of tests per criterion, all at exact equality.

Expected values come from reference computations in this file or in
``oracles.py`` (AHU canonical strings, a counting recurrence, sympy calculus),
never from the code under test.
"""

import itertools
import math
import random
import time
from collections import Counter
from fractions import Fraction

import pytest
import sympy

import oracles
from hamtrees import verify
from hamtrees.algebra import associator, diamond, prelie, xtilde
from hamtrees.bseries import (
    EULER,
    MIDPOINT,
    CoefficientMap,
    FreeCoefficientMap,
    check_canonical_condition,
    compress,
    expand,
    free_bseries_truncated,
    rk_coefficient_map,
)
from hamtrees.poly import Polynomial, parse_polynomial
from hamtrees.polyfield import (
    ElementaryDifferentials,
    VectorField,
    bseries_truncated,
    default_test_hamiltonian,
    elementary_hamiltonian,
    hamiltonian_assignment,
    is_hamiltonian,
    poisson,
    vf_prelie,
)
from hamtrees.trees import (
    butcher,
    enumerate_free,
    enumerate_rooted,
    epsilon,
    free_trees_upto,
    is_superfluous,
    leaf,
    maximizing_vertices,
    preorder,
    project,
    root_at,
    rooted_trees_upto,
    rootings,
    superfluous_by_maximizers,
    superfluous_witness,
    symmetry_factor,
)

SYMS = sympy.symbols("t1 t2")
H_TEST = "1 * t1^2*t2 + 1 * t1*t2^2 + 1 * t2^3"


# ---------------------------------------------------------------------------
# reference helpers


def _ahu_sym(children, colors, v):
    """AHU string and automorphism count of the subtree at ``v``."""
    subs = [_ahu_sym(children, colors, c) for c in children.get(v, [])]
    sym = 1
    for _, s in subs:
        sym *= s
    for mult in Counter(code for code, _ in subs).values():
        sym *= math.factorial(mult)
    return f"[{colors[v]}" + "".join(sorted(code for code, _ in subs)) + "]", sym


def rooted_reference(t):
    """(AHU string, automorphism count) of a package rooted tree."""
    rows = preorder(t)
    children = {}
    for v, (_, parent, _) in enumerate(rows):
        if parent >= 0:
            children.setdefault(parent, []).append(v)
    return _ahu_sym(children, [c for c, _, _ in rows], 0)


def free_reference_rootings(tau):
    """(AHU string, automorphism count) of the rooting at each vertex of a free tree."""
    adj = [list(a) for a in tau.adjacency]
    out = []
    for root in range(tau.size):
        children, seen, stack = {}, {root}, [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    children.setdefault(v, []).append(w)
                    stack.append(w)
        out.append(_ahu_sym(children, list(tau.colors), root))
    return out


def reference_superfluous(tau):
    """Some edge whose removal leaves two halves with equal AHU strings."""
    adj = [set(a) for a in tau.adjacency]
    for a, b in tau.edges:
        halves = []
        for root, other in ((a, b), (b, a)):
            children, seen, stack = {}, {root, other}, [root]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        children.setdefault(v, []).append(w)
                        stack.append(w)
            halves.append(_ahu_sym(children, list(tau.colors), root)[0])
        if halves[0] == halves[1]:
            return True
    return False


def to_sympy(p: Polynomial):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(SYMS, m):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def to_poly(expr):
    poly = sympy.Poly(expr, *SYMS)
    return Polynomial(2, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def sympy_elementary_differentials(field, trees):
    """Elementary differentials by the recursive multilinear-derivative formula, in sympy."""
    f = [to_sympy(p) for p in field]
    out = {}

    def F(t):
        if t in out:
            return out[t]
        args = [F(c) for c in t.children]
        comp = []
        for fj in f:
            acc = sympy.Integer(0)
            for idx in itertools.product(range(len(SYMS)), repeat=len(args)):
                term = fj
                for i in idx:
                    term = sympy.diff(term, SYMS[i])
                for a, i in zip(args, idx):
                    term *= a[i]
                acc += term
            comp.append(sympy.expand(acc))
        out[t] = comp
        return comp

    for t in trees:
        F(t)
    return out


def sympy_prelie(x, y):
    return [sympy.expand(sum(x[i] * sympy.diff(yj, SYMS[i]) for i in range(len(SYMS)))) for yj in y]


def sign_consistent_map(n, seed, colors=1):
    rng = random.Random(seed)
    beta = {
        tau: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        for tau in free_trees_upto(n, colors)
        if not is_superfluous(tau)
    }
    terms = {}
    for tau in free_trees_upto(n, colors):
        for v, t in enumerate(rootings(tau)):
            terms[t] = epsilon(v, tau) * beta.get(tau, 0)
    return CoefficientMap(terms, Fraction(rng.randint(-2, 2))), beta


def assert_passed(result):
    assert result.passed, result.format()


# ---------------------------------------------------------------------------
# 1


@pytest.mark.criterion(1, "xtilde(s<>t) = [xtilde(s), xtilde(t)], one colour |s|+|t|<=9 under 2 min, two colours <=7")
def test_c1_bracket_morphism_one_colour():
    start = time.perf_counter()
    result = verify.theorem4(9, 1, workers=1)
    elapsed = time.perf_counter() - start
    assert_passed(result)
    frees = [t for k in range(1, 9) for t in enumerate_free(k)]
    assert result.cases == sum(1 for s, t in itertools.product(frees, repeat=2) if s.size + t.size <= 9)
    assert elapsed < 120


@pytest.mark.criterion(1, "xtilde(s<>t) = [xtilde(s), xtilde(t)], one colour |s|+|t|<=9 under 2 min, two colours <=7")
def test_c1_bracket_morphism_two_colours():
    assert_passed(verify.theorem4(7, 2))


# ---------------------------------------------------------------------------
# 2


@pytest.mark.criterion(2, "diamond antisymmetry |s|+|t|<=9 and Jacobi |s|+|t|+|u|<=9")
def test_c2_antisymmetry():
    assert_passed(verify.antisymmetry(9))


@pytest.mark.criterion(2, "diamond antisymmetry |s|+|t|<=9 and Jacobi |s|+|t|+|u|<=9")
def test_c2_jacobi():
    result = verify.jacobi(9)
    assert_passed(result)
    frees = free_trees_upto(7)
    assert result.cases == sum(1 for x in itertools.product(frees, repeat=3) if sum(t.size for t in x) <= 9)


# ---------------------------------------------------------------------------
# 3


@pytest.mark.criterion(3, "superfluous edge-split test = maximizer oracle for |tau|<=10, witnesses, exactly 4 with <=6 vertices")
def test_c3_superfluous_tests_agree():
    assert_passed(verify.lemma1(10))
    for tau in free_trees_upto(10):
        fast = is_superfluous(tau)
        assert fast == superfluous_by_maximizers(tau) == reference_superfluous(tau)
        if fast:
            s = superfluous_witness(tau)
            assert [v for v in range(tau.size) if root_at(tau, v) == butcher(s, s)] == sorted(maximizing_vertices(tau))
            assert len(maximizing_vertices(tau)) == 2


@pytest.mark.criterion(3, "superfluous edge-split test = maximizer oracle for |tau|<=10, witnesses, exactly 4 with <=6 vertices")
def test_c3_four_superfluous_up_to_six():
    assert sum(1 for tau in free_trees_upto(6) if is_superfluous(tau)) == 4


# ---------------------------------------------------------------------------
# 4


@pytest.mark.criterion(4, "N(t,tau) sym(t) = sym(tau_*) for non-superfluous |tau|<=10; sum_t N(t,tau) = |tau|")
def test_c4_rooting_counts():
    assert_passed(verify.prop2(10))
    for tau in free_trees_upto(10):
        reference = free_reference_rootings(tau)
        counts = Counter(code for code, _ in reference)
        sym = dict(reference)
        assert sum(counts.values()) == tau.size
        # Package rootings and symmetry factors agree with the AHU reference vertex by vertex.
        assert [rooted_reference(t) for t in rootings(tau)] == reference
        assert all(symmetry_factor(t) == rooted_reference(t)[1] for t in rootings(tau))
        if is_superfluous(tau):
            continue
        star = rooted_reference(tau.rep)[0]
        for code, count in counts.items():
            assert count * sym[code] == sym[star]


# ---------------------------------------------------------------------------
# 5


@pytest.mark.criterion(5, "rooted counts n=1..10 match a recurrence; free counts match projection dedup")
def test_c5_rooted_counts():
    for colors, top in ((1, 10), (2, 6), (3, 4)):
        expected = oracles.rooted_counts(top, colors)
        assert [len(enumerate_rooted(n, colors)) for n in range(1, top + 1)] == expected


@pytest.mark.criterion(5, "rooted counts n=1..10 match a recurrence; free counts match projection dedup")
def test_c5_free_counts():
    for colors, top in ((1, 10), (2, 6)):
        for n in range(1, top + 1):
            projected = {project(t) for t in enumerate_rooted(n, colors)}
            assert len(enumerate_free(n, colors)) == len(projected)
            assert set(enumerate_free(n, colors)) == projected
    assert [len(enumerate_free(n)) for n in range(2, 8)] == [oracles.brute_free_count(n) for n in range(2, 8)]


# ---------------------------------------------------------------------------
# 6

FIELD = VectorField(
    [
        parse_polynomial("t1^2 + -2 * t1*t2 + 1/3 * t2 + 1", 2),
        parse_polynomial("3 * t2^2 + 1/2 * t1*t2 + -1 * t1", 2),
    ]
)


@pytest.mark.criterion(6, "F(s->t) = F(s) |> F(t) for |s|+|t|<=5 on a degree-2 field; associator symmetry |a|+|b|+|c|<=6")
def test_c6_prelie_morphism():
    trees = rooted_trees_upto(4)
    F = ElementaryDifferentials(FIELD)
    ref = sympy_elementary_differentials(list(FIELD), rooted_trees_upto(5))
    for t, comps in ref.items():
        assert [to_sympy(p) for p in F(t)] == comps
    pairs = 0
    for s, t in itertools.product(trees, repeat=2):
        if s.size + t.size > 5:
            continue
        pairs += 1
        lhs = F(prelie(s, t))
        assert lhs == vf_prelie(F(s), F(t))
        assert [to_sympy(p) for p in lhs] == sympy_prelie(ref[s], ref[t])
    assert pairs == sum(1 for s, t in itertools.product(trees, repeat=2) if s.size + t.size <= 5)


@pytest.mark.criterion(6, "F(s->t) = F(s) |> F(t) for |s|+|t|<=5 on a degree-2 field; associator symmetry |a|+|b|+|c|<=6")
def test_c6_associator_symmetry():
    trees = rooted_trees_upto(4)
    for a, b, c in itertools.product(trees, repeat=3):
        if a.size + b.size + c.size <= 6:
            assert associator(a, b, c) == associator(b, a, c)


# ---------------------------------------------------------------------------
# 7


@pytest.mark.criterion(7, "Omega * Jacobian(F(xtilde(tau))) symmetric for every free |tau|<=6")
def test_c7_xtilde_images_hamiltonian():
    F = hamiltonian_assignment(parse_polynomial(H_TEST, 2))
    for tau in free_trees_upto(6):
        field = F(xtilde(tau))
        assert is_hamiltonian(field)
        J = sympy.Matrix(2, 2, lambda i, j: sympy.diff(to_sympy(field[i]), SYMS[j]))
        omega = sympy.Matrix([[0, 1], [-1, 0]])
        product = (omega * J).applyfunc(sympy.expand)
        assert product == product.T


# ---------------------------------------------------------------------------
# 8


@pytest.mark.criterion(8, "{H(s), H(t)} - H(s<>t) = 0 for |s|+|t|<=6 with the valuation-3 test hamiltonian")
def test_c8_poisson_morphism():
    H = parse_polynomial(H_TEST, 2)
    assert H == default_test_hamiltonian()
    assert_passed(verify.prop5(6, [H], require_zero=True))
    F = hamiltonian_assignment(H)
    frees = free_trees_upto(5)
    for tau in frees:
        # H(tau) generates F(xtilde(tau)): (-dH/dt2, dH/dt1), via sympy gradients.
        field = F(xtilde(tau))
        h = to_sympy(elementary_hamiltonian(tau, F))
        assert [sympy.expand(-sympy.diff(h, SYMS[1])), sympy.expand(sympy.diff(h, SYMS[0]))] == [
            to_sympy(p) for p in field
        ]
    for s, t in itertools.product(frees, repeat=2):
        if s.size + t.size > 6:
            continue
        hs, ht = to_sympy(elementary_hamiltonian(s, F)), to_sympy(elementary_hamiltonian(t, F))
        bracket = sympy.expand(
            sympy.diff(hs, SYMS[0]) * sympy.diff(ht, SYMS[1]) - sympy.diff(hs, SYMS[1]) * sympy.diff(ht, SYMS[0])
        )
        rhs = sum((to_sympy(elementary_hamiltonian(u, F)) * sympy.Rational(c.numerator, c.denominator) for u, c in diamond(s, t)), sympy.Integer(0))
        assert sympy.expand(bracket - rhs) == 0
        assert poisson(elementary_hamiltonian(s, F), elementary_hamiltonian(t, F)) == to_poly(rhs)


# ---------------------------------------------------------------------------
# 9


@pytest.mark.criterion(9, "expand(compress(alpha)) = alpha up to n=6; rooted and free B-series agree termwise to h^5")
def test_c9_expand_compress_identity():
    for seed, colors, n in [(0, 1, 6), (1, 1, 6), (2, 1, 6), (3, 2, 5)]:
        alpha, beta = sign_consistent_map(n, seed, colors)
        compressed = compress(alpha, n)
        assert compressed.terms == {k: v for k, v in beta.items() if v}
        assert expand(compressed, n, colors).terms == alpha.terms
        assert expand(compressed, n, colors).empty_coefficient == alpha.empty_coefficient


@pytest.mark.criterion(9, "expand(compress(alpha)) = alpha up to n=6; rooted and free B-series agree termwise to h^5")
def test_c9_bseries_agree():
    F = hamiltonian_assignment(parse_polynomial(H_TEST, 2))
    for seed, y0 in [(4, (1, 2)), (5, (Fraction(-2, 3), Fraction(1, 5)))]:
        alpha, beta = sign_consistent_map(5, seed)
        rooted = bseries_truncated(alpha, F, y0, 5)
        free = free_bseries_truncated(FreeCoefficientMap(beta, alpha.empty_coefficient), F, y0, 5)
        assert rooted == free
        # Independent rooted sum with reference symmetry factors.
        for k in range(1, 6):
            acc = [Fraction(0), Fraction(0)]
            for t in enumerate_rooted(k):
                w = alpha[t] / rooted_reference(t)[1]
                acc = [a + w * x for a, x in zip(acc, F(t)(y0))]
            assert rooted[k] == tuple(acc)


# ---------------------------------------------------------------------------
# 10


def midpoint_reference(t):
    return Fraction(1, 2) ** (t.size - 1)


def euler_reference(t):
    return Fraction(1) if t.size == 1 else Fraction(0)


@pytest.mark.criterion(10, "midpoint passes the canonical condition for |s|+|t|<=6; Euler fails exactly where it should, (.,.) minimal")
def test_c10_midpoint_passes():
    alpha = rk_coefficient_map(MIDPOINT, 6)
    assert all(alpha[t] == midpoint_reference(t) for t in rooted_trees_upto(6))
    report = check_canonical_condition(alpha, 6)
    assert report.passed and report.checked > 0


@pytest.mark.criterion(10, "midpoint passes the canonical condition for |s|+|t|<=6; Euler fails exactly where it should, (.,.) minimal")
def test_c10_euler_violations():
    alpha = rk_coefficient_map(EULER, 6)
    assert all(alpha[t] == euler_reference(t) for t in rooted_trees_upto(6))
    trees = rooted_trees_upto(5)
    expected = set()
    for s, t in itertools.combinations_with_replacement(trees, 2):
        if s.size + t.size <= 6:
            lhs = euler_reference(butcher(s, t)) + euler_reference(butcher(t, s))
            if lhs != euler_reference(s) * euler_reference(t):
                expected.add(frozenset((s, t)))
    report = check_canonical_condition(alpha, 6)
    assert {frozenset((v.left, v.right)) for v in report.violations} == expected
    assert expected == {frozenset((leaf(),))}
    first = report.violations[0]
    assert (first.left, first.right, first.lhs, first.rhs) == (leaf(), leaf(), 0, 1)
