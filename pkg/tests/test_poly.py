from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hamtrees.poly import Polynomial, format_polynomial, parse_polynomial

NV = 2
SYMS = sympy.symbols("t1 t2")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monomials = st.tuples(*[st.integers(0, 3)] * NV)
polys = st.dictionaries(monomials, coeffs, max_size=5).map(lambda d: Polynomial(NV, d))


def to_sympy(p: Polynomial):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(SYMS, m):
            term *= s**e
        expr += term
    return sympy.expand(expr)


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_arithmetic_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - to_sympy(p) + to_sympy(q)) == 0


@settings(max_examples=60, deadline=None)
@given(polys)
def test_derivative_matches_sympy(p):
    for i, s in enumerate(SYMS):
        assert sympy.expand(to_sympy(p.diff(i)) - sympy.diff(to_sympy(p), s)) == 0


@settings(max_examples=60, deadline=None)
@given(polys, st.tuples(coeffs, coeffs))
def test_evaluation_matches_sympy(p, point):
    expected = to_sympy(p).subs(dict(zip(SYMS, [sympy.Rational(x.numerator, x.denominator) for x in point])))
    assert p(point) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


@settings(max_examples=60, deadline=None)
@given(polys)
def test_text_round_trip(p):
    assert parse_polynomial(format_polynomial(p), NV) == p


def test_format_example():
    p = parse_polynomial("1 * t1^2*t2 + -1/2 * t2^3")
    assert p.nvars == 2
    assert p.terms == {(2, 1): 1, (0, 3): Fraction(-1, 2)}
    assert format_polynomial(p) == "1 * t1^2*t2 + -1/2 * t2^3"
    assert format_polynomial(Polynomial.zero(3)) == "0"


def test_parse_variants():
    assert parse_polynomial("t1*t1 + 3", 1) == Polynomial(1, {(2,): 1, (0,): 3})
    assert parse_polynomial("-t2", 2) == Polynomial(2, {(0, 1): -1})
    assert parse_polynomial("2 * t1 * 1/2", 2) == Polynomial.var(0, 2)
    with pytest.raises(ValueError):
        parse_polynomial("t3", 2)
    with pytest.raises(ValueError):
        parse_polynomial("t1 + + t2")
    with pytest.raises(ValueError):
        parse_polynomial("x1")
    with pytest.raises(ValueError):
        parse_polynomial("t0")


def test_basic_properties():
    x, y = Polynomial.var(0, 2), Polynomial.var(1, 2)
    p = (x + y) ** 3
    assert p.degree == 3 and p.valuation == 3
    assert p.constant_term == 0
    assert (p + 5).constant_term == 5 and not p.is_constant()
    assert Polynomial.constant(7, 2).is_constant()
    assert Polynomial.zero(2).degree == -1
    assert p - p == 0
    with pytest.raises(ValueError):
        x + Polynomial.var(0, 3)
    with pytest.raises(ValueError):
        Polynomial(2, {(1,): 1})
