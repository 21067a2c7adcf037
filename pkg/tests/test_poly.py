from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import multipolys, rationals, to_sympy, uni_to_sympy, unipolys
from minitwistor.poly import (
    MultiPoly,
    UniPoly,
    as_fraction,
    discriminant,
    gcd,
    resultant,
    squarefree_decomposition,
    uni_discriminant,
    uni_resultant,
)

x, y = MultiPoly.vars("x", "y")


def test_rejects_floats_and_decimals():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(ValueError):
        as_fraction("0.5")
    with pytest.raises(ValueError):
        as_fraction("1e3")
    assert as_fraction("-3/6") == Fraction(-1, 2)


def test_canonical_text_is_grlex_descending():
    p = 3 * x ** 2 * y - y + Fraction(1, 2) * x ** 3 + 7
    assert p.to_text() == "1/2 * x^3 + 3 * x^2 * y + -1 * y + 7"
    assert MultiPoly.const(0, ("x",)).to_text() == "0"
    assert (x - x).to_text() == "0"


def test_json_terms_are_stable():
    p = x * y - 2
    assert p.to_json_terms() == p.to_json_terms()
    assert p.to_json_terms()[0]["coeff"] == "1"


def test_merge_keeps_left_order():
    p = MultiPoly.var("b") + MultiPoly.var("a")
    assert p.variables == ("b", "a")


def test_small_resultant_and_discriminant():
    a, b, c, w = MultiPoly.vars("a", "b", "c", "w")
    assert resultant(x ** 2 - a, x - b, "x") == b ** 2 - a
    quad = c * x ** 2 - w * x + c
    assert discriminant(quad, "x") == w ** 2 - 4 * c ** 2


@given(multipolys(), multipolys(), multipolys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.const(0)


@given(multipolys(), multipolys(), rationals(), rationals())
def test_substitution_is_a_homomorphism(p, q, a, b):
    point = {"x": a, "y": b}
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    lin = {"x": y + 1}
    assert (p * q).substitute(lin) == p.substitute(lin) * q.substitute(lin)


@given(multipolys(max_terms=3, max_deg=2), multipolys(max_terms=3, max_deg=2))
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(multipolys(max_terms=4, max_deg=3), multipolys(max_terms=4, max_deg=2))
def test_resultant_matches_sympy(p, q):
    if p.degree("x") < 1 or q.degree("x") < 1:
        return
    X = sympy.Symbol("x")
    ours = to_sympy(resultant(p, q, "x"))
    theirs = sympy.resultant(to_sympy(p), to_sympy(q), X)
    assert sympy.expand(ours - theirs) == 0


@given(multipolys(max_terms=4, max_deg=3))
def test_discriminant_matches_sympy(p):
    if p.degree("x") < 2:
        return
    X = sympy.Symbol("x")
    assert sympy.expand(to_sympy(discriminant(p, "x")) - sympy.discriminant(to_sympy(p), X)) == 0


@given(unipolys(3, 1), unipolys(3, 1), unipolys(3, 1))
def test_resultant_multiplicative(p, q, r):
    assert uni_resultant(p * q, r) == uni_resultant(p, r) * uni_resultant(q, r)


@given(st.lists(st.tuples(rationals(), st.integers(1, 3)), min_size=1, max_size=4), rationals())
def test_squarefree_decomposition(roots, lc):
    if lc == 0:
        return
    p = UniPoly([lc])
    for r, m in roots:
        p = p * UniPoly([-r, 1]) ** m
    parts = squarefree_decomposition(p)
    assert all(m > 0 for _, m in parts)
    for (f, _), (g, _) in combinations(parts, 2):
        assert gcd(f, g).degree == 0
    rebuilt = UniPoly([p.lc])
    for f, m in parts:
        rebuilt = rebuilt * f ** m
    assert rebuilt == p
    X = sympy.Symbol("x")
    _, theirs = sympy.sqf_list(uni_to_sympy(p, X))
    assert sorted(m for _, m in parts) == sorted(m for _, m in theirs)


@given(unipolys(4, 1), unipolys(4, 1))
def test_gcd_matches_sympy(p, q):
    X = sympy.Symbol("x")
    g = gcd(p * q, p)
    theirs = sympy.Poly(sympy.gcd(uni_to_sympy(p * q, X), uni_to_sympy(p, X)), X).monic()
    assert sympy.expand(uni_to_sympy(g, X) - theirs.as_expr()) == 0


@given(unipolys(4, 2))
def test_uni_discriminant_matches_sympy(p):
    X = sympy.Symbol("x")
    assert uni_discriminant(p) == Fraction(str(sympy.discriminant(uni_to_sympy(p, X), X)))


@given(multipolys(max_terms=3, max_deg=2))
def test_sqrt_of_square(p):
    r = (p * p).sqrt()
    assert r is not None and r * r == p * p


def test_sqrt_rejects_nonsquares():
    assert (x ** 2 + 1).sqrt() is None
    assert (x * y).sqrt() is None
    assert MultiPoly.const(2).sqrt() is None


def test_exact_div():
    assert ((x + y) * (x - y)).exact_div(x - y) == x + y
    with pytest.raises(ValueError):
        (x ** 2 + 1).exact_div(x + 1)


def test_unipoly_division():
    p = UniPoly([1, 2, 3, 4])
    d = UniPoly([1, 1])
    q, r = p.divmod(d)
    assert q * d + r == p and r.degree < d.degree
