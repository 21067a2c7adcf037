from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings, strategies as st

from minitwistor.poly import MultiPoly, UniPoly

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(bound=9, den=4):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, den))


def nonzero_rationals(bound=9, den=4):
    return rationals(bound, den).filter(bool)


@st.composite
def multipolys(draw, variables=("x", "y"), max_terms=5, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in variables)
        terms[exp] = draw(rationals())
    return MultiPoly(variables, terms)


@st.composite
def unipolys(draw, max_deg=5, min_deg=0):
    deg = draw(st.integers(min_deg, max_deg))
    coeffs = [draw(rationals()) for _ in range(deg)] + [draw(nonzero_rationals())]
    return UniPoly(coeffs)


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.variables) if p.variables else ()
    total = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exp):
            term *= s ** e
        total += term
    return sympy.expand(total)


def uni_to_sympy(p: UniPoly, x):
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(p.coeffs))
