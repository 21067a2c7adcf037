import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import nonzero_rationals
from minitwistor.branch import (
    Outcome,
    analyze,
    branch_polynomial,
    find_admissible_g,
    hyperelliptic_genus,
    infinity_chart,
    is_admissible,
    is_square_fiber,
    moduli_dimension,
    nonreduced_fibers,
    ruled_base_genus,
)
from minitwistor.models import ModelParams, random_params
from minitwistor.poly import UniPoly


def roots_poly(*roots):
    return UniPoly.from_roots(roots)


def sympy_genus(p: UniPoly):
    # second route: count odd-multiplicity roots through sympy's factorization
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(p.coeffs))
    _, facs = sympy.factor_list(expr)
    odd = sum(sympy.degree(f, x) for f, m in facs if m % 2)
    pts = odd + odd % 2
    return max(pts // 2 - 1, 0)


def test_genus_small_cases():
    assert hyperelliptic_genus(roots_poly(0, 1, 2)) == 1
    assert hyperelliptic_genus(roots_poly(0, 1, 2, 3)) == 1
    assert hyperelliptic_genus(roots_poly(0, 1)) == 0
    a = analyze(roots_poly(1, 1, 2, 2))
    assert a.genus == 0 and a.split
    assert a.to_dict() == {"genus": 0, "branch_points": 0, "odd_part_degree": 0,
                           "admissible": True, "split": True}


def test_genus_zero_polynomial_is_an_error():
    with pytest.raises(ValueError):
        hyperelliptic_genus(UniPoly())


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=5),
       nonzero_rationals(), nonzero_rationals(), nonzero_rationals())
def test_genus_invariance_and_oracle(roots, lc, shift, scale):
    p = UniPoly([lc])
    for r, m in roots:
        p = p * roots_poly(r) ** m
    g = hyperelliptic_genus(p)
    assert g == sympy_genus(p)
    assert hyperelliptic_genus(p.compose(UniPoly([shift, 1]))) == g
    assert hyperelliptic_genus(p.compose(UniPoly([0, scale]))) == g
    assert analyze(p).branch_points % 2 == 0


@pytest.mark.parametrize("n", range(3, 10))
def test_generic_genus(n):
    for seed in range(10):
        p = random_params(n, 100 * n + seed)
        a = is_admissible(p)
        if a.genus == n - 2:
            assert not a.admissible
            return
    pytest.fail("no generic draw within the resample budget")


@pytest.mark.parametrize("n", range(3, 13))
def test_ruled_base_genus(n):
    assert ruled_base_genus(random_params(n, n)) == (n - 1) // 2


def test_ruled_base_genus_reference_values():
    # reference value: [(n-1)/2] at n = 3, 4, 5
    for n, g in ((3, 1), (4, 1), (5, 2)):
        assert ruled_base_genus(ModelParams(n, tuple(range(1, n)))) == g


def test_admissible_example_with_rational_double_root():
    # q(8) = 16 for lambdas (6, 7); force a double root of g^2 - q at 8
    lam = (6, 7)
    q = UniPoly.from_roots((0,) + lam)
    s = Fraction(4)
    slope = q.derivative()(8) / (2 * s)
    g = UniPoly([s]) + UniPoly([-8, 1]) * slope + 2 * UniPoly([-8, 1]) ** 2
    a = is_admissible(ModelParams(3, lam, g))
    assert a.admissible and not a.split
    assert a.branch_points == 2


def test_zero_g_hat_reports_genus_of_q():
    for n in range(3, 8):
        p = ModelParams(n, tuple(range(1, n)))
        assert is_admissible(p).genus == (n - 1) // 2
        assert not is_admissible(p).generic_degree


def test_branch_polynomial_frozen_n3():
    p = ModelParams(3, (1, 2), UniPoly([1, 0, 1]))
    text = branch_polynomial(p).to_text()
    assert text == ("1 * eta1^2 * eta2^2 + -2 * eta1 * eta2 * lam^2 + 1 * lam^4 + -1 * lam^3"
                    " + -2 * eta1 * eta2 + 5 * lam^2 + -2 * lam + 1")


def test_nonreduced_fibers_n4():
    p = ModelParams(4, (1, 2, 3), UniPoly([1, -1, 2, 1]))
    nf = nonreduced_fibers(p, probes=[5, Fraction(1, 2)])
    assert nf.report.ok, nf.report.to_text()
    assert nf.values() == [0, 1, 2, 3, "inf"]


@given(st.integers(3, 7), st.integers(0, 1000))
def test_only_roots_give_squares(n, seed):
    p = random_params(n, seed)
    roots = {Fraction(0), *p.lambdas}
    for v in range(-3, 3 * n):
        assert is_square_fiber(p, v) == (Fraction(v) in roots)


@pytest.mark.parametrize("n", range(4, 11))
def test_infinity_chart(n):
    ch = infinity_chart(random_params(n, n))
    assert ch.report.ok, ch.report.to_text()
    assert ch.a_type_exponent == 3 * n - 8
    assert ch.singularity == f"A{3 * n - 9}"


def test_infinity_chart_n3_is_smooth():
    ch = infinity_chart(random_params(3, 1))
    assert ch.a_type_exponent == 1 and ch.singularity is None
    assert ch.report.ok


def test_moduli_dimension():
    for n in range(3, 13):
        m = moduli_dimension(n)
        assert m.dimension == n
        assert m.to_dict()["rationality_constraints"] == n - 2
    with pytest.raises(ValueError):
        moduli_dimension(2)


def test_search_zero_tolerance():
    r = find_admissible_g(3, (1, 2), seed=0, tol=0)
    assert r.outcome is Outcome.NO_CONVERGENCE and r.iterations == 0


def test_search_is_deterministic():
    a = find_admissible_g(4, (1, 2, 3), seed=5)
    b = find_admissible_g(4, (1, 2, 3), seed=5)
    assert a == b


@pytest.mark.parametrize("n,lam", [(3, (1, 2)), (4, (1, 2, 3))])
def test_search_hits_are_exact(n, lam):
    hits = [r for r in (find_admissible_g(n, lam, s) for s in range(32))
            if r.outcome is Outcome.ADMISSIBLE]
    assert hits
    for r in hits:
        assert is_admissible(ModelParams(n, lam, r.g_hat)).admissible
        json.dumps(r.to_dict())


def test_search_spoiled_results_carry_exact_genus():
    r = find_admissible_g(3, (1, 2), seed=0)
    assert r.outcome is Outcome.ROUNDING_SPOILED
    assert r.analysis.genus == 1
