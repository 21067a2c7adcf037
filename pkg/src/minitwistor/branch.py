"""Branch divisor of the double covering: genus bookkeeping, fibers, the chart at infinity."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .models import ModelParams
from .poly import MultiPoly, UniPoly, as_fraction, squarefree_decomposition
from .report import VerificationReport

BRANCH_VARS = ("eta1", "eta2", "lam")
CHART_VARS = ("eta1h", "eta2h", "mu")


def branch_polynomial(params: ModelParams) -> MultiPoly:
    """(eta1 eta2 - g_hat(lam))^2 - lam prod (lam - lambda_i)."""
    e1, e2 = MultiPoly.var("eta1", BRANCH_VARS), MultiPoly.var("eta2", BRANCH_VARS)
    gh = params.g_hat.to_multipoly("lam").with_variables(BRANCH_VARS)
    q = params.q().to_multipoly("lam").with_variables(BRANCH_VARS)
    return (e1 * e2 - gh) ** 2 - q


@dataclass(frozen=True)
class BranchAnalysis:
    p: UniPoly
    factors: tuple[tuple[UniPoly, int], ...]
    odd_part_degree: int
    branch_points: int
    genus: int
    split: bool
    generic_degree: bool = True

    @property
    def admissible(self) -> bool:
        return self.genus == 0

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "branch_points": self.branch_points,
            "odd_part_degree": self.odd_part_degree,
            "admissible": self.admissible,
            "split": self.split,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def analyze(p: UniPoly, generic_degree: bool = True) -> BranchAnalysis:
    """Double cover of the line branched along the odd-multiplicity roots of p (and infinity if needed)."""
    if p.is_zero():
        raise ValueError("the zero polynomial defines no double covering")
    factors = tuple(squarefree_decomposition(p))
    odd = sum(f.degree for f, m in factors if m % 2)
    points = odd + (odd % 2)
    split = points == 0
    genus = 0 if split else points // 2 - 1
    return BranchAnalysis(p, factors, odd, points, genus, split, generic_degree)


def hyperelliptic_genus(p: UniPoly) -> int:
    return analyze(p).genus


def is_admissible(params: ModelParams) -> BranchAnalysis:
    p = params.g_hat ** 2 - params.q()
    return analyze(p, generic_degree=params.g_hat.degree == params.n - 1)


def ruled_base_genus(params: ModelParams) -> int:
    return hyperelliptic_genus(params.q())


# ---------------------------------------------------------------------------
# Fibers of the branch divisor over the lambda-line


INFINITY = "inf"


@dataclass(frozen=True)
class NonreducedFibers:
    finite: tuple[Fraction, ...]
    infinity: bool
    report: VerificationReport = field(compare=False)

    def values(self) -> list:
        return list(self.finite) + ([INFINITY] if self.infinity else [])


def fiber_at(params: ModelParams, value) -> MultiPoly:
    return branch_polynomial(params).substitute({"lam": as_fraction(value)}).trim()


def is_square_fiber(params: ModelParams, value) -> bool:
    return fiber_at(params, value).sqrt() is not None


def nonreduced_fibers(params: ModelParams, probes: Sequence = ()) -> NonreducedFibers:
    """Roots of q (plus infinity) with a perfect-square check on each fiber.

    ``probes`` are extra rational values that must not give a square.
    """
    rep = VerificationReport()
    roots = (Fraction(0),) + params.lambdas
    for v in roots:
        f = fiber_at(params, v)
        root = f.sqrt()
        rep.check(f"fiber.square.{v}", True, root is not None)
        e1, e2 = MultiPoly.vars("eta1", "eta2")
        expected = (e1 * e2 - params.g_hat(v)) ** 2
        rep.check(f"fiber.remainder.{v}", True, (f - expected).is_zero())
    for v in probes:
        v = as_fraction(v)
        if v in roots:
            continue
        rep.check(f"fiber.nonsquare.{v}", False, is_square_fiber(params, v))
    chart = infinity_chart(params)
    rep.extend(chart.report)
    at_inf = chart.report.ok and chart.equation.substitute({"mu": 0}).trim().sqrt() is not None
    return NonreducedFibers(roots, at_inf, rep)


# ---------------------------------------------------------------------------
# The chart lam = 1/mu, eta_i = eta_hat_i mu^{-(n-2)}


@dataclass(frozen=True)
class InfinityChart:
    equation: MultiPoly
    a_type_exponent: int
    report: VerificationReport = field(compare=False)

    @property
    def singularity(self) -> str | None:
        """A_k label of w^2 = mu^e * unit; None when e = 1 (smooth)."""
        return f"A{self.a_type_exponent - 1}" if self.a_type_exponent >= 2 else None


def _reversed(p: UniPoly, degree: int) -> UniPoly:
    """mu^degree * p(1/mu)."""
    cs = list(p.coeffs) + [Fraction(0)] * (degree + 1 - len(p.coeffs))
    return UniPoly(reversed(cs))


def infinity_chart(params: ModelParams) -> InfinityChart:
    n = params.n
    shift = n - 2
    weight = 4 * shift
    # Rewrite each monomial eta1^a eta2^b lam^k and clear mu^{4(n-2)}.
    terms = {}
    for (a, b, k), c in branch_polynomial(params).terms.items():
        e = weight - shift * (a + b) - k
        if e < 0:
            raise ArithmeticError("the twist does not clear denominators")
        terms[(a, b, e)] = c
    eq = MultiPoly(CHART_VARS, terms)

    eh1, eh2, mu = (MultiPoly.var(v, CHART_VARS) for v in CHART_VARS)
    g_t = _reversed(params.g_hat, n - 1).to_multipoly("mu").with_variables(CHART_VARS)
    q_t = _reversed(params.q(), n).to_multipoly("mu").with_variables(CHART_VARS)
    closed = (eh1 * eh2 - mu ** (n - 3) * g_t) ** 2 - mu ** (3 * n - 8) * q_t

    rep = VerificationReport()
    rep.check("infinity.closed_form", True, eq == closed)
    rep.check("infinity.q_tilde(0)", Fraction(1), _reversed(params.q(), n)(0))
    w = eh1 * eh2 - mu ** (n - 3) * g_t
    rep.check("infinity.w_substitution", True, (eq - w ** 2 + mu ** (3 * n - 8) * q_t).is_zero())
    at_zero = eq.substitute({"mu": 0}).trim()
    expected_zero = (eh1 * eh2 - (g_t.evaluate({"mu": 0}) if n == 3 else 0)) ** 2
    rep.check("infinity.mu0_square", True, at_zero.sqrt() is not None and at_zero == expected_zero.trim())
    return InfinityChart(eq, 3 * n - 8, rep)


# ---------------------------------------------------------------------------
# Parameter count


@dataclass(frozen=True)
class ModuliCount:
    params_g: int
    params_lambda: int
    scaling: int
    rationality_constraints: int

    @property
    def dimension(self) -> int:
        return self.params_g + self.params_lambda - self.scaling - self.rationality_constraints

    def to_dict(self) -> dict:
        return {
            "params_g": self.params_g,
            "params_lambda": self.params_lambda,
            "scaling": self.scaling,
            "rationality_constraints": self.rationality_constraints,
            "dimension": self.dimension,
        }


def moduli_dimension(n: int) -> ModuliCount:
    if n < 3:
        raise ValueError("n must be at least 3")
    return ModuliCount(n, n - 1, 1, n - 2)


# ---------------------------------------------------------------------------
# Numerical search for admissible g_hat, verified exactly


class Outcome(Enum):
    ADMISSIBLE = "admissible"
    NO_CONVERGENCE = "no-convergence"
    ROUNDING_SPOILED = "rounding-spoiled"


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    seed: int
    iterations: int
    residual: float | None = None
    g_hat: UniPoly | None = None
    analysis: BranchAnalysis | None = None

    def to_dict(self) -> dict:
        d = {"outcome": self.outcome.value, "seed": self.seed, "iterations": self.iterations,
             "residual": self.residual}
        if self.g_hat is not None:
            d["g_hat"] = [str(c) for c in self.g_hat.coeffs]
        if self.analysis is not None:
            d["analysis"] = self.analysis.to_dict()
        return d


DENOMINATOR_LADDER = (1, 2, 4, 8, 16, 100, 1000, 10 ** 4, 10 ** 6)


def _residual(x: np.ndarray, n: int, q: np.ndarray):
    P = np.polynomial.polynomial
    g, rr, h = x[:n], np.append(x[n:2 * n - 2], 1.0), x[2 * n - 2:]
    r2 = P.polymul(rr, rr)
    F = P.polysub(P.polysub(P.polymul(g, g), q), P.polymul(r2, h))
    F = np.pad(F, (0, max(0, 2 * n - 1 - len(F))))[: 2 * n - 1]
    # Jacobian columns: d/dg_k = 2 g lam^k, d/dr_k = -2 r h lam^k, d/dh_k = -r^2 lam^k
    cols = []
    rh = P.polymul(rr, h)
    for k in range(n):
        cols.append(np.concatenate([np.zeros(k), 2 * g]))
    for k in range(n - 2):
        cols.append(np.concatenate([np.zeros(k), -2 * rh]))
    for k in range(3):
        cols.append(np.concatenate([np.zeros(k), -r2]))
    J = np.zeros((2 * n - 1, len(cols)))
    for j, c in enumerate(cols):
        m = min(len(c), 2 * n - 1)
        J[:m, j] = c[:m]
    return F, J


def find_admissible_g(n: int, lambdas: Sequence, seed: int, tol: float = 1e-9,
                      max_iter: int = 200) -> SearchResult:
    """Gauss-Newton on g_hat^2 - q = r^2 h (r monic of degree n-2, deg h <= 2), then exact recheck."""
    lambdas = tuple(as_fraction(x) for x in lambdas)
    base = ModelParams(n, lambdas)
    if tol <= 0:
        return SearchResult(Outcome.NO_CONVERGENCE, seed, 0)
    q_exact = base.q()
    q = np.array([float(c) for c in q_exact.coeffs])
    rng = np.random.default_rng(seed)
    x = rng.normal(size=2 * n + 1)
    res = np.inf
    for it in range(1, max_iter + 1):
        F, J = _residual(x, n, q)
        res = float(np.max(np.abs(F)))
        if not np.isfinite(res):
            break
        if res < tol:
            return _round_and_check(n, lambdas, x[:n], seed, it, res)
        step, *_ = np.linalg.lstsq(J, F, rcond=None)
        x = x - step
    return SearchResult(Outcome.NO_CONVERGENCE, seed, max_iter, res if np.isfinite(res) else None)


def _round_and_check(n, lambdas, g_float, seed, iterations, residual) -> SearchResult:
    last = None
    for den in DENOMINATOR_LADDER:
        g = UniPoly(Fraction(float(c)).limit_denominator(den) for c in g_float)
        if g.degree > n - 1:
            continue
        analysis = is_admissible(ModelParams(n, lambdas, g))
        last = (g, analysis)
        if analysis.admissible:
            return SearchResult(Outcome.ADMISSIBLE, seed, iterations, residual, g, analysis)
    g, analysis = last
    return SearchResult(Outcome.ROUNDING_SPOILED, seed, iterations, residual, g, analysis)


def search_admissible(n: int, lambdas: Sequence, seeds: Sequence[int], tol: float = 1e-9) -> list[SearchResult]:
    return [find_admissible_g(n, lambdas, s, tol) for s in seeds]
