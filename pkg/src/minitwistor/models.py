"""Projective models: minitwistor quadric, model X, fiber chart, branch derivation.

Coordinates are z1..z_{n+6} on the big projective space; the minitwistor
surface lives in z1..z_{n+2}.  On the chart z1 = 1 the rational normal
curve is (1, lam, ..., lam^{n-1}) and the fiber coordinates are
xi_i = z_{n+i}/z1.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lattice import build_minitwistor_T, sum_classes
from .poly import MultiPoly, UniPoly, as_fraction, discriminant, gcd, resultant
from .report import VerificationReport


# ---------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class ModelParams:
    """n, lambda_3..lambda_{n+1} (lambda_2 = 0 implicit), g-hat and the constant c = re + i*im."""

    n: int
    lambdas: tuple[Fraction, ...]
    g_hat: UniPoly = field(default_factory=UniPoly)
    c: tuple[Fraction, Fraction] = (Fraction(1, 2), Fraction(0))
    g_linear: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise ValueError("n must be at least 3")
        lam = tuple(as_fraction(x) for x in self.lambdas)
        object.__setattr__(self, "lambdas", lam)
        if len(lam) != n - 1:
            raise ValueError(f"need {n - 1} lambdas, got {len(lam)}")
        if any(x == 0 for x in lam):
            raise ValueError("lambdas must be nonzero")
        if len(set(lam)) != len(lam):
            raise ValueError("lambdas must be pairwise distinct")
        inc = all(a < b for a, b in zip(lam, lam[1:])) and lam[0] > 0
        dec = all(a > b for a, b in zip(lam, lam[1:])) and lam[0] < 0
        if not (inc or dec):
            raise ValueError("lambdas must increase away from 0 or decrease away from 0")
        if not isinstance(self.g_hat, UniPoly):
            object.__setattr__(self, "g_hat", UniPoly(self.g_hat))
        if self.g_hat.degree > n - 1:
            raise ValueError(f"g_hat has degree {self.g_hat.degree} > n-1")
        c = (as_fraction(self.c[0]), as_fraction(self.c[1]))
        object.__setattr__(self, "c", c)
        if c == (0, 0):
            raise ValueError("c must be nonzero")
        if self.g_linear is not None:
            gl = tuple(as_fraction(x) for x in self.g_linear)
            if len(gl) != n + 2:
                raise ValueError(f"g_linear needs {n + 2} entries")
            object.__setattr__(self, "g_linear", gl)

    @property
    def c_abs2(self) -> Fraction:
        return self.c[0] ** 2 + self.c[1] ** 2

    def q(self) -> UniPoly:
        """lam * prod (lam - lambda_i)."""
        return UniPoly.from_roots((0,) + self.lambdas)

    def linear_form(self) -> tuple[Fraction, ...]:
        """Coefficients of g on z1..z_{n+2}; requires real c unless g_linear was given."""
        if self.g_linear is not None:
            return self.g_linear
        if self.c[1] != 0:
            raise ValueError("a complex c has no rational linear form; pass g_linear explicitly")
        gh = list(self.g_hat.coeffs) + [Fraction(0)] * (self.n - len(self.g_hat.coeffs))
        return tuple(gh) + (self.c[0], self.c[0])

    def with_g_hat(self, g_hat: UniPoly) -> "ModelParams":
        return ModelParams(self.n, self.lambdas, g_hat, self.c, None)


def random_params(n: int, seed: int, c=(Fraction(1, 2), Fraction(0)), full_degree: bool = True) -> ModelParams:
    rng = random.Random(seed)
    lams = sorted(rng.sample(range(1, 6 * n), n - 1))
    lambdas = tuple(Fraction(x, rng.randint(1, 3)) for x in lams)
    lambdas = tuple(sorted(set(lambdas)))
    while len(lambdas) < n - 1:
        lambdas = tuple(sorted(set(lambdas) | {Fraction(rng.randint(1, 12 * n), rng.randint(1, 3))}))
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
    if full_degree and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return ModelParams(n, lambdas, UniPoly(coeffs), c)


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class Ideal:
    variables: tuple[str, ...]
    generators: tuple[tuple[str, MultiPoly], ...]

    def polys(self) -> list[MultiPoly]:
        return [p for _, p in self.generators]

    def tags(self) -> list[str]:
        return [t for t, _ in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, tag: str) -> MultiPoly:
        for t, p in self.generators:
            if t == tag:
                return p
        raise KeyError(tag)

    def vanishes_at(self, point: dict) -> bool:
        return all(p.evaluate(point) == 0 for p in self.polys())

    def to_text(self) -> str:
        return "\n".join(f"{t}: {p.with_variables(self.variables).to_text()}" for t, p in self.generators)

    def to_json(self) -> str:
        data = {
            "variables": list(self.variables),
            "generators": [
                {"tag": t, "terms": p.with_variables(self.variables).to_json_terms()}
                for t, p in self.generators
            ],
        }
        return json.dumps(data, indent=2)


def z_names(count: int) -> tuple[str, ...]:
    return tuple(f"z{k}" for k in range(1, count + 1))


def elementary_symmetric(lambdas: Sequence) -> list[Fraction]:
    """sigma_1..sigma_m of the given values (read off the expansion of prod (x - l))."""
    p = UniPoly.from_roots(lambdas)
    m = len(lambdas)
    return [(-1) ** k * p.coeffs[m - k] for k in range(1, m + 1)]


def scroll_relations(n: int, variables: Sequence[str] | None = None) -> Ideal:
    vs = tuple(variables) if variables is not None else z_names(n + 2)
    z = [MultiPoly.var(v, vs) for v in vs]
    gens = []
    for i, j in combinations(range(1, n), 2):
        # z_i z_{j+1} - z_{i+1} z_j with 1-based indices
        gens.append((f"scroll.{i}.{j}", z[i - 1] * z[j] - z[i] * z[j - 1]))
    return Ideal(vs, tuple(gens))


def _bracket(params: ModelParams, z: Sequence[MultiPoly], sigmas: Sequence[Fraction] | None = None) -> MultiPoly:
    """z_n - sigma_1 z_{n-1} + ... + (-1)^{n-1} sigma_{n-1} z_1."""
    n = params.n
    sig = [Fraction(1)] + list(sigmas if sigmas is not None else elementary_symmetric(params.lambdas))
    total = MultiPoly.const(0, z[0].variables)
    for k in range(n):
        total = total + (-1) ** k * sig[k] * z[n - 1 - k]
    return total


def minitwistor_quadric(params: ModelParams, sigmas: Sequence[Fraction] | None = None,
                        variables: Sequence[str] | None = None) -> MultiPoly:
    """z_{n+1} z_{n+2} - z2 * bracket."""
    n = params.n
    vs = tuple(variables) if variables is not None else z_names(n + 2)
    z = [MultiPoly.var(v, vs) for v in vs]
    return z[n] * z[n + 1] - z[1] * _bracket(params, z, sigmas)


def verify_mt_identity(params: ModelParams, sigmas: Sequence[Fraction] | None = None) -> bool:
    """Check y1^{n-2} y2 prod(y2 - l_i y1) == z2 * bracket under z_k = y1^{n-k} y2^{k-1}."""
    n = params.n
    y1, y2 = MultiPoly.vars("y1", "y2")
    lhs = y1 ** (n - 2) * y2
    for lam in params.lambdas:
        lhs = lhs * (y2 - lam * y1)
    vs = z_names(n)
    z = [MultiPoly.var(v, vs) for v in vs]
    rhs = z[1] * _bracket(params, z, sigmas)
    binding = {f"z{k}": y1 ** (n - k) * y2 ** (k - 1) for k in range(1, n + 1)}
    return rhs.substitute(binding) == lhs


def linear_g(params: ModelParams, variables: Sequence[str]) -> MultiPoly:
    coeffs = params.linear_form()
    total = MultiPoly.const(0, variables)
    for c, v in zip(coeffs, variables):
        total = total + c * MultiPoly.var(v, variables)
    return total


def model_X_ideal(params: ModelParams, g: MultiPoly | None = None, verbatim: bool = False) -> Ideal:
    """Generators of X in z1..z_{n+6}.

    The quadric carries the factor z2, as in the minitwistor relation and the
    fiber chart.  ``verbatim=True`` emits the variant with z1 in front, which
    the fiber chart does not support; it is kept for comparison only.
    """
    n = params.n
    vs = z_names(n + 6)
    z = [MultiPoly.var(v, vs) for v in vs]
    if g is None:
        g = linear_g(params, vs[: n + 2])
    g = g.with_variables(vs)
    if not g.terms or g.total_degree() != 1 or not all(sum(e) == 1 for e in g.terms):
        raise ValueError("g must be a nonzero linear form")
    gens = list(scroll_relations(n, vs).generators)
    gens.append(("shift.xi5", z[0] * z[n + 4] - z[1] * z[n + 2]))
    gens.append(("shift.xi6", z[0] * z[n + 5] - z[1] * z[n + 3]))
    factor = z[0] if verbatim else z[1]
    gens.append(("conic" + (".verbatim" if verbatim else ""), z[n] * z[n + 1] - factor * _bracket(params, z)))
    gens.append(("g.quadric", z[n + 2] * z[n + 3] - z[0] * g))
    return Ideal(vs, tuple(gens))


FIBER_VARS = ("lam", "xi1", "xi2", "xi3", "xi4", "xi5", "xi6")


def fiber_model(params: ModelParams, g: MultiPoly | None = None) -> Ideal:
    n = params.n
    lam, x1, x2, x3, x4, x5, x6 = (MultiPoly.var(v, FIBER_VARS) for v in FIBER_VARS)
    if g is None:
        g = linear_g(params, z_names(n + 2))
    binding = {f"z{k}": lam ** (k - 1) for k in range(1, n + 1)}
    binding[f"z{n + 1}"] = x1
    binding[f"z{n + 2}"] = x2
    g_fiber = g.substitute(binding).with_variables(FIBER_VARS)
    q = params.q().to_multipoly("lam").with_variables(FIBER_VARS)
    gens = (
        ("shift.xi5", x5 - lam * x3),
        ("shift.xi6", x6 - lam * x4),
        ("conic", x1 * x2 - q),
        ("g.quadric", x3 * x4 - g_fiber),
    )
    return Ideal(FIBER_VARS, gens)


def restrict_to_chart(ideal: Ideal, n: int) -> list[tuple[str, MultiPoly]]:
    """Set z1 = 1, z_k = lam^{k-1} (k <= n), z_{n+i} = xi_i; drop generators that vanish."""
    lam = MultiPoly.var("lam", FIBER_VARS)
    binding = {f"z{k}": lam ** (k - 1) for k in range(1, n + 1)}
    for i in range(1, 7):
        binding[f"z{n + i}"] = MultiPoly.var(f"xi{i}", FIBER_VARS)
    out = []
    for tag, p in ideal.generators:
        r = p.substitute(binding).with_variables(FIBER_VARS)
        if not r.is_zero():
            out.append((tag, r))
    return out


# ---------------------------------------------------------------------------
# Conic bundle and projection


def conic_bundle_form(params: ModelParams) -> dict:
    """Zero divisors of the conic bundle xy = P0 P1 t^2 as classes on the resolved minitwistor surface."""
    n = params.n
    t = build_minitwistor_T(n)
    long_fiber = dict(t.fibers)["lambda1"]
    p1_names = ["Gamma", "Gammabar"] + list(long_fiber)
    for i in range(4, n + 2):
        p1_names += [f"d{i}", f"s{i}-"]
    p1 = sum_classes((t[c] for c in p1_names), t.lattice)
    f = t["f"]
    rep = VerificationReport()
    rep.check("conic.P0.f", 2, t.C0 @ f)
    rep.check("conic.P1.f", 2, p1 @ f)
    rep.check("conic.P0P1.f", 4, (t.C0 + p1) @ f)
    rep.check("conic.P1.class", (t["Gamma"] + t["Gammabar"] + (n - 1) * f).coeffs, p1.coeffs)
    rep.check("conic.P1.components", 3 * n - 3, len(p1_names))
    excluded = {"s2+", "s2-", "s3+", "s3-"}
    rep.check("conic.P1.excludes_lambda2_lambda3", True, excluded.isdisjoint(p1_names))
    return {
        "lhs": "x*y",
        "P0": {"components": ["C0"], "class": t.C0.as_dict()},
        "P1": {"components": p1_names, "class": p1.as_dict()},
        "report": rep,
    }


def project_f(point: Sequence) -> tuple:
    """(z1, ..., z_{n-1}, z_{n+3}, z_{n+4}) for a point of length n+6; all zeros means the center."""
    m = len(point)
    n = m - 6
    if n < 3:
        raise ValueError("point must have length n+6 with n >= 3")
    return tuple(point[: n - 1]) + (point[n + 2], point[n + 3])


# ---------------------------------------------------------------------------
# Branch derivation over Q(i)


def reduce_i(p: MultiPoly) -> MultiPoly:
    """Reduce modulo i^2 + 1 so that i appears with exponent at most 1."""
    if "i" not in p.variables:
        return p
    k = p.variables.index("i")
    out: dict = {}
    for exp, c in p.terms.items():
        e = exp[k]
        sign = -1 if (e // 2) % 2 else 1
        new = exp[:k] + (e % 2,) + exp[k + 1:]
        out[new] = out.get(new, Fraction(0)) + sign * c
    return MultiPoly(p.variables, out)


def real_imag(p: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    coeffs = reduce_i(p).coefficients("i")
    zero = MultiPoly.const(0)
    return coeffs.get(0, zero), coeffs.get(1, zero)


@dataclass(frozen=True)
class BranchDerivation:
    polynomial: MultiPoly
    imaginary_part: MultiPoly
    q_coefficient: Fraction | None
    matches: bool


def derive_branch(params: ModelParams) -> BranchDerivation:
    """Eliminate xi1, xi2 from xi1 xi2 = q and eta1 eta2 = g-hat + c xi1 + c-bar xi2.

    Solving the second equation for xi2 and clearing c-bar gives the
    quadratic c xi1^2 - (eta1 eta2 - g-hat) xi1 + c-bar q in xi1; its
    discriminant is returned after reduction in Q(i).
    """
    from .branch import BRANCH_VARS, branch_polynomial

    i = MultiPoly.var("i")
    re, im = params.c
    c = re + im * i
    cbar = re - im * i
    e1, e2, lam, x1, x2 = (MultiPoly.var(v) for v in ("eta1", "eta2", "lam", "xi1", "xi2"))
    q = params.q().to_multipoly("lam")
    gh = params.g_hat.to_multipoly("lam")
    w = e1 * e2
    # xi2 = cbar^{-1} (w - gh - c xi1), with cbar^{-1} = c / |c|^2.
    xi2 = c * (w - gh - c * x1) / params.c_abs2
    quad = reduce_i(((x1 * x2 - q).substitute({"xi2": xi2})) * (-cbar))
    disc = reduce_i(discriminant(quad, "xi1"))
    real, imag = real_imag(disc)
    real = real.trim().with_variables(BRANCH_VARS)
    target = branch_polynomial(params)
    constant_part = real.coefficients("eta1").get(0, MultiPoly.const(0))
    q_coeff = _q_multiple(constant_part - gh ** 2, params.q())
    return BranchDerivation(real, imag.trim(), -q_coeff if q_coeff is not None else None,
                            imag.is_zero() and real == target)


def _q_multiple(p: MultiPoly, q: UniPoly) -> Fraction | None:
    """Rational k with p == k * q(lam) if one exists."""
    if p.is_zero():
        return Fraction(0)
    try:
        u = p.trim().to_univariate("lam") if p.trim().variables else UniPoly([p.constant_value()])
    except ValueError:
        return None
    if u.degree != q.degree:
        return None
    k = u.lc / q.lc
    return k if (u - q * k).is_zero() else None


# ---------------------------------------------------------------------------
# Sampling


def _rand_rational(rng: random.Random, lo: int = -20, hi: int = 20, den: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def sample_points_on_T(params: ModelParams, count: int, seed: int = 0) -> list[tuple[Fraction, ...]]:
    """Affine points (z1 = 1) of the minitwistor surface with random rational lam."""
    rng = random.Random(seed)
    n = params.n
    z = [MultiPoly.var(v, z_names(n)) for v in z_names(n)]
    rhs_poly = z[1] * _bracket(params, z)
    out = []
    while len(out) < count:
        lam = _rand_rational(rng)
        base = [lam ** (k - 1) for k in range(1, n + 1)]
        rhs = rhs_poly.evaluate({f"z{k}": base[k - 1] for k in range(1, n + 1)})
        if rhs == 0:
            continue  # lam is a root of q: resample
        zn1 = _rand_rational(rng)
        if zn1 == 0:
            continue
        out.append(tuple(base) + (zn1, rhs / zn1))
    return out


def lift_to_X(point: Sequence[Fraction], params: ModelParams, seed: int = 0) -> tuple[Fraction, ...]:
    """Extend a point of T (z1 = 1) to X using the fiber chart equations."""
    rng = random.Random(seed)
    if len(point) != params.n + 2:
        raise ValueError(f"expected a point with {params.n + 2} coordinates")
    lam = point[1]
    gl = params.linear_form()
    gval = sum(c * x for c, x in zip(gl, point))
    xi3 = Fraction(0)
    while xi3 == 0:
        xi3 = _rand_rational(rng)
    xi4 = gval / xi3
    return tuple(point) + (xi3, xi4, lam * xi3, lam * xi4)


def point_dict(point: Sequence, prefix: str = "z") -> dict[str, Fraction]:
    return {f"{prefix}{k}": v for k, v in enumerate(point, start=1)}


# ---------------------------------------------------------------------------
# Degree oracle


class _Split(Exception):
    def __init__(self, factor: UniPoly):
        self.factor = factor


class DegenerateSlice(Exception):
    pass


def _mod(p: UniPoly, m: UniPoly) -> UniPoly:
    return p % m if m.degree > 0 else UniPoly()


def _inverse(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of a in Q[x]/(m); raises _Split when a is a zero divisor."""
    g = gcd(a, m)
    if g.degree > 0:
        raise _Split(g)
    # extended Euclid
    r0, r1 = m, a
    s0, s1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        qt, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
    return _mod(s0 * (1 / r0.lc), m)


def _as_poly_over_K(p: MultiPoly, x: str, y: str, m: UniPoly) -> list[UniPoly]:
    """Coefficients (ascending in y) of p as elements of Q[x]/(m)."""
    coeffs = p.coefficients(y)
    deg = max(coeffs, default=-1)
    out = []
    for d in range(deg + 1):
        c = coeffs.get(d)
        out.append(_mod(c.to_univariate(x), m) if c is not None else UniPoly())
    return out


def _normalize(f: list[UniPoly], m: UniPoly) -> list[UniPoly]:
    """Drop leading coefficients that vanish mod m; split m on partial vanishing."""
    f = list(f)
    while f:
        lc = f[-1]
        if lc.is_zero():
            f.pop()
            continue
        g = gcd(lc, m)
        if g.degree == m.degree:
            f.pop()
            continue
        if g.degree > 0:
            raise _Split(g)
        break
    return f


def _gcd_over_K(polys: list[list[UniPoly]], m: UniPoly) -> list[UniPoly]:
    def rem(a, b):
        # only b's leading coefficient has to be a unit for division by b
        a = list(a)
        inv = _inverse(b[-1], m)
        while True:
            while a and a[-1].is_zero():
                a.pop()
            if len(a) < len(b):
                return a
            k = len(a) - len(b)
            factor = _mod(a[-1] * inv, m)
            for j, bc in enumerate(b):
                a[j + k] = _mod(a[j + k] - factor * bc, m)

    g: list[UniPoly] = []
    for p in polys:
        a, b = _normalize(g, m), _normalize(p, m)
        if not a:
            g = b
            continue
        while b:
            a, b = b, _normalize(rem(a, b), m)
        g = a
    return g


def _count_points(m: UniPoly, stages, generators: list[MultiPoly], xs: Sequence[str]) -> int:
    """Number of x-roots of squarefree m that extend to common zeros of all generators."""
    if m.degree <= 0:
        return 0
    x = xs[0]
    try:
        values: dict[str, UniPoly] = {}
        for y, polys in stages:
            bound = {v: val.to_multipoly(x) for v, val in values.items()}
            over_k = [_as_poly_over_K(p.substitute(bound) if bound else p, x, y, m) for p in polys]
            g = _gcd_over_K(over_k, m)
            if len(g) <= 1:
                return 0  # a nonzero constant: no solution over this factor
            if len(g) > 2:
                raise DegenerateSlice(f"several {y}-values over one root")
            values[y] = _mod(-g[0] * _inverse(g[1], m), m)
        bound = {v: val.to_multipoly(x) for v, val in values.items()}
        valid = m
        for p in generators:
            r = _mod(p.substitute(bound).to_univariate(x), m)
            valid = gcd(valid, r) if not r.is_zero() else valid
        return valid.degree
    except _Split as s:
        f = s.factor.monic()
        return _count_points(f, stages, generators, xs) + _count_points(m // f, stages, generators, xs)


@dataclass(frozen=True)
class SliceResult:
    degree: int
    eliminant_degree: int
    attempts: int


def degree_by_slicing(n: int, params: ModelParams | None = None, seed: int = 0,
                      max_attempts: int = 8, detail: bool = False):
    """Count points of T on a random codimension-2 linear slice, exactly."""
    if n not in (3, 4):
        raise ValueError("the slicing oracle supports n = 3 and n = 4 only")
    if params is None:
        params = ModelParams(n, tuple(range(1, n)), UniPoly([1]))
    if params.n != n:
        raise ValueError("params.n does not match n")
    rng = random.Random(seed)
    gens = scroll_relations(n).polys() + [minitwistor_quadric(params)]
    ts = tuple(f"t{j}" for j in range(1, n))
    for attempt in range(1, max_attempts + 1):
        # z = v0 + sum t_j v_j: an affine chart on a random P^{n-1} inside P^{n+1}
        vecs = [[Fraction(rng.randint(-5, 5)) for _ in range(n + 2)] for _ in range(n)]
        zmap = {}
        for k in range(n + 2):
            expr = MultiPoly.const(vecs[0][k], ts)
            for j, t in enumerate(ts, start=1):
                expr = expr + vecs[j][k] * MultiPoly.var(t, ts)
            zmap[f"z{k + 1}"] = expr
        G = [g.substitute(zmap).with_variables(ts) for g in gens]
        if any(g.is_zero() for g in G):
            continue
        if n == 3:
            elim = resultant(G[0], G[1], "t2")
            stages = [("t2", G)]
        else:
            # Two eliminants from independent combinations share the true roots;
            # their gcd drops most spurious ones before the exact back-substitution.
            elims, pairs = [], []
            for _ in range(2):
                comb = [sum((Fraction(rng.randint(-4, 4)) * g for g in G), MultiPoly.const(0, ts))
                        for _ in range(3)]
                if any(c.is_zero() for c in comb):
                    break
                r1 = resultant(comb[0], comb[1], "t3")
                r2 = resultant(comb[0], comb[2], "t3")
                if r1.is_zero() or r2.is_zero():
                    break
                elims.append(resultant(r1, r2, "t2"))
                pairs += [r1, r2]
            if len(elims) < 2 or any(e.is_zero() or e.is_constant() for e in elims):
                continue
            elim = elims[0]
            stages = [("t2", pairs), ("t3", G)]
        if elim.is_zero() or elim.is_constant():
            continue
        e = elim.to_univariate("t1")
        if n == 4:
            e = gcd(e, elims[1].to_univariate("t1"))
            if e.degree <= 0:
                continue
        squarefree = e // gcd(e, e.derivative())
        try:
            count = _count_points(squarefree.monic(), stages, G, ts)
        except DegenerateSlice:
            continue
        if detail:
            return SliceResult(count, e.degree, attempt)
        return count
    raise RuntimeError("no generic slice found within the retry budget")
