"""Exact polynomial arithmetic over the rationals.

Two representations live here:

* ``MultiPoly`` -- sparse multivariate polynomials over a named, ordered
  variable list.  Binary operations between polynomials on different
  variable lists merge the lists by name: the left operand's order is kept
  and unseen names from the right operand are appended.
* ``UniPoly`` -- dense univariate polynomials, used for gcd, square-free
  decomposition and genus computations.

Rationals are ``fractions.Fraction`` (Python big integers underneath).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
Exponent = tuple[int, ...]


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if any(ch in s for ch in ".eE"):
            raise ValueError(f"decimal literal {x!r} rejected; write p/q")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# MultiPoly


class MultiPoly:
    """Sparse polynomial: ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[Exponent, Number] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        k = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != k:
                raise ValueError(f"exponent {exp} does not match arity {k}")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms: dict[Exponent, Fraction] = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "MultiPoly":
        vs = tuple(variables) if variables is not None else (name,)
        if name not in vs:
            vs = vs + (name,)
        exp = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exp: 1})

    @classmethod
    def const(cls, c: Number, variables: Iterable[str] = ()) -> "MultiPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def vars(cls, *names: str) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(n, names) for n in names)

    @classmethod
    def from_univariate(cls, coeffs: Iterable[Number], name: str) -> "MultiPoly":
        return cls((name,), {(i,): c for i, c in enumerate(coeffs)})

    # -- variable bookkeeping ------------------------------------------------

    def with_variables(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-express over ``variables`` (a superset of the variables actually used)."""
        vs = tuple(variables)
        if vs == self.variables:
            return self
        index = {v: i for i, v in enumerate(vs)}
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * len(vs)
            for v, e in zip(self.variables, exp):
                if e:
                    if v not in index:
                        raise ValueError(f"variable {v!r} is used but missing from {vs}")
                    new[index[v]] = e
            out[tuple(new)] = c
        p = MultiPoly(vs)
        p.terms = out
        return p

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def trim(self) -> "MultiPoly":
        return self.with_variables(self.used_variables())

    def _merged(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        vs = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(vs), other.with_variables(vs)

    @staticmethod
    def _coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return MultiPoly.const(as_fraction(x))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        a, b = self._merged(self._coerce(other))
        out = dict(a.terms)
        for exp, c in b.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        p = MultiPoly(a.variables)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly(self.variables)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            p = MultiPoly(self.variables)
            p.terms = {e: v * c for e, v in self.terms.items()} if c else {}
            return p
        a, b = self._merged(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = MultiPoly(a.variables)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "MultiPoly":
        """Division by a nonzero rational constant."""
        c = as_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly._coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self._merged(other)
        return a.terms == b.terms

    def __hash__(self):
        t = self.trim()
        return hash((t.variables, frozenset(t.terms.items())))

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficients(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as a polynomial in ``var``: degree -> coefficient (``var`` removed)."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self.terms.items():
            buckets.setdefault(exp[i], {})[exp[:i] + exp[i + 1:]] = c
        out = {}
        for d, terms in buckets.items():
            p = MultiPoly(rest)
            p.terms = terms
            out[d] = p
        return out

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, "MultiPoly"], var: str) -> "MultiPoly":
        x = cls.var(var)
        total = cls.const(0)
        for d, c in coeffs.items():
            total = total + c * x ** d
        return total

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, bindings: Mapping[str, "MultiPoly | Number"]) -> "MultiPoly":
        """Ring homomorphism sending each bound variable to the given value."""
        if not self.terms:
            return MultiPoly()
        values = {k: self._coerce(v) for k, v in bindings.items()}
        kept = tuple(v for v in self.variables if v not in values)
        result = MultiPoly.const(0, kept)
        cache: dict[tuple[str, int], MultiPoly] = {}

        def power(name: str, e: int) -> MultiPoly:
            key = (name, e)
            if key not in cache:
                cache[key] = values[name] ** e
            return cache[key]

        for exp, c in self.terms.items():
            kept_exp = tuple(e for v, e in zip(self.variables, exp) if v not in values)
            term = MultiPoly(kept, {kept_exp: c})
            for v, e in zip(self.variables, exp):
                if e and v in values:
                    term = term * power(v, e)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        """Evaluate at a point binding every variable in use."""
        missing = set(self.used_variables()) - set(point)
        if missing:
            raise ValueError(f"unbound variables {sorted(missing)}")
        vals = [as_fraction(point[v]) if v in point else Fraction(0) for v in self.variables]
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for x, e in zip(vals, exp):
                if e:
                    t *= x ** e
            total += t
        return total

    def diff(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly.const(0, self.variables)
        i = self.variables.index(var)
        out = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return MultiPoly(self.variables, out)

    # -- division ------------------------------------------------------------

    def exact_div(self, divisor: "MultiPoly | Number") -> "MultiPoly":
        """Quotient of an exact division; raises ValueError if it is not exact."""
        d = self._coerce(divisor)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        a, d = self._merged(d)
        dexp, dc = d.leading_term()
        rem = a
        quotient = MultiPoly(a.variables)
        while rem.terms:
            rexp, rc = rem.leading_term()
            qexp = tuple(x - y for x, y in zip(rexp, dexp))
            if any(e < 0 for e in qexp):
                raise ValueError("division is not exact")
            q = MultiPoly(a.variables, {qexp: rc / dc})
            quotient = quotient + q
            rem = rem - q * d
        return quotient

    def sqrt(self) -> "MultiPoly | None":
        """Exact square root over Q if one exists, else None."""
        if self.is_zero():
            return MultiPoly(self.variables)
        lexp, lc = self.leading_term()
        if any(e % 2 for e in lexp):
            return None
        rn, rd = _isqrt_exact(lc.numerator), _isqrt_exact(lc.denominator)
        if rn is None or rd is None:
            return None
        head = tuple(e // 2 for e in lexp)
        root = MultiPoly(self.variables, {head: Fraction(rn, rd)})
        twice_lead = 2 * Fraction(rn, rd)
        last = head
        while True:
            rem = self - root * root
            if rem.is_zero():
                return root
            rexp, rc = rem.leading_term()
            qexp = tuple(x - y for x, y in zip(rexp, head))
            # Each new term must be strictly smaller than the previous one.
            if any(e < 0 for e in qexp) or _grlex_key(qexp) >= _grlex_key(last):
                return None
            root = root + MultiPoly(self.variables, {qexp: rc / twice_lead})
            last = qexp

    # -- output --------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical text: graded-lex descending, ``coeff * var^e`` joined by `` + ``."""
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = [format_rational(c)]
            for v, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def to_json_terms(self) -> list[dict]:
        out = []
        for exp, c in self.sorted_terms():
            out.append({
                "coeff": format_rational(c),
                "monomial": {v: e for v, e in zip(self.variables, exp) if e},
            })
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    def to_univariate(self, var: str) -> "UniPoly":
        """Convert to a UniPoly in ``var``; every other variable must be absent."""
        extra = set(self.used_variables()) - {var}
        if extra:
            raise ValueError(f"not univariate in {var!r}: also uses {sorted(extra)}")
        coeffs = self.coefficients(var)
        deg = max(coeffs, default=-1)
        return UniPoly([coeffs[d].constant_value() if d in coeffs else 0 for d in range(deg + 1)])


def _grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


def _isqrt_exact(k: int) -> int | None:
    if k < 0:
        return None
    from math import isqrt
    r = isqrt(k)
    return r if r * r == k else None


# ---------------------------------------------------------------------------
# Resultants over MultiPoly coefficients


def _bareiss_det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant (Bareiss), exact over polynomial entries."""
    m = [row[:] for row in matrix]
    size = len(m)
    if size == 0:
        return MultiPoly.const(1)
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(size - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not m[r][k].is_zero()), None)
            if swap is None:
                return MultiPoly.const(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign > 0 else -det


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    pc, qc = p.coefficients(var), q.coefficients(var)
    dp, dq = p.degree(var), q.degree(var)
    zero = MultiPoly.const(0)
    size = dp + dq
    rows = []
    for i in range(dq):
        row = [zero] * size
        for d, c in pc.items():
            row[i + dp - d] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * size
        for d, c in qc.items():
            row[i + dq - d] = c
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant in ``var`` as the Sylvester determinant."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    dp, dq = p.degree(var), q.degree(var)
    if dp == 0 and dq == 0:
        return MultiPoly.const(1)
    if dp == 0:
        return p.coefficients(var).get(0, p) ** dq
    if dq == 0:
        return q.coefficients(var).get(0, q) ** dp
    return _bareiss_det(sylvester_matrix(p, q, var)).trim()


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p)."""
    d = p.degree(var)
    if d < 1:
        raise ValueError("discriminant needs positive degree")
    lc = p.coefficients(var)[d]
    r = resultant(p, p.diff(var), var).exact_div(lc)
    return r if (d * (d - 1) // 2) % 2 == 0 else -r


# ---------------------------------------------------------------------------
# UniPoly


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies x^i, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    @staticmethod
    def _coerce(x) -> "UniPoly":
        return x if isinstance(x, UniPoly) else UniPoly([x])

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c:
                q[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(q), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly([c / self.lc for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "UniPoly") -> "UniPoly":
        total = UniPoly()
        for c in reversed(self.coeffs):
            total = total * inner + c
        return total

    def to_multipoly(self, var: str) -> MultiPoly:
        return MultiPoly.from_univariate(self.coeffs, var)

    def __str__(self) -> str:
        return self.to_multipoly("x").to_text()


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic, squarefree, pairwise coprime factors with multiplicities.

    ``p == p.lc * prod(f**m)``; constant factors are omitted.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        f = gcd(b, d)
        if f.degree > 0:
            out.append((f, i))
        b = b // f
        c = d // f
        d = c - b.derivative()
        i += 1
    return out


def uni_resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Resultant of two univariate polynomials via the Sylvester determinant."""
    r = resultant(p.to_multipoly("x"), q.to_multipoly("x"), "x")
    return r.constant_value() if not r.is_zero() else Fraction(0)


def uni_discriminant(p: UniPoly) -> Fraction:
    d = discriminant(p.to_multipoly("x"), "x")
    return d.constant_value() if not d.is_zero() else Fraction(0)


def monomials(variables: tuple[str, ...], degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree."""
    out = []
    for combo in combinations_with_replacement(range(len(variables)), degree):
        e = [0] * len(variables)
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out
