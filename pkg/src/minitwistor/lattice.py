"""Picard lattices of blown-up quadrics and of the resolved minitwistor surface.

A ``Lattice`` is a named basis with an integral Gram matrix and a canonical
class.  ``BlowupSurface`` grows a lattice from the quadric CP1 x CP1 by point
blow-ups while keeping a table of tracked curve classes.  ``SurfaceS`` and
``SurfaceT`` are the two concrete surfaces of the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .report import VerificationReport


# ---------------------------------------------------------------------------
# Exact linear algebra helpers


def solve_exact(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve a nonsingular square system over Q by Gauss-Jordan elimination."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n] for row in m]


def determinant(matrix: Sequence[Sequence[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def signature(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix, computed exactly."""
    m = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    idx = list(range(len(m)))
    while idx:
        piv = next((i for i in idx if m[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # Congruence by e_i -> e_i + e_j creates a nonzero diagonal entry.
            for k in range(len(m)):
                m[i][k] += m[j][k]
            for k in range(len(m)):
                m[k][i] += m[k][j]
            continue
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(piv)
        for i in idx:
            f = m[i][piv] / d
            if f:
                for k in idx:
                    m[i][k] -= f * m[piv][k]
        for i in idx:
            m[i][piv] = m[piv][i] = Fraction(0)
    return pos, neg, len(gram) - pos - neg


# ---------------------------------------------------------------------------
# Lattices and classes


@dataclass(frozen=True)
class Lattice:
    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...] | None = None

    def __post_init__(self):
        n = len(self.basis)
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("Gram matrix shape does not match the basis")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        if self.canonical is not None and len(self.canonical) != n:
            raise ValueError("canonical class has the wrong length")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        total = 0
        for i, a in enumerate(u):
            if a:
                row = self.gram[i]
                total += a * sum(row[j] * b for j, b in enumerate(v) if b)
        return total

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def e(self, name: str) -> "DivisorClass":
        i = self.basis.index(name)
        return DivisorClass(self, tuple(1 if k == i else 0 for k in range(self.rank)))

    def make(self, coeffs: Mapping[str, int]) -> "DivisorClass":
        unknown = set(coeffs) - set(self.basis)
        if unknown:
            raise KeyError(f"unknown basis names {sorted(unknown)}")
        return DivisorClass(self, tuple(coeffs.get(b, 0) for b in self.basis))

    @property
    def K(self) -> "DivisorClass":
        if self.canonical is None:
            raise ValueError("lattice has no canonical class")
        return DivisorClass(self, self.canonical)

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def determinant(self) -> int:
        d = determinant(self.gram)
        assert d.denominator == 1
        return d.numerator


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector in the basis of ``lattice``."""

    lattice: Lattice = field(repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise ValueError(
                f"class has {len(self.coeffs)} coefficients, lattice rank is {self.lattice.rank}"
            )

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a DivisorClass")
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("dimension mismatch between divisor classes")
        if other.lattice.basis != self.lattice.basis:
            raise ValueError("classes live in different lattices")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __matmul__(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.lattice.basis == other.lattice.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lattice.basis, self.coeffs))

    def as_dict(self) -> dict[str, int]:
        return {b: c for b, c in zip(self.lattice.basis, self.coeffs) if c}

    def __str__(self) -> str:
        parts = []
        for b, c in zip(self.lattice.basis, self.coeffs):
            if c:
                parts.append(f"{c:+d}{b}" if abs(c) != 1 else f"{'+' if c > 0 else '-'}{b}")
        s = " ".join(parts) or "0"
        return s[1:] if s.startswith("+") else s


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    d1._check(d2)
    return d1.lattice.pair(d1.coeffs, d2.coeffs)


def virtual_genus(d: DivisorClass) -> int:
    """Adjunction genus 1 + (D^2 + K.D)/2."""
    twice = d @ d + d.lattice.K @ d
    if twice % 2:
        raise ValueError(f"half-integral virtual genus for class {d}")
    return 1 + twice // 2


def sum_classes(classes: Iterable[DivisorClass], lattice: Lattice) -> DivisorClass:
    total = lattice.zero()
    for c in classes:
        total = total + c
    return total


# ---------------------------------------------------------------------------
# Blow-ups of the quadric


@dataclass(frozen=True)
class PointSpec:
    """Blow-up center: a smooth point on each named tracked curve.

    ``basis_name`` labels the new exceptional class; ``track_as`` records the
    exceptional curve itself in the curve table.
    """

    on_curves: tuple[str, ...] = ()
    basis_name: str | None = None
    track_as: str | None = None


@dataclass(frozen=True)
class BlowupSurface:
    lattice: Lattice
    history: tuple[PointSpec, ...]
    _curves: tuple[tuple[str, tuple[int, ...]], ...]

    @cached_property
    def curves(self) -> Mapping[str, DivisorClass]:
        return MappingProxyType({k: DivisorClass(self.lattice, v) for k, v in self._curves})

    @property
    def canonical(self) -> DivisorClass:
        return self.lattice.K

    @property
    def K(self) -> DivisorClass:
        return self.lattice.K

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def curve(self, name: str) -> DivisorClass:
        try:
            return self.curves[name]
        except KeyError:
            raise KeyError(f"unknown curve {name!r}") from None

    def with_curve(self, name: str, cls: DivisorClass) -> "BlowupSurface":
        if cls.lattice.basis != self.lattice.basis:
            raise ValueError("class belongs to another lattice")
        table = dict(self._curves)
        table[name] = cls.coeffs
        return BlowupSurface(self.lattice, self.history, tuple(table.items()))

    def renamed(self, mapping: Mapping[str, str]) -> "BlowupSurface":
        table = tuple((mapping.get(k, k), v) for k, v in self._curves)
        return BlowupSurface(self.lattice, self.history, table)


def new_base_quadric(curves: Mapping[str, Mapping[str, int]] | None = None) -> BlowupSurface:
    """CP1 x CP1 with ruling classes A, B; optional tracked curves given in that basis."""
    lat = Lattice(("A", "B"), ((0, 1), (1, 0)), (-2, -2))
    table = tuple((name, lat.make(c).coeffs) for name, c in (curves or {}).items())
    return BlowupSurface(lat, (), table)


def blow_up(s: BlowupSurface, p: PointSpec) -> BlowupSurface:
    for name in p.on_curves:
        if name not in s.curves:
            raise KeyError(f"unknown curve {name!r}")
    old = s.lattice
    k = len(s.history) + 1
    new_name = p.basis_name or f"x{k}"
    if new_name in old.basis:
        raise ValueError(f"basis name {new_name!r} already used")
    r = old.rank
    gram = tuple(row + (0,) for row in old.gram) + ((0,) * r + (-1,),)
    canonical = old.canonical + (1,)
    lat = Lattice(old.basis + (new_name,), gram, canonical)
    table = []
    for name, coeffs in s._curves:
        table.append((name, coeffs + ((-1,) if name in p.on_curves else (0,))))
    if p.track_as:
        table.append((p.track_as, (0,) * r + (1,)))
    return BlowupSurface(lat, s.history + (p,), tuple(table))


# ---------------------------------------------------------------------------
# The surface S


@dataclass(frozen=True)
class LatticeInvolution:
    """Permutation-type involution of a lattice, acting on coefficient vectors."""

    lattice: Lattice
    images: tuple[int, ...]  # basis index i is sent to basis index images[i]

    def __call__(self, d: DivisorClass) -> DivisorClass:
        out = [0] * self.lattice.rank
        for i, c in enumerate(d.coeffs):
            out[self.images[i]] += c
        return DivisorClass(self.lattice, tuple(out))

    def is_involution(self) -> bool:
        return all(self.images[self.images[i]] == i for i in range(len(self.images)))

    def is_isometry(self) -> bool:
        g = self.lattice.gram
        n = self.lattice.rank
        return all(g[self.images[i]][self.images[j]] == g[i][j] for i in range(n) for j in range(n))


def cycle_names(n: int) -> list[str]:
    """Anticanonical cycle in order C1..C_{n+1}, Cb1..Cb_{n+1}."""
    return [f"C{i}" for i in range(1, n + 2)] + [f"Cb{i}" for i in range(1, n + 2)]


def conjugate_name(name: str) -> str:
    if name.startswith("Cb") or name.startswith("Bb"):
        return name[0] + name[2:]
    if name[0] in "CB":
        return name[0] + "b" + name[1:]
    raise KeyError(name)


@dataclass(frozen=True)
class SurfaceS:
    n: int
    surface: BlowupSurface

    @property
    def lattice(self) -> Lattice:
        return self.surface.lattice

    @property
    def K(self) -> DivisorClass:
        return self.surface.K

    def __getitem__(self, name: str) -> DivisorClass:
        return self.surface.curve(name)

    @property
    def names(self) -> list[str]:
        return cycle_names(self.n) + ["B1", "B2", "Bb1", "Bb2"]

    def with_curve(self, name: str, cls: DivisorClass) -> "SurfaceS":
        return SurfaceS(self.n, self.surface.with_curve(name, cls))


def _s_basis(n: int) -> tuple[str, ...]:
    return ("A", "B") + tuple(f"e{i}" for i in range(1, n + 1)) + tuple(f"f{i}" for i in range(1, n + 1))


def B2_closed_form(lat: Lattice, n: int) -> DivisorClass:
    """A + (n-1)B - (e1+...+e_{n-1}) - (f1+...+f_n)."""
    coeffs = {"A": 1, "B": n - 1}
    for i in range(1, n):
        coeffs[f"e{i}"] = -1
    for i in range(1, n + 1):
        coeffs[f"f{i}"] = -1
    return lat.make(coeffs)


def build_surface_S(n: int) -> SurfaceS:
    """Blow up the quadric 2n times along two conjugate towers of infinitely near points.

    The P1 tower starts at the intersection of C1 (class A) with the ruling L
    (class B), continues n-2 times at C1 meeting the newest exceptional curve,
    and finishes at a general point of the last exceptional curve.  The P1-bar
    tower is its mirror image.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    s = new_base_quadric({"C1": {"A": 1}, "Cb1": {"A": 1}, "L": {"B": 1}, "Lb": {"B": 1}})
    for e, cur, line, ex in (("e", "C1", "L", "E"), ("f", "Cb1", "Lb", "Eb")):
        s = blow_up(s, PointSpec((cur, line), f"{e}1", f"{ex}1"))
        for k in range(2, n):
            s = blow_up(s, PointSpec((cur, f"{ex}{k - 1}"), f"{e}{k}", f"{ex}{k}"))
        s = blow_up(s, PointSpec((f"{ex}{n - 1}",), f"{e}{n}", f"{ex}{n}"))
    # Reorder the basis to A, B, e1..en, f1..fn (blow-ups already ran in that order).
    assert s.lattice.basis == _s_basis(n)
    rename = {"L": f"C{n + 1}", "Lb": f"Cb{n + 1}", f"E{n}": "B1", f"Eb{n}": "Bb1"}
    for k in range(1, n):
        rename[f"E{k}"] = f"C{n + 1 - k}"
        rename[f"Eb{k}"] = f"Cb{n + 1 - k}"
    s = s.renamed(rename)
    b2 = B2_closed_form(s.lattice, n)
    sigma = _conjugation_of(s.lattice, n)
    s = s.with_curve("B2", b2).with_curve("Bb2", sigma(b2))
    return SurfaceS(n, s)


def _conjugation_of(lat: Lattice, n: int) -> LatticeInvolution:
    idx = {b: i for i, b in enumerate(lat.basis)}
    images = list(range(lat.rank))
    for i in range(1, n + 1):
        a, b = idx[f"e{i}"], idx[f"f{i}"]
        images[a], images[b] = b, a
    return LatticeInvolution(lat, tuple(images))


def conjugation(s: SurfaceS) -> LatticeInvolution:
    """Real structure on H^2(S): fixes A and B, swaps e_i with f_i."""
    return _conjugation_of(s.lattice, s.n)


def restriction_target_B2(s: SurfaceS) -> DivisorClass:
    """B2 + conj(B2) as forced by (n-1)(-K) minus the cycle part and B1, B1-bar."""
    n = s.n
    rest = s.lattice.zero()
    for i in range(1, n + 1):
        coef = n - 2 if i == 1 else n + 1 - i
        rest = rest + coef * (s[f"C{i}"] + s[f"Cb{i}"])
    return (n - 1) * (-s.K) - rest - s["B1"] - s["Bb1"]


def search_B2_candidates(s: SurfaceS, bound: int | None = None, max_mult: int = 2) -> list[DivisorClass]:
    """Brute-force oracle for the class of B2.

    Enumerates aA + bB - sum m_i e_i - sum m'_i f_i with 0 <= m <= max_mult,
    |a|, |b| <= bound, subject to X^2 = -1, K.X = -1, X.B1-bar = 1, X.B1 = 0,
    and X + conj(X) equal to the class forced by the restriction of Y + Y-bar.
    """
    n = s.n
    bound = n if bound is None else bound
    lat = s.lattice
    sigma = conjugation(s)
    target = restriction_target_B2(s)
    found = []
    # X.B1 = m_n and X.B1-bar = m'_n pin the last multiplicities.
    for ms in product(range(max_mult + 1), repeat=2 * n - 2):
        m = list(ms[: n - 1]) + [0]
        mp = list(ms[n - 1:]) + [1]
        total = sum(m) + sum(mp)
        squares = sum(x * x for x in m) + sum(x * x for x in mp)
        # K.X = -2a - 2b + total = -1 and X^2 = 2ab - squares = -1.
        if (total + 1) % 2:
            continue
        sab = (total + 1) // 2
        two_ab = squares - 1
        if two_ab % 2:
            continue
        pab = two_ab // 2
        for a in range(-bound, bound + 1):
            b = sab - a
            if abs(b) > bound or a * b != pab:
                continue
            coeffs = {"A": a, "B": b}
            coeffs.update({f"e{i + 1}": -x for i, x in enumerate(m)})
            coeffs.update({f"f{i + 1}": -x for i, x in enumerate(mp)})
            x = lat.make(coeffs)
            if x + sigma(x) == target:
                found.append(x)
    return found


def validate_configuration(s: SurfaceS) -> VerificationReport:
    n = s.n
    rep = VerificationReport()
    K = s.K
    rep.check("S.rank", 2 * n + 2, s.lattice.rank)
    rep.check("S.K^2", 8 - 2 * n, K @ K)
    rep.check("S.K^2+rank", 10, K @ K + s.lattice.rank)
    rep.check("S.signature", (1, 2 * n + 1, 0), s.lattice.signature())
    for bar in ("", "b"):
        rep.check(f"S.C{bar}1^2", 1 - n, s[f"C{bar}1"] @ s[f"C{bar}1"])
        for i in range(2, n + 1):
            rep.check(f"S.C{bar}{i}^2", -2, s[f"C{bar}{i}"] @ s[f"C{bar}{i}"])
        rep.check(f"S.C{bar}{n + 1}^2", -1, s[f"C{bar}{n + 1}"] @ s[f"C{bar}{n + 1}"])
    cyc = cycle_names(n)
    m = len(cyc)
    for i, j in combinations(range(m), 2):
        adjacent = (j - i) in (1, m - 1)
        rep.check(f"S.{cyc[i]}.{cyc[j]}", 1 if adjacent else 0, s[cyc[i]] @ s[cyc[j]])
    rep.check("S.cycle=-K", (-K).coeffs, sum_classes((s[c] for c in cyc), s.lattice).coeffs)
    for b in ("B1", "B2", "Bb1", "Bb2"):
        rep.check(f"S.{b}^2", -1, s[b] @ s[b])
    rep.check("S.B1.C2", 1, s["B1"] @ s["C2"])
    rep.check("S.Bb1.Cb2", 1, s["Bb1"] @ s["Cb2"])
    rep.check("S.B2.Bb1", 1, s["B2"] @ s["Bb1"])
    rep.check("S.Bb2.B1", 1, s["Bb2"] @ s["B1"])
    rep.check("S.B1.B2", 0, s["B1"] @ s["B2"])
    rep.check("S.Bb1.Bb2", 0, s["Bb1"] @ s["Bb2"])
    for name in s.names:
        rep.check(f"S.genus.{name}", 0, virtual_genus(s[name]))
    sigma = conjugation(s)
    rep.check("S.conj.involution", True, sigma.is_involution())
    rep.check("S.conj.isometry", True, sigma.is_isometry())
    rep.check("S.conj.K", K.coeffs, sigma(K).coeffs)
    for name in s.names:
        rep.check(f"S.conj.{name}", s[conjugate_name(name)].coeffs, sigma(s[name]).coeffs)
    return rep


# ---------------------------------------------------------------------------
# The resolved minitwistor surface T


def t_basis(n: int) -> tuple[str, ...]:
    return (
        ("Gamma", "f", "s3+")
        + tuple(f"d{i}" for i in range(4, n + 2))
        + ("s2-",)
        + tuple(f"f{j}" for j in range(1, n - 1))
    )


def t_gram(n: int) -> tuple[tuple[int, ...], ...]:
    """Intersection matrix on the 2n generating curves.

    Gamma is a section with Gamma^2 = 1 - n meeting s2-, the end curve
    f_{n-2} of the long fiber string, and every other '-' component; f is a
    fiber class; s3+, d_i, s2- are disjoint (-1)-curves; f_1..f_{n-2} form a
    chain ending in the (-1)-curve f_{n-2}.
    """
    basis = t_basis(n)
    idx = {b: i for i, b in enumerate(basis)}
    g = [[0] * len(basis) for _ in basis]

    def put(a, b, v):
        g[idx[a]][idx[b]] = v
        g[idx[b]][idx[a]] = v

    put("Gamma", "Gamma", 1 - n)
    put("Gamma", "f", 1)
    put("Gamma", "s2-", 1)
    put("Gamma", f"f{n - 2}", 1)
    for b in ["s3+", "s2-"] + [f"d{i}" for i in range(4, n + 2)]:
        put(b, b, -1)
    for j in range(1, n - 1):
        put(f"f{j}", f"f{j}", -1 if j == n - 2 else -2)
        if j + 1 <= n - 2:
            put(f"f{j}", f"f{j + 1}", 1)
    return tuple(tuple(r) for r in g)


@dataclass(frozen=True)
class SurfaceT:
    n: int
    lattice: Lattice
    classes: Mapping[str, DivisorClass]
    fibers: tuple[tuple[str, tuple[str, ...]], ...]

    def __getitem__(self, name: str) -> DivisorClass:
        return self.classes[name]

    @property
    def K(self) -> DivisorClass:
        return self.lattice.K

    @property
    def C0(self) -> DivisorClass:
        return self.classes["C0"]

    @property
    def h(self) -> DivisorClass:
        return self.classes["h"]


def _solve_class(lat_basis, gram, pairings: Mapping[str, int]) -> tuple[int, ...]:
    rhs = [pairings[b] for b in lat_basis]
    sol = solve_exact(gram, rhs)
    if any(x.denominator != 1 for x in sol):
        raise ValueError(f"pairings {pairings} do not define an integral class")
    return tuple(int(x) for x in sol)


def build_minitwistor_T(n: int) -> SurfaceT:
    if n < 3:
        raise ValueError("n must be at least 3")
    basis = t_basis(n)
    gram = t_gram(n)
    # Canonical class from adjunction on every basis curve: K.C = -2 - C^2
    # for the rational curves, K.f = -2 for the fiber.
    k_pair = {}
    for i, b in enumerate(basis):
        k_pair[b] = -2 if b == "f" else -2 - gram[i][i]
    canonical = _solve_class(basis, gram, k_pair)
    lat = Lattice(basis, gram, canonical)
    e = lat.e
    chain = sum_classes((e(f"f{j}") for j in range(1, n - 1)), lat)
    weighted_chain = sum_classes((j * e(f"f{j}") for j in range(1, n - 1)), lat)
    ds = sum_classes((e(f"d{i}") for i in range(4, n + 2)), lat)
    # The conjugate section meets exactly the components Gamma misses.
    gbar_pair = {b: 0 for b in basis}
    gbar_pair.update({"f": 1, "s3+": 1})
    gbar_pair.update({f"d{i}": 1 for i in range(4, n + 2)})
    gamma_bar = DivisorClass(lat, _solve_class(basis, gram, gbar_pair))
    f = e("f")
    classes: dict[str, DivisorClass] = {b: e(b) for b in basis}
    classes["K"] = lat.K
    classes["Gammabar"] = gamma_bar
    classes["C0"] = 2 * e("Gamma") + (n - 1) * f + e("s2-") + weighted_chain - e("s3+") - ds
    classes["h"] = e("Gamma") + e("s2-") + weighted_chain
    classes["s1+"] = f - chain
    classes["s2+"] = f - e("s2-")
    classes["s3-"] = f - e("s3+")
    for i in range(4, n + 2):
        classes[f"s{i}-"] = f - e(f"d{i}")
    fibers = [("lambda1", ("s1+",) + tuple(f"f{j}" for j in range(1, n - 1))),
              ("lambda2", ("s2+", "s2-")),
              ("lambda3", ("s3+", "s3-"))]
    fibers += [(f"lambda{i}", (f"d{i}", f"s{i}-")) for i in range(4, n + 2)]
    return SurfaceT(n, lat, MappingProxyType(classes), tuple(fibers))


def check_C0_numbers(n: int) -> VerificationReport:
    t = build_minitwistor_T(n)
    c0, K, f = t.C0, t.K, t["f"]
    rep = VerificationReport()
    rep.check("T.rank", 2 * n, t.lattice.rank)
    rep.check("T.c1^2", 10 - 2 * n, K @ K)
    rep.check("T.signature", (1, 2 * n - 1, 0), t.lattice.signature())
    rep.check("T.unimodular", 1, abs(t.lattice.determinant()))
    rep.check("T.f^2", 0, f @ f)
    rep.check("T.K.f", -2, K @ f)
    rep.check("T.C0^2", 2 * n - 2, c0 @ c0)
    rep.check("T.K.C0", -4, K @ c0)
    rep.check("T.C0.genus", n - 2, virtual_genus(c0))
    rep.check("T.h.C0", n - 1, t.h @ c0)
    rep.check("T.C0.f", 2, c0 @ f)
    rep.check("T.C0.Gamma", 0, c0 @ t["Gamma"])
    rep.check("T.C0.s2-", 1, c0 @ t["s2-"])
    gb = t["Gammabar"]
    rep.check("T.Gammabar^2", 1 - n, gb @ gb)
    rep.check("T.Gamma.Gammabar", 0, t["Gamma"] @ gb)
    rep.check("T.Gammabar.genus", 0, virtual_genus(gb))
    rep.check("T.reducible_fibers", n + 1, len(t.fibers))
    rep.check("T.fiber_components", 3 * n - 1, sum(len(c) for _, c in t.fibers))
    for label, comps in t.fibers:
        total = sum_classes((t[c] for c in comps), t.lattice)
        rep.check(f"T.fiber.{label}.sum", f.coeffs, total.coeffs)
        for c in comps:
            cls = t[c]
            rep.check(f"T.fiber.{label}.{c}.square_in(-1,-2)", True, cls @ cls in (-1, -2))
            rep.check(f"T.fiber.{label}.{c}.genus", 0, virtual_genus(cls))
    return rep
