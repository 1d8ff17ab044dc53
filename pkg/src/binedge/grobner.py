"""Sparse polynomials over GF(p) (or Q when p = 0) and lex Groebner bases.

Variables are ordered x_1 > ... > x_n > y_1 > ... > y_n and an exponent
vector is stored as a tuple (x_1..x_n, y_1..y_n), so Python's tuple
comparison is exactly the lex order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

DEFAULT_CHAR = 32003

Monomial = tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PolyRing:
    n: int
    char: int = DEFAULT_CHAR

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"field characteristic {self.char} is not prime")

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def var_name(self, k: int) -> str:
        return f"x{k + 1}" if k < self.n else f"y{k - self.n + 1}"

    def norm(self, c):
        if self.char:
            return c % self.char
        return Fraction(c)

    def inv(self, c):
        if self.char:
            return pow(c, -1, self.char)
        return 1 / Fraction(c)

    def var(self, k: int) -> Monomial:
        e = [0] * self.nvars
        e[k] = 1
        return tuple(e)

    def x(self, i: int) -> Monomial:
        return self.var(i - 1)

    def y(self, i: int) -> Monomial:
        return self.var(self.n + i - 1)

    def poly(self, terms: dict) -> "Polynomial":
        return Polynomial(self, terms)

    def monomial_str(self, e: Monomial) -> str:
        parts = []
        for k, a in enumerate(e):
            if a == 1:
                parts.append(self.var_name(k))
            elif a > 1:
                parts.append(f"{self.var_name(k)}^{a}")
        return "*".join(parts) or "1"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        clean = {}
        for m, c in terms.items():
            c = ring.norm(c)
            if c:
                clean[m] = c
        self.terms = clean
        self._lm = max(clean) if clean else None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def lm(self) -> Monomial:
        return self._lm

    @property
    def lc(self):
        return self.terms[self._lm]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), reverse=True)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.ring, t)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c, mono: Monomial | None = None) -> "Polynomial":
        if mono is None:
            return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})
        return Polynomial(self.ring, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(self.ring, t)

    def monic(self) -> "Polynomial":
        return self.scale(self.ring.inv(self.lc)) if self else self

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            if self.ring.char and c > self.ring.char // 2:
                c = c - self.ring.char
            mono = self.ring.monomial_str(m)
            if mono == "1":
                out.append(str(c))
            elif c in (1, -1):
                out.append(("-" if c == -1 else "") + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


def binomial_edge_generators(g, ring: PolyRing | None = None) -> list[Polynomial]:
    """x_i y_j - x_j y_i for each edge {i, j} with i < j (leading term x_i y_j)."""
    ring = ring or PolyRing(g.n)
    out = []
    for i, j in g.sorted_edges():
        a = [0] * ring.nvars
        a[i - 1] += 1
        a[ring.n + j - 1] += 1
        b = [0] * ring.nvars
        b[j - 1] += 1
        b[ring.n + i - 1] += 1
        out.append(ring.poly({tuple(a): 1, tuple(b): -1}))
    return out


def normal_form(f: Polynomial, basis: list[Polynomial]) -> Polynomial:
    """Full reduction of f by ``basis``: no remaining term is divisible by a leading monomial."""
    ring = f.ring
    work = dict(f.terms)
    rem: dict = {}
    lead = [(g.lm, g.ring.inv(g.lc), g) for g in basis if g]
    while work:
        m = max(work)
        c = work.pop(m)
        for lm, ilc, g in lead:
            if divides(lm, m):
                q = mono_div(m, lm)
                factor = c * ilc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mono_mul(gm, q)
                    v = ring.norm(work.get(t, 0) - factor * gc)
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
    return Polynomial(ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    l = mono_lcm(f.lm, g.lm)
    return (f.scale(f.ring.inv(f.lc), mono_div(l, f.lm))
            - g.scale(g.ring.inv(g.lc), mono_div(l, g.lm)))


def _select_key(pair, basis):
    i, j = pair
    l = mono_lcm(basis[i].lm, basis[j].lm)
    return (sum(l), l, i, j)


def buchberger(gens: list[Polynomial]) -> list[Polynomial]:
    """Reduced lex Groebner basis, sorted by leading monomial."""
    basis = [g.monic() for g in gens if g]
    if not basis:
        return []
    pairs = {(i, j) for i, j in combinations(range(len(basis)), 2)}
    while pairs:
        pair = min(pairs, key=lambda pr: _select_key(pr, basis))
        pairs.discard(pair)
        i, j = pair
        fi, fj = basis[i], basis[j]
        l = mono_lcm(fi.lm, fj.lm)
        if mono_mul(fi.lm, fj.lm) == l:
            continue  # coprime leading monomials
        if any(k != i and k != j and divides(basis[k].lm, l)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue  # chain criterion
        h = normal_form(s_polynomial(fi, fj), basis)
        if h:
            basis.append(h.monic())
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))
    return reduce_basis(basis)


def reduce_basis(basis: list[Polynomial]) -> list[Polynomial]:
    basis = [g.monic() for g in basis if g]
    minimal = []
    for k, g in enumerate(basis):
        dominated = False
        for k2, h in enumerate(basis):
            if k2 == k:
                continue
            if divides(h.lm, g.lm) and (h.lm != g.lm or k2 < k):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = normal_form(g - g.ring.poly({g.lm: g.lc}), others)
        out.append(g.ring.poly({g.lm: 1}) + tail)
    return sorted(out, key=lambda p: p.lm)


def is_groebner_basis(basis: list[Polynomial]) -> bool:
    """Buchberger certificate: every S-polynomial reduces to zero."""
    return all(not normal_form(s_polynomial(f, g), basis) for f, g in combinations(basis, 2))


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, nvars: int, monos) -> "MonomialIdeal":
        monos = sorted(set(monos))
        minimal = [m for m in monos if not any(o != m and divides(o, m) for o in monos)]
        return cls(nvars, tuple(sorted(minimal)))

    @property
    def squarefree(self) -> bool:
        return all(a <= 1 for m in self.gens for a in m)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def supports(self) -> list[int]:
        """Generator supports as bitmasks over the variables."""
        return [sum(1 << k for k, a in enumerate(m) if a) for m in self.gens]


def initial_ideal(basis: list[Polynomial]) -> MonomialIdeal:
    if not basis:
        raise ValueError("empty basis: the initial ideal needs the ring size, use MonomialIdeal directly")
    return MonomialIdeal.from_monomials(basis[0].ring.nvars, [g.lm for g in basis])


def groebner_of_graph(g, char: int = DEFAULT_CHAR) -> tuple[PolyRing, list[Polynomial], MonomialIdeal]:
    ring = PolyRing(g.n, char)
    gb = buchberger(binomial_edge_generators(g, ring))
    inj = MonomialIdeal.from_monomials(ring.nvars, [p.lm for p in gb])
    return ring, gb, inj
