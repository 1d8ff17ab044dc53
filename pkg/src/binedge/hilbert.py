"""Hilbert functions and Hilbert-Poincare series of S/J_G.

J and in(J) share their Hilbert function, so everything here works on the
initial ideal.  Polynomials are coefficient lists indexed by degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .betti import BettiTable
from .grobner import MonomialIdeal, Polynomial, initial_ideal


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]  # p(t), with HS = p(t) / (1-t)^N
    h: tuple[int, ...]
    d: int  # Krull dimension
    nvars: int

    @property
    def a_invariant(self) -> int:
        return len(self.h) - 1 - self.d

    @property
    def multiplicity(self) -> int:
        return sum(self.h)

    def to_json(self) -> dict:
        return {"p": list(self.numerator), "h": list(self.h), "d": self.d, "a": self.a_invariant}


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _as_ideal(obj) -> MonomialIdeal:
    if isinstance(obj, MonomialIdeal):
        return obj
    if obj and isinstance(obj[0], Polynomial):
        return initial_ideal(list(obj))
    raise TypeError("expected a MonomialIdeal or a Groebner basis")


def hilbert_function(ideal, deg: int) -> int:
    """dim (S/J)_deg: the number of degree-``deg`` monomials outside in(J)."""
    if deg < 0:
        return 0
    ideal = _as_ideal(ideal)
    N = ideal.nvars
    gens = ideal.gens
    count = 0
    mono = [0] * N

    def walk(start: int, left: int) -> None:
        nonlocal count
        if any(all(mono[k] >= g[k] for k in range(N)) for g in gens):
            return  # every extension stays in the ideal
        if left == 0:
            count += 1
            return
        for v in range(start, N):
            mono[v] += 1
            walk(v, left - 1)
            mono[v] -= 1

    walk(0, deg)
    return count


def _poly_add(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for k, c in enumerate(b):
        out[k + shift] += c
    return out


def hilbert_numerator(ideal) -> tuple[int, ...]:
    """p(t) with HS(S/I) = p(t)/(1-t)^N, via HS(S/I) = HS(S/(I+x)) + t HS(S/(I:x))."""
    ideal = _as_ideal(ideal)
    N = ideal.nvars
    memo: dict = {}

    def minimal(gens):
        gens = sorted(set(gens), key=lambda g: (sum(g), g))
        out = []
        for g in gens:
            if not any(all(o[k] <= g[k] for k in range(N)) for o in out):
                out.append(g)
        return tuple(sorted(out))

    def rec(gens: tuple) -> list[int]:
        if gens in memo:
            return memo[gens]
        nonlinear = [g for g in gens if sum(g) > 1]
        if not nonlinear:
            res = [1]
            for _ in gens:  # each variable generator multiplies by (1 - t)
                res = _poly_add(res, [-c for c in res], 1)
        else:
            counts = [0] * N
            for g in nonlinear:
                for k, a in enumerate(g):
                    if a:
                        counts[k] += 1
            x = max(range(N), key=lambda k: (counts[k], -k))
            unit = tuple(1 if k == x else 0 for k in range(N))
            plus = minimal([g for g in gens if not g[x]] + [unit])
            colon = minimal([tuple(a - 1 if k == x and a else a for k, a in enumerate(g)) for g in gens])
            res = _poly_add(rec(plus), rec(colon), 1)
        memo[gens] = res
        return res

    return tuple(_trim(rec(minimal(ideal.gens))))


def numerator_from_betti(t: BettiTable) -> tuple[int, ...]:
    """p(t) = sum (-1)^i beta_{i,j} t^j."""
    if not t.complete:
        raise ValueError("numerator needs a complete Betti table")
    top = max((j for _, j in t.entries), default=0)
    p = [0] * (top + 1)
    for (i, j), v in t.entries.items():
        p[j] += (-1) ** i * v
    return tuple(_trim(p))


def reduce_to_h(p, nvars: int) -> HilbertData:
    """Divide p(t) by (1-t) as often as possible."""
    p = _trim(list(p))
    if not any(p):
        raise ValueError("zero numerator")
    q = list(p)
    k = 0
    while sum(q) == 0 and k < nvars:
        # synthetic division by (1 - t): quotient coefficients are partial sums
        acc, out = 0, []
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        k += 1
    return HilbertData(tuple(p), tuple(_trim(q)), nvars - k, nvars)


def hilbert_data(ideal) -> HilbertData:
    ideal = _as_ideal(ideal)
    return reduce_to_h(hilbert_numerator(ideal), ideal.nvars)


def h_from_f(f, d: int) -> tuple[int, ...]:
    """h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}; ``f`` starts at f_{-1}."""
    f = list(f)
    if len(f) > d + 1:
        raise ValueError(f"f-vector of length {len(f)} does not fit dimension {d}")
    f += [0] * (d + 1 - len(f))
    return tuple(sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
                 for k in range(d + 1))


def series_coefficients(p, nvars: int, upto: int) -> list[int]:
    """Coefficients of p(t)/(1-t)^nvars through degree ``upto``."""
    return [sum(c * comb(k - j + nvars - 1, nvars - 1) for j, c in enumerate(p) if j <= k)
            for k in range(upto + 1)]


@dataclass
class HilbertLemmaReport:
    lc_h: int
    corner: int
    sign: int  # (-1)^(p+d)
    abs_match: bool
    signed_match: bool
    cm: bool
    deg_h: int
    reg: int
    degree_match: bool | None  # deg h = reg, checked for CM subjects
    a_invariant: int
    a_bound: int  # reg - depth

    @property
    def passed(self) -> bool:
        return self.abs_match and self.degree_match is not False

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("lc_h", "corner", "sign", "abs_match", "signed_match",
                                             "cm", "deg_h", "reg", "degree_match", "a_invariant",
                                             "a_bound")} | {"passed": self.passed}


def verify_hilbert_lemmas(t: BettiTable, hd: HilbertData) -> HilbertLemmaReport:
    """Compare the top h-coefficient with the extremal Betti number, and deg h with reg."""
    corners = t.corners()
    if not corners.unique:
        raise ValueError("table has no unique extremal corner")
    p, r, beta = corners.corners[0]
    depth = t.nvars - p
    cm = depth == hd.d
    sign = (-1) ** (p + hd.d)
    lc = hd.h[-1]
    deg_h = len(hd.h) - 1
    return HilbertLemmaReport(lc_h=lc, corner=beta, sign=sign, abs_match=abs(lc) == beta,
                              signed_match=lc == sign * beta, cm=cm, deg_h=deg_h, reg=t.reg,
                              degree_match=(deg_h == t.reg) if cm else None,
                              a_invariant=hd.a_invariant, a_bound=t.reg - depth)
