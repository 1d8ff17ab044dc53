"""Exact graded Betti numbers.

* S/in(J) through Hochster's formula on the Stanley-Reisner complex.
* S/J through homology of the Koszul complex K(x, y; S/J), split by the
  Z^n x Z^2 multigrading (deg x_v = (e_v, (1,0)), deg y_v = (e_v, (0,1)))
  that binomial edge ideals carry.

Both run over GF(p), or over Q when p = 0.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import SimplicialComplex
from .grobner import DEFAULT_CHAR, MonomialIdeal, Polynomial, PolyRing, normal_form

HOCHSTER_FULL_CAP = 14
HOCHSTER_CORNER_CAP = 24
KOSZUL_CAP = 16


class CapExceeded(RuntimeError):
    """The requested computation is beyond the desk-scale size caps."""


# -- linear algebra ---------------------------------------------------------------------

def rank(columns, char: int = DEFAULT_CHAR) -> int:
    """Rank of a sparse matrix given as columns {row: value} over GF(char) (Q if char == 0)."""
    pivots: dict[int, dict] = {}
    r = 0
    for col in columns:
        if char:
            v = {k: x % char for k, x in col.items() if x % char}
        else:
            v = {k: Fraction(x) for k, x in col.items() if x}
        while v:
            piv = max(v)
            row = pivots.get(piv)
            if row is None:
                c = v[piv]
                inv = pow(c, -1, char) if char else 1 / c
                pivots[piv] = {k: (x * inv) % char if char else x * inv for k, x in v.items()}
                r += 1
                break
            c = v[piv]
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if char:
                    nv %= char
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return r


# -- simplicial homology --------------------------------------------------------------

def _boundary_rank(upper: list[int], lower: list[int], char: int) -> int:
    if not upper or not lower:
        return 0
    index = {m: k for k, m in enumerate(lower)}
    cols = []
    for face in upper:
        col = {}
        pos = 0
        bits = face
        while bits:
            low = bits & -bits
            col[index[face ^ low]] = -1 if pos % 2 else 1
            pos += 1
            bits ^= low
        cols.append(col)
    return rank(cols, char)


def homology_ranks(cx: SimplicialComplex, char: int = DEFAULT_CHAR, within: int | None = None,
                   dims=None) -> dict[int, int]:
    """Reduced homology dimensions {k: dim H~_k} of ``cx`` (restricted to the vertex mask ``within``).

    ``dims`` limits the computation to the listed k; faces are only
    enumerated up to the sizes those k need.
    """
    if dims is None:
        levels = cx.faces_by_size(within)
        wanted = range(-1, len(levels) - 1)
    else:
        wanted = sorted(set(dims))
        levels = cx.faces_by_size(within, max_size=max(wanted) + 2)
    out = {}
    ranks: dict[int, int] = {}

    def rk(s: int) -> int:  # rank of the boundary from size-s faces to size-(s-1) faces
        if s not in ranks:
            if s <= 0 or s >= len(levels):
                ranks[s] = 0
            else:
                ranks[s] = _boundary_rank(levels[s], levels[s - 1], char)
        return ranks[s]

    for k in wanted:
        s = k + 1
        f = len(levels[s]) if 0 <= s < len(levels) else 0
        out[k] = f - rk(s) - rk(s + 1)
    return out


# -- Betti tables ------------------------------------------------------------------------

@dataclass
class ExtremalCorners:
    corners: list[tuple[int, int, int]]  # (i, j - i, value)

    @property
    def unique(self) -> bool:
        return len(self.corners) == 1


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    nvars: int
    subject: str  # "J" or "inJ"
    char: int = DEFAULT_CHAR
    cells: frozenset | None = None  # computed (i, j) cells; None means the whole table
    fine: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        self.entries = {k: v for k, v in sorted(self.entries.items()) if v}

    @property
    def complete(self) -> bool:
        return self.cells is None

    def __getitem__(self, ij: tuple[int, int]) -> int:
        if self.cells is not None and ij not in self.cells:
            raise KeyError(f"cell {ij} was not computed")
        return self.entries.get(ij, 0)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self.entries)

    @property
    def projdim(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def cm_type(self) -> int:
        p = self.projdim
        return sum(v for (i, _), v in self.entries.items() if i == p)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def corners(self) -> ExtremalCorners:
        out = []
        for (i, j), v in self.entries.items():
            l = j - i
            if not any((k, m) != (i, j) and k >= i and m - k >= l for k, m in self.entries):
                out.append((i, l, v))
        return ExtremalCorners(sorted(out))

    def linear_strand(self, i: int) -> int:
        return self.get(i, i + 1)

    def to_json(self) -> dict:
        return {"subject": self.subject, "nvars": self.nvars, "char": self.char,
                "complete": self.complete,
                "entries": {f"{i},{j}": v for (i, j), v in self.entries.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        entries = {tuple(int(x) for x in k.split(",")): v for k, v in data["entries"].items()}
        return cls(entries, data["nvars"], data["subject"], data.get("char", DEFAULT_CHAR))

    def grid(self) -> str:
        """Rows i, columns j - i."""
        if not self.entries:
            return "(zero table)"
        rmax = self.reg
        pmax = self.projdim
        head = "i\\j-i " + " ".join(f"{l:>6}" for l in range(rmax + 1))
        lines = [head]
        for i in range(pmax + 1):
            row = [self.get(i, i + l) for l in range(rmax + 1)]
            lines.append(f"{i:>5} " + " ".join(f"{v if v else '.':>6}" for v in row))
        return "\n".join(lines)


def invariants_from_table(t: BettiTable) -> tuple[int, int, int, ExtremalCorners]:
    if not t.complete:
        raise ValueError("table is incomplete: invariants need every cell")
    return t.reg, t.projdim, t.cm_type, t.corners()


def convolve(a: BettiTable, b: BettiTable) -> BettiTable:
    """Table of the tensor product of two resolutions (disjoint variable sets)."""
    out: dict = {}
    for (i1, j1), v1 in a.entries.items():
        for (i2, j2), v2 in b.entries.items():
            out[(i1 + i2, j1 + j2)] = out.get((i1 + i2, j1 + j2), 0) + v1 * v2
    return BettiTable(out, a.nvars + b.nvars, a.subject, a.char)


# -- Hochster ---------------------------------------------------------------------------

def stanley_reisner(ideal: MonomialIdeal) -> SimplicialComplex:
    if not ideal.squarefree:
        raise ValueError("Stanley-Reisner complex needs a squarefree monomial ideal")
    return SimplicialComplex(ideal.nvars, tuple(ideal.supports()))


def _hochster_chunk(cx: SimplicialComplex, masks: list[int], wanted: dict[int, list[int]] | None,
                    char: int) -> list[tuple[int, int, int]]:
    out = []
    nonfaces = cx.nonfaces
    for w in masks:
        j = w.bit_count()
        union = 0
        for g in nonfaces:
            if g & w == g:
                union |= g
        if union != w:
            continue  # some vertex of W is a cone point, Delta_W is acyclic
        if wanted is None:
            hom = homology_ranks(cx, char, within=w)
            for k, h in hom.items():
                if h:
                    out.append((j - k - 1, w, h))
        else:
            iis = wanted[j]
            hom = homology_ranks(cx, char, within=w, dims=[j - i - 1 for i in iis])
            for i in iis:
                h = hom[j - i - 1]
                if h:
                    out.append((i, w, h))
    return out


def _masks_of_size(nvars: int, j: int):
    for c in itertools.combinations(range(nvars), j):
        yield sum(1 << v for v in c)


def hochster_betti(ideal: MonomialIdeal, char: int = DEFAULT_CHAR, cells=None,
                   threads: int = 1, chunk: int = 256) -> BettiTable:
    """beta_{i,j}(S/I) = sum over |W| = j of dim H~_{j-i-1}(Delta_W).

    ``cells`` restricts the work to a set of (i, j); the table then records
    which cells it holds.  The fine data {(i, W): value} is kept on the table.
    """
    N = ideal.nvars
    cx = stanley_reisner(ideal)
    if cells is None:
        if N > HOCHSTER_FULL_CAP:
            raise CapExceeded(f"full Hochster table needs 2n <= {HOCHSTER_FULL_CAP} (got {N})")
        masks = list(range(1 << N))
        wanted = None
    else:
        if N > HOCHSTER_CORNER_CAP:
            raise CapExceeded(f"Hochster corner mode needs 2n <= {HOCHSTER_CORNER_CAP} (got {N})")
        cells = frozenset(cells)
        wanted: dict[int, list[int]] = {}
        for i, j in cells:
            if 0 <= j <= N and i >= 0:
                wanted.setdefault(j, []).append(i)
        masks = [w for j in sorted(wanted) for w in _masks_of_size(N, j)]
    chunks = [masks[k:k + chunk] for k in range(0, len(masks), chunk)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda ms: _hochster_chunk(cx, ms, wanted, char), chunks))
    else:
        parts = [_hochster_chunk(cx, ms, wanted, char) for ms in chunks]
    fine: dict = {}
    entries: dict = {}
    for part in parts:
        for i, w, h in part:
            fine[(i, w)] = h
            j = w.bit_count()
            entries[(i, j)] = entries.get((i, j), 0) + h
    return BettiTable(entries, N, "inJ", char, cells, fine)


def hochster_corner(ideal: MonomialIdeal, p: int, r: int, char: int = DEFAULT_CHAR,
                    threads: int = 1) -> BettiTable:
    """The cell (p, p+r) plus its neighbours (p+1, p+1+r) and (p, p+r+1)."""
    cells = {(p, p + r), (p + 1, p + 1 + r), (p, p + r + 1)}
    return hochster_betti(ideal, char, cells, threads)


# -- Koszul ------------------------------------------------------------------------------

class KoszulComplex:
    """Multigraded pieces of K(x_1..x_n, y_1..y_n) tensored with S/J.

    A multidegree is (a, bx): a in N^n counts x_v and y_v together, bx is the
    total x-degree.  Graded pieces of S/J are spanned by standard monomials.
    """

    def __init__(self, ring: PolyRing, gb: list[Polynomial], inj: MonomialIdeal):
        self.ring = ring
        self.gb = gb
        self.inj = inj
        self.n = ring.n
        self._std: dict = {}
        self._nf: dict = {}
        self._basis: dict = {}
        self._rank: dict = {}

    def standard_monomials(self, a: tuple[int, ...], bx: int) -> list[tuple[int, ...]]:
        key = (a, bx)
        if key not in self._std:
            out = []
            for c in itertools.product(*(range(av + 1) for av in a)):
                if sum(c) != bx:
                    continue
                m = tuple(c) + tuple(av - cv for av, cv in zip(a, c))
                if not self.inj.contains(m):
                    out.append(m)
            self._std[key] = out
        return self._std[key]

    def basis(self, i: int, a: tuple[int, ...], bx: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        key = (i, a, bx)
        if key in self._basis:
            return self._basis[key]
        n = self.n
        out = []
        if 0 <= i <= 2 * n:
            cand = [v for v in range(n) if a[v]] + [n + v for v in range(n) if a[v]]
            cand.sort()
            for E in itertools.combinations(cand, i):
                rest = list(a)
                ex = 0
                ok = True
                for z in E:
                    v = z if z < n else z - n
                    rest[v] -= 1
                    if rest[v] < 0:
                        ok = False
                        break
                    ex += z < n
                if not ok or ex > bx:
                    continue
                rb = bx - ex
                if rb > sum(rest):
                    continue
                for m in self.standard_monomials(tuple(rest), rb):
                    out.append((E, m))
        self._basis[key] = out
        return out

    def _times(self, z: int, m: tuple[int, ...]) -> list[tuple[tuple[int, ...], object]]:
        key = (z, m)
        if key not in self._nf:
            mono = list(m)
            mono[z] += 1
            mono = tuple(mono)
            if self.inj.contains(mono):
                nf = normal_form(Polynomial(self.ring, {mono: 1}), self.gb)
                self._nf[key] = list(nf.terms.items())
            else:
                self._nf[key] = [(mono, 1)]
        return self._nf[key]

    def differential_rank(self, i: int, a: tuple[int, ...], bx: int) -> int:
        """Rank of K_i -> K_{i-1} in multidegree (a, bx)."""
        key = (i, a, bx)
        if key in self._rank:
            return self._rank[key]
        if i <= 0:
            self._rank[key] = 0
            return 0
        src = self.basis(i, a, bx)
        tgt = self.basis(i - 1, a, bx)
        if not src or not tgt:
            self._rank[key] = 0
            return 0
        index = {b: k for k, b in enumerate(tgt)}
        cols = []
        for E, m in src:
            col: dict = {}
            for pos, z in enumerate(E):
                sign = -1 if pos % 2 else 1
                E2 = E[:pos] + E[pos + 1:]
                for t, c in self._times(z, m):
                    row = index[(E2, t)]
                    col[row] = col.get(row, 0) + sign * c
            cols.append(col)
        r = rank(cols, self.ring.char)
        self._rank[key] = r
        return r

    def betti(self, i: int, a: tuple[int, ...], bx: int) -> int:
        dim = len(self.basis(i, a, bx))
        if not dim:
            return 0
        return dim - self.differential_rank(i, a, bx) - self.differential_rank(i + 1, a, bx)


def multidegree_of_mask(w: int, n: int) -> tuple[tuple[int, ...], int]:
    a = tuple(((w >> v) & 1) + ((w >> (n + v)) & 1) for v in range(n))
    bx = (w & ((1 << n) - 1)).bit_count()
    return a, bx


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def koszul_betti(ring: PolyRing, gb: list[Polynomial], inj: MonomialIdeal, support=None,
                 j_max: int | None = None, i_range=None, threads: int = 1,
                 cap: int = KOSZUL_CAP) -> BettiTable:
    """Betti table of S/J from Koszul homology.

    ``support`` is an iterable of (i, a, bx) multidegree cells to evaluate;
    every other cell is taken as zero.  Passing the support of S/in(J) is
    exact by upper semicontinuity of graded Betti numbers under Groebner
    degeneration.  Without ``support`` every multidegree with total degree
    at most ``j_max`` is evaluated.  ``cap`` may be raised by experiment
    scripts that evaluate a handful of cells beyond the table cap.
    """
    N = ring.nvars
    if N > cap:
        raise CapExceeded(f"Koszul tables need 2n <= {cap} (got {N})")
    n = ring.n
    if support is None:
        if j_max is None:
            raise ValueError("unrestricted Koszul mode needs j_max")
        ii = set(i_range) if i_range is not None else None
        cells = []
        for j in range(j_max + 1):
            for a in _compositions(j, n):
                for bx in range(j + 1):
                    for i in range(min(N, j) + 1):
                        if ii is None or i in ii:
                            cells.append((i, a, bx))
    else:
        cells = sorted(set(support))
        if j_max is not None:
            cells = [c for c in cells if sum(c[1]) <= j_max]
        if i_range is not None:
            ii = set(i_range)
            cells = [c for c in cells if c[0] in ii]
    kc = KoszulComplex(ring, gb, inj)
    if threads > 1:
        # one complex per worker keeps the caches unshared; results merge in cell order
        groups = [cells[k::threads] for k in range(threads)]

        def work(group):
            local = KoszulComplex(ring, gb, inj)
            return [(c, local.betti(*c)) for c in group]

        with ThreadPoolExecutor(threads) as pool:
            results = dict(r for part in pool.map(work, groups) for r in part)
        values = [(c, results[c]) for c in cells]
    else:
        values = [(c, kc.betti(*c)) for c in cells]
    entries: dict = {}
    fine: dict = {}
    for (i, a, bx), v in values:
        if v:
            fine[(i, a, bx)] = v
            j = sum(a)
            entries[(i, j)] = entries.get((i, j), 0) + v
    computed = None
    if support is None:
        computed = frozenset((i, j) for j in range(j_max + 1) for i in range(min(N, j) + 1)
                             if i_range is None or i in set(i_range))
    return BettiTable(entries, N, "J", ring.char, computed, fine)


def support_from_fine(t: BettiTable, n: int) -> set[tuple[int, tuple[int, ...], int]]:
    return {(i,) + multidegree_of_mask(w, n) for (i, w) in t.fine}
