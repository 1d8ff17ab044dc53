"""The exact pipeline: Groebner basis, Hochster on in(J), Koszul on J."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .betti import HOCHSTER_CORNER_CAP, HOCHSTER_FULL_CAP, KOSZUL_CAP, BettiTable, CapExceeded, \
    hochster_betti, hochster_corner, koszul_betti, support_from_fine
from .graphs import Graph
from .grobner import DEFAULT_CHAR, groebner_of_graph
from .hilbert import HilbertData, hilbert_data

METHODS = ("auto", "hochster", "koszul")


@dataclass
class OracleConfig:
    char: int = DEFAULT_CHAR
    method: str = "auto"
    threads: int = 1
    max_degree: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")


@dataclass
class OracleResult:
    n: int
    nvars: int
    mode: str  # "full" or "corner"
    inj_table: BettiTable
    j_table: BettiTable | None
    hilbert: HilbertData
    reg: int | None = None
    projdim: int | None = None
    extremal_betti: int | None = None
    cm_type: int | None = None
    corners: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def table(self) -> BettiTable:
        """The J-table when it exists, otherwise the in(J) table."""
        return self.j_table if self.j_table is not None else self.inj_table

    def to_json(self) -> dict:
        return {"n": self.n, "nvars": self.nvars, "mode": self.mode, "reg": self.reg,
                "projdim": self.projdim, "extremal_betti": self.extremal_betti,
                "cm_type": self.cm_type, "corners": [list(c) for c in self.corners],
                "notes": list(self.notes), "timings": dict(self.timings)}


def corner_cells(hd: HilbertData) -> tuple[int, int]:
    """(p, r) read off the Hilbert series: p = N - d and r = deg h, valid when S/in(J) is CM."""
    return hd.nvars - hd.d, len(hd.h) - 1


def run_oracle(g: Graph, cfg: OracleConfig | None = None) -> OracleResult:
    cfg = cfg or OracleConfig()
    N = 2 * g.n
    full = N <= HOCHSTER_FULL_CAP
    if cfg.method == "koszul" and N > KOSZUL_CAP:
        raise CapExceeded(f"Koszul tables need 2n <= {KOSZUL_CAP} (got {N})")
    if not full and N > HOCHSTER_CORNER_CAP:
        raise CapExceeded(f"Hochster corner mode needs 2n <= {HOCHSTER_CORNER_CAP} (got {N})")
    clock = time.perf_counter
    t0 = clock()
    ring, gb, inj = groebner_of_graph(g, cfg.char)
    t1 = clock()
    if not inj.squarefree:
        raise ValueError("initial ideal is not squarefree; Hochster's formula does not apply")
    hd = hilbert_data(inj)
    timings = {"groebner": t1 - t0, "hilbert": clock() - t1}

    t2 = clock()
    if full:
        inj_table = hochster_betti(inj, cfg.char, threads=cfg.threads)
    else:
        p, r = corner_cells(hd)
        inj_table = hochster_corner(inj, p, r, cfg.char, cfg.threads)
    timings["hochster"] = clock() - t2
    res = OracleResult(g.n, N, "full" if full else "corner", inj_table, None, hd, timings=timings)

    run_koszul = cfg.method == "koszul" or (cfg.method == "auto" and full)
    if run_koszul:
        t3 = clock()
        if full:
            support = support_from_fine(inj_table, g.n)
            res.j_table = koszul_betti(ring, gb, inj, support=support, j_max=cfg.max_degree,
                                       threads=cfg.threads)
            if cfg.max_degree is not None and cfg.max_degree < max(j for _, j in inj_table.entries):
                res.j_table.cells = frozenset((i, j) for i in range(N + 1)
                                              for j in range(cfg.max_degree + 1))
        else:
            p, r = corner_cells(hd)
            j_max = cfg.max_degree if cfg.max_degree is not None else p + r
            res.j_table = koszul_betti(ring, gb, inj, j_max=j_max, threads=cfg.threads)
            res.notes.append(f"unrestricted Koszul sweep through degree {j_max}")
        timings["koszul"] = clock() - t3

    _fill_invariants(res)
    return res


def _fill_invariants(res: OracleResult) -> None:
    jt = res.j_table
    if jt is not None and jt.complete:
        res.reg, res.projdim, res.cm_type = jt.reg, jt.projdim, jt.cm_type
        res.corners = jt.corners().corners
        if len(res.corners) == 1:
            res.extremal_betti = res.corners[0][2]
        return
    if jt is not None:
        res.notes.append("J-table truncated by the degree bound: corners not certified from it")
    t = res.inj_table
    if t.complete:
        res.reg, res.projdim = t.reg, t.projdim
        res.corners = t.corners().corners
        if len(res.corners) == 1:
            res.extremal_betti = res.corners[0][2]
        res.notes.append(f"reg, projdim and corners from in(J) (equal for J); "
                         f"CM-type of in(J) is {t.cm_type}, only an upper bound for J")
        return
    p, r = corner_cells(res.hilbert)
    v = t[(p, p + r)]
    if v and not t[(p + 1, p + 1 + r)] and not t[(p, p + r + 1)]:
        res.reg, res.projdim, res.extremal_betti = r, p, v
        res.corners = [(p, r, v)]
        res.notes.append("corner mode: p = 2n - d and r = deg h, which presumes S/in(J) Cohen-Macaulay")
    else:
        res.notes.append(f"corner mode could not certify a corner at ({p}, {p + r})")
