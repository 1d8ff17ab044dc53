"""Family expressions: the constructor grammar shared by the builder,
the closed-form engine and the command line.

Grammar::

    expr  := K(m) | Fm(m) | fan(m; block, ...) | cone(expr, ...)
           | du(expr, ...) | star(expr, expr, ...) | circ(expr, expr, ...)
    block := s                      pure block on s vertices
           | [h1, h2, ...]          clique sizes of a general block
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .graphs import FanBlock, Graph, GraphError, bipartite_fm, complete_graph, cone, \
    disjoint_union, fan_graph, glue_circ, glue_star


class ExprError(ValueError):
    """Syntax error or grammar-guard violation."""

    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


@dataclass(frozen=True)
class Complete:
    m: int


@dataclass(frozen=True)
class BipartiteFm:
    m: int


@dataclass(frozen=True)
class Fan:
    """K_m with fans on consecutive vertex blocks W_1 = {1..s_1}, W_2 = next s_2, ...

    ``blocks[b][i]`` is the clique size h_{i+1} of block b.
    """
    m: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def pure(cls, m: int, sizes) -> "Fan":
        return cls(m, tuple(tuple(i + 2 for i in range(s)) for s in sizes))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def is_pure(self) -> bool:
        return all(h == i + 2 for b in self.blocks for i, h in enumerate(b))


@dataclass(frozen=True)
class Cone:
    parts: tuple


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple


@dataclass(frozen=True)
class Star:
    left: object
    right: object


@dataclass(frozen=True)
class Circ:
    chain: tuple


FamilyExpr = Union[Complete, BipartiteFm, Fan, Cone, DisjointUnion, Star, Circ]


def validate(e) -> None:
    if isinstance(e, Complete):
        if e.m < 1:
            raise ExprError("K(m) needs m >= 1")
    elif isinstance(e, BipartiteFm):
        if e.m < 1:
            raise ExprError("Fm(m) needs m >= 1")
    elif isinstance(e, Fan):
        if e.m < 2:
            raise ExprError("fan(m; ...) needs m >= 2")
        if sum(e.sizes) > e.m:
            raise ExprError("fan blocks use more than m vertices")
        for b in e.blocks:
            if not b:
                raise ExprError("empty fan block")
            for i, h in enumerate(b, start=1):
                if h <= i:
                    raise ExprError(f"fan clique size h_{i}={h} must exceed {i}")
    elif isinstance(e, (Cone, DisjointUnion)):
        if not e.parts:
            raise ExprError("cone/du need at least one part")
        for p in e.parts:
            validate(p)
    elif isinstance(e, Star):
        validate(e.left)
        validate(e.right)
    elif isinstance(e, Circ):
        if len(e.chain) < 2:
            raise ExprError("circ needs at least two entries")
        for x in e.chain[:-1]:
            if not (isinstance(x, BipartiteFm) and x.m >= 3):
                raise ExprError("circ: every entry but the last must be Fm(m) with m >= 3")
        last = e.chain[-1]
        if isinstance(last, BipartiteFm):
            if last.m < 3:
                raise ExprError("circ: a final Fm(m) needs m >= 3")
        elif isinstance(last, Fan):
            validate(last)
            if not last.is_pure or last.m < 3 or not last.blocks:
                raise ExprError("circ: a final fan must be pure, with m >= 3 and at least one block")
        else:
            raise ExprError("circ: the last entry must be Fm(m) or a pure fan")
    else:
        raise ExprError(f"not a family expression: {e!r}")


# -- printing --------------------------------------------------------------------

def to_str(e) -> str:
    if isinstance(e, Complete):
        return f"K({e.m})"
    if isinstance(e, BipartiteFm):
        return f"Fm({e.m})"
    if isinstance(e, Fan):
        if not e.blocks:
            return f"fan({e.m})"
        parts = []
        for b in e.blocks:
            if all(h == i + 2 for i, h in enumerate(b)):
                parts.append(str(len(b)))
            else:
                parts.append("[" + ",".join(map(str, b)) + "]")
        return f"fan({e.m}; {','.join(parts)})"
    if isinstance(e, Cone):
        return "cone(" + ", ".join(map(to_str, e.parts)) + ")"
    if isinstance(e, DisjointUnion):
        return "du(" + ", ".join(map(to_str, e.parts)) + ")"
    if isinstance(e, Star):
        return f"star({to_str(e.left)}, {to_str(e.right)})"
    if isinstance(e, Circ):
        return "circ(" + ", ".join(map(to_str, e.chain)) + ")"
    raise ExprError(f"not a family expression: {e!r}")


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(1):
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("sym", m.group(3), m.start(3)))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.toks[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ExprError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("int")[1])

    def expr(self):
        _, name, pos = self.take("name")
        key = name.lower()
        self.take("sym", "(")
        if key == "k":
            e = Complete(self.integer())
        elif key == "fm":
            e = BipartiteFm(self.integer())
        elif key == "fan":
            m = self.integer()
            blocks = []
            if self.peek()[1] == ";":
                self.take("sym", ";")
                blocks.append(self.block())
                while self.peek()[1] == ",":
                    self.take("sym", ",")
                    blocks.append(self.block())
            e = Fan(m, tuple(blocks))
        elif key in ("cone", "du", "star", "circ"):
            parts = [self.expr()]
            while self.peek()[1] == ",":
                self.take("sym", ",")
                parts.append(self.expr())
            if key == "cone":
                e = Cone(tuple(parts))
            elif key == "du":
                e = DisjointUnion(tuple(parts))
            elif key == "circ":
                e = Circ(tuple(parts))
            else:
                if len(parts) < 2:
                    raise ExprError("star needs at least two operands", pos)
                e = parts[0]
                for p in parts[1:]:
                    e = Star(e, p)
        else:
            raise ExprError(f"unknown constructor {name!r}", pos)
        self.take("sym", ")")
        try:
            validate(e)
        except ExprError as err:
            raise ExprError(str(err), pos) from None
        return e

    def block(self) -> tuple[int, ...]:
        if self.peek()[1] == "[":
            self.take("sym", "[")
            sizes = [self.integer()]
            while self.peek()[1] == ",":
                self.take("sym", ",")
                sizes.append(self.integer())
            self.take("sym", "]")
            return tuple(sizes)
        s = self.integer()
        return tuple(i + 2 for i in range(s))


def parse_expr(text: str):
    p = _Parser(text)
    e = p.expr()
    p.take("end")
    return e


# -- construction ----------------------------------------------------------------

def _fan_blocks(e: Fan) -> list[FanBlock]:
    out, start = [], 1
    for b in e.blocks:
        out.append(FanBlock(tuple(range(start, start + len(b))), tuple(b)))
        start += len(b)
    return out


def in_leaf(g: Graph) -> int:
    """Leaf used when ``g`` is the right operand of a gluing: the lowest-labeled leaf."""
    leaves = g.leaves()
    if not leaves:
        raise GraphError("graph has no leaf")
    return leaves[0]


def out_leaf(g: Graph) -> int:
    """Leaf used when ``g`` is the left operand of a gluing: the highest-labeled leaf."""
    leaves = g.leaves()
    if not leaves:
        raise GraphError("graph has no leaf")
    return leaves[-1]


def _circ_in_leaf(g: Graph, e) -> int:
    if isinstance(e, BipartiteFm):
        return 1
    if isinstance(e, Fan):
        return e.m + 1  # leaf of block 1, adjacent to vertex 1 of W_1
    raise ExprError("circ entries are Fm or fans")


def build(e) -> Graph:
    """Graph of a family expression with the canonical labeling."""
    validate(e)
    if isinstance(e, Complete):
        return complete_graph(e.m)
    if isinstance(e, BipartiteFm):
        return bipartite_fm(e.m)
    if isinstance(e, Fan):
        return fan_graph(e.m, _fan_blocks(e))
    if isinstance(e, Cone):
        return cone([build(p) for p in e.parts])
    if isinstance(e, DisjointUnion):
        return disjoint_union([build(p) for p in e.parts])
    if isinstance(e, Star):
        g1, g2 = build(e.left), build(e.right)
        return glue_star(g1, out_leaf(g1), g2, in_leaf(g2))
    if isinstance(e, Circ):
        return build_circ(e)[0]
    raise ExprError(f"not a family expression: {e!r}")


def build_circ(e: Circ) -> tuple[Graph, list[int]]:
    """Fold the chain left to right.

    Each F_{m_i} is glued on the left through its leaf 1 and offers its leaf
    2m_i (the leaf of vertex 2m_i - 1) to the next entry.  Returns the graph
    and the identified vertex of every gluing step.
    """
    validate(e)
    first = e.chain[0]
    g = bipartite_fm(first.m)
    free_leaf = 2 * first.m
    joins = []
    for nxt in e.chain[1:]:
        h = build(nxt)
        f2 = _circ_in_leaf(h, nxt)
        g = glue_circ(g, free_leaf, h, f2)
        m1, m2 = g.provenance["maps"]
        joins = [m1[v] for v in joins] + [g.provenance["identified"]]
        if isinstance(nxt, BipartiteFm):
            free_leaf = m2[2 * nxt.m]
    g = Graph(g.n, g.edges, {"op": "circ", "expr": to_str(e), "joins": joins})
    return g, joins
