"""Simple graphs on vertices 1..n and the constructors for the CM families.

Composite constructors place the parts in argument order and append new
vertices (apexes, fan vertices) last.  Every constructor records how the
input labels were moved in ``Graph.provenance``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    """Raised when a constructor's precondition fails."""


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    provenance: dict | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {{{u},{v}}} outside 1..{self.n}")
            norm.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], provenance=None) -> "Graph":
        return cls(n, frozenset(_edge(int(u), int(v)) for u, v in edges), provenance)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def neighbors(self, v: int) -> set[int]:
        return self.adjacency()[v]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def leaves(self) -> list[int]:
        adj = self.adjacency()
        return [v for v in self.vertices if len(adj[v]) == 1]

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``keep``, relabeled 1..k in increasing order."""
        keep = sorted(set(keep))
        relabel = {old: new for new, old in enumerate(keep, start=1)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel]
        return Graph.from_edges(len(keep), edges), relabel

    def remove_vertex(self, u: int) -> tuple["Graph", dict[int, int]]:
        return self.induced(v for v in self.vertices if v != u)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_edges(int(data["n"]), data["edges"])


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and len(g.edges) == len(h.edges) and nx.is_isomorphic(g.to_networkx(), h.to_networkx())


# -- family constructors -----------------------------------------------------

def complete_graph(m: int) -> Graph:
    if m < 1:
        raise GraphError("complete graph needs m >= 1")
    return Graph.from_edges(m, itertools.combinations(range(1, m + 1), 2),
                            {"op": "K", "m": m})


def bipartite_fm(m: int) -> Graph:
    """F_m on [2m]: edges {2i, 2j-1} for 1 <= i <= j <= m."""
    if m < 1:
        raise GraphError("F_m needs m >= 1")
    edges = [(2 * i, 2 * j - 1) for i in range(1, m + 1) for j in range(i, m + 1)]
    return Graph.from_edges(2 * m, edges, {"op": "Fm", "m": m})


@dataclass(frozen=True)
class FanBlock:
    """Fan on the ordered set ``vertices``; ``sizes[i]`` is the clique size h_{i+1}."""
    vertices: tuple[int, ...]
    sizes: tuple[int, ...]

    @classmethod
    def pure(cls, vertices: Sequence[int]) -> "FanBlock":
        return cls(tuple(vertices), tuple(i + 2 for i in range(len(vertices))))

    @property
    def is_pure(self) -> bool:
        return all(h == i + 2 for i, h in enumerate(self.sizes))


def fan_graph(m: int, blocks: Sequence[FanBlock | Sequence[int]]) -> Graph:
    """K_m with one fan per block.

    A block given as a plain sequence of vertices is pure.  New vertices are
    numbered m+1, m+2, ... in block order, then clique order.
    """
    if m < 2:
        raise GraphError("fan graph needs m >= 2")
    blocks = [b if isinstance(b, FanBlock) else FanBlock.pure(b) for b in blocks]
    used: set[int] = set()
    edges = set(itertools.combinations(range(1, m + 1), 2))
    nxt = m + 1
    attached = []
    for b in blocks:
        if len(b.sizes) != len(b.vertices):
            raise GraphError("fan block needs one clique size per vertex")
        if not b.vertices:
            raise GraphError("empty fan block")
        for v in b.vertices:
            if not 1 <= v <= m:
                raise GraphError(f"fan vertex {v} outside [m]")
            if v in used:
                raise GraphError(f"fan blocks overlap at {v}")
            used.add(v)
        new_block = []
        for i, h in enumerate(b.sizes, start=1):
            if h <= i:
                raise GraphError(f"clique size h_{i}={h} must exceed {i}")
            prefix = b.vertices[:i]
            new = list(range(nxt, nxt + h - i))
            nxt += h - i
            clique = list(prefix) + new
            edges.update(_edge(u, v) for u, v in itertools.combinations(clique, 2))
            new_block.append(new)
        attached.append(new_block)
    return Graph.from_edges(nxt - 1, edges,
                            {"op": "fan", "m": m,
                             "blocks": [(list(b.vertices), list(b.sizes)) for b in blocks],
                             "new_vertices": attached})


def _shifted(parts: Sequence[Graph]) -> tuple[list[tuple[int, int]], list[dict[int, int]], int]:
    edges, maps, off = [], [], 0
    for g in parts:
        mp = {v: v + off for v in g.vertices}
        edges.extend((mp[u], mp[v]) for u, v in g.edges)
        maps.append(mp)
        off += g.n
    return edges, maps, off


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    if not parts:
        raise GraphError("disjoint union of nothing")
    edges, maps, n = _shifted(parts)
    return Graph.from_edges(n, edges, {"op": "du", "maps": maps})


def cone(parts: Sequence[Graph]) -> Graph:
    """Apex (labeled last) joined to every vertex of every part."""
    if not parts:
        raise GraphError("cone over an empty list of parts")
    edges, maps, n = _shifted(parts)
    apex = n + 1
    edges.extend((v, apex) for v in range(1, n + 1))
    return Graph.from_edges(apex, edges, {"op": "cone", "maps": maps, "apex": apex})


def glue_star(g1: Graph, f1: int, g2: Graph, f2: int) -> Graph:
    """(G1, f1) * (G2, f2): identify the leaves f1 and f2."""
    if g1.degree(f1) != 1:
        raise GraphError(f"{f1} is not a leaf of the first graph")
    if g2.degree(f2) != 1:
        raise GraphError(f"{f2} is not a leaf of the second graph")
    m1 = {v: v for v in g1.vertices}
    m2, nxt = {}, g1.n + 1
    for v in g2.vertices:
        if v == f2:
            m2[v] = f1
        else:
            m2[v] = nxt
            nxt += 1
    edges = list(g1.edges) + [(m2[u], m2[v]) for u, v in g2.edges]
    return Graph.from_edges(nxt - 1, edges,
                            {"op": "star", "maps": [m1, m2], "identified": f1})


def glue_circ(g1: Graph, f1: int, g2: Graph, f2: int) -> Graph:
    """(G1, f1) o (G2, f2): drop both leaves and identify their neighbours."""
    for g, f, name in ((g1, f1, "first"), (g2, f2, "second")):
        if g.degree(f) != 1:
            raise GraphError(f"{f} is not a leaf of the {name} graph")
    (v1,) = g1.neighbors(f1)
    (v2,) = g2.neighbors(f2)
    if g1.degree(v1) < 3 or g2.degree(v2) < 3:
        raise GraphError("the neighbour of each glued leaf needs degree >= 3")
    m1, nxt = {}, 1
    for v in g1.vertices:
        if v != f1:
            m1[v] = nxt
            nxt += 1
    m2 = {}
    for v in g2.vertices:
        if v == f2:
            continue
        if v == v2:
            m2[v] = m1[v1]
        else:
            m2[v] = nxt
            nxt += 1
    edges = [(m1[u], m1[v]) for u, v in g1.edges if f1 not in (u, v)]
    edges += [(m2[u], m2[v]) for u, v in g2.edges if f2 not in (u, v)]
    return Graph.from_edges(nxt - 1, edges,
                            {"op": "circ", "maps": [m1, m2], "identified": m1[v1]})


# -- decompositions ------------------------------------------------------------

@dataclass(frozen=True)
class CutpointSplit:
    """G', G'' and H of the cutpoint exact sequence.

    ``g_prime`` keeps the labels of G; ``g_double_prime`` and ``h`` live on
    V(G) minus u, relabeled through ``relabel`` (old -> new).
    """
    g_prime: Graph
    g_double_prime: Graph
    h: Graph
    u: int
    relabel: dict[int, int]


def cutpoint_split(g: Graph, u: int) -> CutpointSplit:
    if not 1 <= u <= g.n:
        raise GraphError(f"{u} is not a vertex")
    g2, relabel = g.remove_vertex(u)
    if len(g2.components()) <= len(g.components()):
        raise GraphError(f"{u} is not a cutpoint")
    nbrs = g.neighbors(u)
    gp = Graph.from_edges(g.n, set(g.edges) | {_edge(a, b) for a, b in itertools.combinations(nbrs, 2)},
                          {"op": "cutpoint G'", "u": u})
    h, _ = gp.remove_vertex(u)
    return CutpointSplit(gp, g2, h, u, relabel)


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on vertices 0..vertex_count-1 given by its minimal nonfaces (bitmasks)."""
    vertex_count: int
    nonfaces: tuple[int, ...]

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        fmasks = [sum(1 << v for v in f) for f in facets]
        faces = {0}
        for fm in fmasks:
            bits = [1 << v for v in range(vertex_count) if fm >> v & 1]
            for r in range(len(bits) + 1):
                for c in itertools.combinations(bits, r):
                    faces.add(sum(c))
        nonfaces = []
        for r in range(1, vertex_count + 1):
            for c in itertools.combinations(range(vertex_count), r):
                mask = sum(1 << v for v in c)
                if mask in faces:
                    continue
                if all((mask & ~(1 << v)) in faces for v in c):
                    nonfaces.append(mask)
        return cls(vertex_count, tuple(nonfaces))

    def _nonfaces_by_top(self) -> dict[int, list[int]]:
        by_top: dict[int, list[int]] = {}
        for g in self.nonfaces:
            by_top.setdefault(g.bit_length() - 1, []).append(g)
        return by_top

    def faces_by_size(self, within: int | None = None, max_size: int | None = None) -> list[list[int]]:
        """Faces grouped by cardinality, each a bitmask; index 0 holds the empty face."""
        if within is None:
            within = (1 << self.vertex_count) - 1
        verts = [v for v in range(self.vertex_count) if within >> v & 1]
        by_top = self._nonfaces_by_top()
        if max_size is None:
            max_size = len(verts)
        levels = [[(0, -1)]]
        while len(levels) <= max_size and levels[-1]:
            nxt = []
            for mask, top in levels[-1]:
                for v in verts:
                    if v <= top:
                        continue
                    cand = mask | (1 << v)
                    if all(cand & g != g for g in by_top.get(v, ())):
                        nxt.append((cand, v))
            if not nxt:
                break
            levels.append(nxt)
        return [[m for m, _ in lvl] for lvl in levels]

    def f_vector(self) -> list[int]:
        """(f_{-1}, f_0, ..., f_{dim})."""
        return [len(lvl) for lvl in self.faces_by_size()]

    def facets(self) -> list[frozenset[int]]:
        levels = self.faces_by_size()
        out = []
        allfaces = [m for lvl in levels for m in lvl]
        for lvl in levels:
            for m in lvl:
                if not any(o != m and o & m == m for o in allfaces):
                    out.append(frozenset(v for v in range(self.vertex_count) if m >> v & 1))
        return out

    @property
    def dimension(self) -> int:
        return len(self.f_vector()) - 2


def clique_complex(g: Graph) -> tuple[SimplicialComplex, list[int]]:
    """Clique complex (vertex i of G is vertex i-1) and its f-vector (f_{-1}, f_0, ...)."""
    nonedges = [(1 << (u - 1)) | (1 << (v - 1))
                for u, v in itertools.combinations(g.vertices, 2) if (u, v) not in g.edges]
    cx = SimplicialComplex(g.n, tuple(nonedges))
    fv = [1] + [0] * g.n
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        fv[len(clique)] += 1
    while len(fv) > 1 and fv[-1] == 0:
        fv.pop()
    return cx, fv


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    return sorted((frozenset(c) for c in nx.find_cliques(g.to_networkx())), key=sorted)


@dataclass
class Classification:
    leaves: list[int]
    free_vertices: list[int]
    cutpoints: list[int]
    pieces: list[tuple[Graph, dict[int, int]]]  # (piece, new label -> label in G)
    shared: list[int]  # vertices where pieces were split


def _decompose(g: Graph, keep: list[int], out: list, shared: list) -> None:
    sub, relabel = g.induced(keep)
    back = {new: old for old, new in relabel.items()}
    cliques = maximal_cliques(sub)
    for v in sub.vertices:
        mine = [c for c in cliques if v in c]
        if len(mine) != 2:
            continue
        rest, _ = sub.remove_vertex(v)
        if len(rest.components()) != 2:
            continue
        # the two cliques lie in different components of sub - v, so v is free on each side
        side = set(mine[0]) - {v}
        adj = sub.adjacency()
        seen, stack = set(side), list(side)
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b != v and b not in seen:
                    seen.add(b)
                    stack.append(b)
        if set(mine[1]) - {v} & seen:
            continue
        left = sorted(back[a] for a in seen | {v})
        right = sorted(back[a] for a in set(sub.vertices) - seen)
        shared.append(back[v])
        _decompose(g, left, out, shared)
        _decompose(g, right, out, shared)
        return
    out.append((sub, back))


def classify(g: Graph) -> Classification:
    adj = g.adjacency()
    cliques = maximal_cliques(g)
    free = [v for v in g.vertices if sum(1 for c in cliques if v in c) == 1]
    ncomp = len(g.components())
    cut = [v for v in g.vertices if len(g.remove_vertex(v)[0].components()) > ncomp]
    pieces: list = []
    shared: list[int] = []
    for comp in g.components():
        _decompose(g, comp, pieces, shared)
    pieces.sort(key=lambda pc: min(pc[1].values()))
    return Classification(leaves=[v for v in g.vertices if len(adj[v]) == 1],
                          free_vertices=free, cutpoints=cut, pieces=pieces,
                          shared=sorted(shared))


def connected_graphs(max_n: int) -> list[Graph]:
    """One labeled representative per isomorphism class of connected graphs on 1..max_n vertices."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for a in nx.graph_atlas_g():
        if 1 <= a.number_of_nodes() <= max_n and nx.is_connected(a):
            out.append(Graph.from_edges(a.number_of_nodes(), [(u + 1, v + 1) for u, v in a.edges()],
                                        {"op": "atlas"}))
    return out
