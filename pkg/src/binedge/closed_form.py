"""Closed formulas for reg, projdim, the extremal Betti number and the
Cohen-Macaulay type of S/J_G over the family grammar.

Every evaluator raises :class:`NoClosedForm` with a reason when the
expression falls outside the proven cases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .expr import BipartiteFm, Circ, Complete, Cone, DisjointUnion, Fan, Star, to_str, validate

REMARK_CIRC = "no closed form (see Remark: F4 o F3 has CM-type 29 while the extremal Betti number is 5)"


class NoClosedForm(Exception):
    """The expression is outside the cases covered by a proven formula."""


@dataclass
class InvariantReport:
    expr: str
    n: int
    reg: int | None = None
    projdim: int | None = None
    extremal_betti: int | None = None
    cm_type: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"expr": self.expr, "n": self.n, "reg": self.reg, "projdim": self.projdim,
                "extremal_betti": self.extremal_betti, "cm_type": self.cm_type,
                "notes": list(self.notes)}


def sum_of_squares(m: int) -> int:
    return sum(k * k for k in range(1, m))


# -- structural helpers -------------------------------------------------------------

def n_vertices(e) -> int:
    if isinstance(e, Complete):
        return e.m
    if isinstance(e, BipartiteFm):
        return 2 * e.m
    if isinstance(e, Fan):
        return e.m + sum(h - i for b in e.blocks for i, h in enumerate(b, start=1))
    if isinstance(e, Cone):
        return 1 + sum(n_vertices(p) for p in e.parts)
    if isinstance(e, DisjointUnion):
        return sum(n_vertices(p) for p in e.parts)
    if isinstance(e, Star):
        return n_vertices(e.left) + n_vertices(e.right) - 1
    if isinstance(e, Circ):
        return sum(n_vertices(x) for x in e.chain) - 3 * (len(e.chain) - 1)
    raise NoClosedForm(f"unknown expression {e!r}")


def components(e) -> list:
    """Connected pieces of an expression (disjoint unions flattened)."""
    if isinstance(e, DisjointUnion):
        return [c for p in e.parts for c in components(p)]
    return [e]


def _complete_size(e) -> int | None:
    """m when the expression builds K_m, else None."""
    if isinstance(e, Complete):
        return e.m
    if isinstance(e, BipartiteFm) and e.m == 1:
        return 2
    if isinstance(e, Fan) and not e.blocks:
        return e.m
    return None


def is_cm(e) -> bool:
    """True when the constructor is known to yield a Cohen-Macaulay J_G."""
    if isinstance(e, (Complete, BipartiteFm, Fan, Circ)):
        return True
    if isinstance(e, Cone):
        comps = [c for p in e.parts for c in components(p)]
        return len(comps) == 2 and all(is_cm(c) for c in comps)
    if isinstance(e, DisjointUnion):
        return all(is_cm(p) for p in e.parts)
    if isinstance(e, Star):
        return is_cm(e.left) and is_cm(e.right)
    return False


def _require_pure(e: Fan) -> None:
    if not e.is_pure:
        raise NoClosedForm("closed forms are only known for pure fans")


def _cone_pair(e: Cone):
    comps = [c for p in e.parts for c in components(p)]
    if len(comps) != 2:
        raise NoClosedForm("cone formulas for extremal Betti number and CM-type need exactly two components")
    for c in comps:
        if not is_cm(c):
            raise NoClosedForm(f"cone component {to_str(c)} is not known to be Cohen-Macaulay")
    return comps


def cone_is_degenerate(e: Cone) -> bool:
    """One component a single vertex and the other complete: the cone is K_m plus a whisker."""
    a, b = _cone_pair(e)
    for x, y in ((a, b), (b, a)):
        if _complete_size(x) == 1 and _complete_size(y) is not None:
            return True
    return False


# -- regularity -------------------------------------------------------------------------

def reg_closed(e) -> int:
    validate(e)
    return _reg(e)


def _reg(e) -> int:
    if isinstance(e, Complete):
        return 0 if e.m == 1 else 1
    if isinstance(e, BipartiteFm):
        return 1 if e.m == 1 else 3
    if isinstance(e, Fan):
        _require_pure(e)
        return 1 + len(e.blocks)
    if isinstance(e, Cone):
        comps = [c for p in e.parts for c in components(p)]
        if len(comps) < 2:
            raise NoClosedForm("the cone regularity formula needs at least two components")
        return max(sum(_reg(c) for c in comps), 2)
    if isinstance(e, DisjointUnion):
        return sum(_reg(p) for p in e.parts)
    if isinstance(e, Star):
        return _reg(e.left) + _reg(e.right)
    if isinstance(e, Circ):
        return _reg_circ(tuple(x.m for x in e.chain[:-1]), e.chain[-1])
    raise NoClosedForm(f"unknown expression {e!r}")


def _minus_glue(final):
    """F minus the glue vertex v and its leaf f."""
    if isinstance(final, BipartiteFm):
        return BipartiteFm(final.m - 1)
    if final.sizes[0] < 2:
        raise NoClosedForm("the glue vertex must lie in a fan block with at least two vertices")
    return Fan.pure(final.m - 1, (final.sizes[0] - 1,) + final.sizes[1:])


def _reg_circ(prefix: tuple[int, ...], final) -> int:
    if len(prefix) == 1:
        if isinstance(final, BipartiteFm):
            return 6
        k = len(final.blocks)
        if all(s == 1 for s in final.sizes):
            return k + 3
        if final.sizes[0] >= 2:
            return k + 4
        raise NoClosedForm("glue vertex in a singleton fan block while another block is larger")
    rest = _minus_glue(final)
    return (_reg(BipartiteFm(prefix[0] - 1)) + sum(_reg(BipartiteFm(m - 2)) for m in prefix[1:])
            + _reg(rest))


# -- projective dimension -----------------------------------------------------------------

def projdim_closed(e) -> int:
    validate(e)
    if not is_cm(e):
        raise NoClosedForm("projective dimension is only evaluated for Cohen-Macaulay families")
    return n_vertices(e) - len(components(e))


# -- extremal Betti number -------------------------------------------------------------------

def extremal_betti_closed(e) -> int:
    validate(e)
    return _beta(e)


def _beta(e) -> int:
    if isinstance(e, Complete):
        return max(e.m - 1, 1)
    if isinstance(e, BipartiteFm):
        return 1 if e.m == 1 else sum_of_squares(e.m)
    if isinstance(e, Fan):
        _require_pure(e)
        return (e.m - 1) * prod(e.sizes)
    if isinstance(e, DisjointUnion):
        _check_cm_parts(e.parts)
        return prod(_beta(p) for p in e.parts)
    if isinstance(e, Star):
        _check_cm_parts((e.left, e.right))
        return _beta(e.left) * _beta(e.right)
    if isinstance(e, Cone):
        a, b = _cone_pair(e)
        if cone_is_degenerate(e):
            # K_{k+1} with a whisker: decomposable into K_{k+1} and K_2
            return max(_complete_size(a), _complete_size(b))
        n = n_vertices(e)
        r = max(_reg(a) + _reg(b), 2)
        base = _beta(a) * _beta(b)
        return base if r > 2 else n - 2 + base
    if isinstance(e, Circ):
        return _beta_circ(tuple(x.m for x in e.chain[:-1]), e.chain[-1])
    raise NoClosedForm(f"unknown expression {e!r}")


def _check_cm_parts(parts) -> None:
    for p in parts:
        if not is_cm(p):
            raise NoClosedForm(f"{to_str(p)} is not known to be Cohen-Macaulay")


def _chain_beta(prefix: tuple[int, ...]) -> int:
    """Extremal Betti number of F_{m_1} o ... o F_{m_s}, allowing m_s = 2.

    A trailing F_2 turns the last gluing into a * with K_2, which leaves the
    extremal Betti number of the rest unchanged.
    """
    if prefix[-1] == 2:
        prefix = prefix[:-1]
    if len(prefix) == 1:
        return _beta(BipartiteFm(prefix[0]))
    return _beta_circ(prefix[:-1], BipartiteFm(prefix[-1]))


@lru_cache(maxsize=None)
def _beta_circ(prefix: tuple[int, ...], final) -> int:
    if len(prefix) == 1:
        return _beta(BipartiteFm(prefix[0] - 1)) * _beta(_minus_glue(final))
    g2 = _chain_beta(prefix[:-1] + (prefix[-1] - 1,)) * _beta(_minus_glue(final))
    if prefix[-1] > 3:
        return g2
    return g2 + _beta_circ(*circ_h_graph(prefix, final))


def circ_h_graph(prefix: tuple[int, ...], final):
    """H of the cutpoint sequence at the last glue vertex, as (prefix, final fan).

    For F = F_m the fan is F_{m+m_t-2} with blocks (m_t-1, m-1).  For a k-pure
    fan F_m^{W,k} with v in W_1 the clique of H has m + m_t + |W_1| - 3 vertices
    and blocks (m_t-1, |W_2|, ..., |W_k|).
    """
    mt = prefix[-1]
    if isinstance(final, BipartiteFm):
        fan = Fan.pure(final.m + mt - 2, (mt - 1, final.m - 1))
    else:
        if final.sizes[0] < 2:
            raise NoClosedForm("the glue vertex must lie in a fan block with at least two vertices")
        fan = Fan.pure(final.m + mt + final.sizes[0] - 3, (mt - 1,) + final.sizes[1:])
    return prefix[:-1], fan


def circ_g2_graph(prefix: tuple[int, ...], final):
    """G'' at the last glue vertex, as (chain prefix, F minus {v, f})."""
    return prefix[:-1] + (prefix[-1] - 1,), _minus_glue(final)


def corollary_product(prefix: tuple[int, ...], final) -> int:
    """Product form valid when m_i >= 4 for i >= 2."""
    if any(m < 4 for m in prefix[1:]):
        raise NoClosedForm("product form needs m_i >= 4 for i >= 2")
    return (_beta(BipartiteFm(prefix[0] - 1)) * prod(_beta(BipartiteFm(m - 2)) for m in prefix[1:])
            * _beta(_minus_glue(final)))


# -- CM-type ----------------------------------------------------------------------------------

def cm_type_closed(e, conjectural: bool = False) -> int:
    """Cohen-Macaulay type.

    ``conjectural=True`` also answers for F_m and k-pure fans with k >= 2,
    where the value is the extremal Betti number under the open question
    that the two coincide.
    """
    validate(e)
    return _cm(e, conjectural)


def _cm(e, conj: bool) -> int:
    if isinstance(e, Complete):
        return max(e.m - 1, 1)
    if isinstance(e, BipartiteFm):
        if e.m == 1:
            return 1
        if conj:
            return _beta(e)
        raise NoClosedForm("CM-type of F_m is only conjectural (equal to the extremal Betti number)")
    if isinstance(e, Fan):
        _require_pure(e)
        if len(e.blocks) <= 1:
            return (e.m - 1) * max(sum(e.sizes), 1)
        if conj:
            return _beta(e)
        raise NoClosedForm("CM-type of k-pure fans with k >= 2 is only conjectural")
    if isinstance(e, DisjointUnion):
        _check_cm_parts(e.parts)
        return prod(_cm(p, conj) for p in e.parts)
    if isinstance(e, Star):
        _check_cm_parts((e.left, e.right))
        return _cm(e.left, conj) * _cm(e.right, conj)
    if isinstance(e, Cone):
        a, b = _cone_pair(e)
        if cone_is_degenerate(e):
            return max(_complete_size(a), _complete_size(b))
        return n_vertices(e) - 2 + _cm(a, conj) * _cm(b, conj)
    if isinstance(e, Circ):
        raise NoClosedForm(REMARK_CIRC)
    raise NoClosedForm(f"unknown expression {e!r}")


def cone_formula_values(e: Cone) -> dict:
    """The cone CM-type formula applied literally, without the degeneracy guard.

    Used to expose the whisker case, where the literal value differs from
    the decomposable product.
    """
    a, b = _cone_pair(e)
    n = n_vertices(e)
    r = max(_reg(a) + _reg(b), 2)
    base = _beta(a) * _beta(b)
    return {"reg": r,
            "cm_type": n - 2 + _cm(a, True) * _cm(b, True),
            "extremal_betti": base if r > 2 else n - 2 + base,
            "beta_p_p2": n - 2 if r > 2 else None}


def beta_p_plus2_cone(e: Cone) -> int:
    """beta_{p,p+2} = n - 2 for a CM cone with regularity above 2."""
    validate(e)
    a, b = _cone_pair(e)
    if max(_reg(a) + _reg(b), 2) == 2:
        raise NoClosedForm("reg = 2: beta_{p,p+2} is the extremal Betti number, use extremal_betti_closed")
    return n_vertices(e) - 2


def linear_strand(g, i: int) -> int:
    """beta_{i,i+1}(S/J_G) = i * f_i(clique complex)."""
    from .graphs import clique_complex

    if i < 1:
        raise ValueError("linear strand index starts at 1")
    _, fv = clique_complex(g)
    return i * (fv[i + 1] if i + 1 < len(fv) else 0)


def invariants_closed(e, conjectural: bool = False) -> InvariantReport:
    validate(e)
    rep = InvariantReport(expr=to_str(e), n=n_vertices(e))
    for name, fn in (("reg", _reg), ("projdim", projdim_closed), ("extremal_betti", _beta)):
        try:
            setattr(rep, name, fn(e))
        except NoClosedForm as err:
            rep.notes.append(f"{name}: {err}")
    try:
        rep.cm_type = _cm(e, False)
    except NoClosedForm as err:
        if conjectural and isinstance(e, (BipartiteFm, Fan)):
            rep.cm_type = _cm(e, True)
            rep.notes.append("cm_type: conjectural value (assumes CM-type equals the extremal Betti number)")
        else:
            rep.notes.append(f"cm_type: {err}")
    if isinstance(e, Cone):
        try:
            if cone_is_degenerate(e):
                lit = cone_formula_values(e)
                rep.notes.append(
                    f"cone guard: whisker case, decomposable product gives CM-type {rep.cm_type}; "
                    f"the literal cone formula gives {lit['cm_type']}")
        except NoClosedForm:
            pass
    return rep


def hvector_fm(m: int):
    """h-vector (1, 2m-1, (3m^2-3m)/2, sum k^2) of S/J_{F_m}, Krull dimension 2m+1."""
    from .hilbert import HilbertData

    if m < 2:
        raise ValueError("hvector_fm needs m >= 2")
    h = (1, 2 * m - 1, (3 * m * m - 3 * m) // 2, sum_of_squares(m))
    # p(t) = h(t) (1-t)^(4m - (2m+1))
    p = list(h)
    for _ in range(2 * m - 1):
        p = [a - b for a, b in zip(p + [0], [0] + p)]
    return HilbertData(tuple(p), h, 2 * m + 1, 4 * m)
