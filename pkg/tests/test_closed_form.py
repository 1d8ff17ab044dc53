import pytest
from hypothesis import given, strategies as st

from binedge.closed_form import REMARK_CIRC, NoClosedForm, beta_p_plus2_cone, cm_type_closed, \
    cone_formula_values, corollary_product, extremal_betti_closed, hvector_fm, invariants_closed, \
    linear_strand, projdim_closed, reg_closed, sum_of_squares
from binedge.expr import BipartiteFm, Complete, Cone, DisjointUnion, Fan, parse_expr
from binedge.graphs import Graph, bipartite_fm, complete_graph


def P(text):
    return parse_expr(text)


class TestRegularity:
    @pytest.mark.parametrize("text,value", [
        ("Fm(3)", 3),
        ("fan(5; 2,1)", 3),
        ("circ(Fm(4), Fm(3))", 6),
        ("cone(K(2), K(2))", 2),
        ("K(4)", 1),
        ("Fm(1)", 1),
        ("fan(3; 1,1)", 3),
        ("du(K(2), fan(2;1))", 3),
    ])
    def test_examples(self, text, value):
        assert reg_closed(P(text)) == value

    def test_two_block_cases(self):
        assert reg_closed(P("circ(Fm(3), fan(4; 1, 1))")) == 2 + 3
        assert reg_closed(P("circ(Fm(3), fan(4; 2, 1))")) == 2 + 4

    def test_telescoping(self):
        # reg F_2 + reg F_2 + reg F_2 for circ(Fm(3), Fm(4), Fm(3))
        assert reg_closed(P("circ(Fm(3), Fm(4), Fm(3))")) == 9

    def test_non_pure_rejected(self):
        with pytest.raises(NoClosedForm):
            reg_closed(P("fan(4; [3,4])"))


REG = {"K(1)": 0, "K(2)": 1, "K(3)": 1, "fan(2;1)": 2, "Fm(2)": 3, "fan(3;1,1)": 3}


@given(st.lists(st.sampled_from(sorted(REG)), min_size=2, max_size=4))
def test_cone_reg_two_pattern(parts):
    """Isolated vertices plus at most two complete graphs force reg = 2.

    The converse needs one more case: a single part of regularity 2 among
    isolated vertices (e.g. a path on three vertices) also gives reg = 2.
    """
    e = Cone(tuple(P(p) for p in parts))
    non_isolated = [p for p in parts if p != "K(1)"]
    pattern = len(non_isolated) <= 2 and all(p in ("K(2)", "K(3)") for p in non_isolated)
    if pattern:
        assert reg_closed(e) == 2
    assert (reg_closed(e) == 2) == (sum(REG[p] for p in parts) <= 2)


def test_cone_reg_two_beyond_complete_parts():
    from binedge.expr import build
    from binedge.oracle import run_oracle

    e = P("cone(K(1), fan(2;1))")
    assert reg_closed(e) == 2
    assert run_oracle(build(e)).reg == 2


class TestExtremalBetti:
    @pytest.mark.parametrize("text,value", [
        ("Fm(3)", 5),
        ("fan(5; 2,1)", 8),
        ("circ(Fm(4), Fm(3))", 5),
        ("circ(Fm(3), Fm(4), Fm(3))", 1),
        ("K(4)", 3),
        ("fan(3; 2)", 4),
        ("du(K(2), K(3))", 2),
    ])
    def test_examples(self, text, value):
        assert extremal_betti_closed(P(text)) == value

    @pytest.mark.parametrize("m", range(2, 9))
    def test_fm_sum_of_squares(self, m):
        assert extremal_betti_closed(BipartiteFm(m)) == sum(k * k for k in range(1, m))

    def test_two_routes_agree(self):
        e = P("circ(Fm(4), Fm(3))")
        assert extremal_betti_closed(e) == extremal_betti_closed(P("Fm(3)")) * extremal_betti_closed(P("Fm(2)"))

    @pytest.mark.parametrize("prefix,final", [
        ((3, 4), "Fm(3)"), ((5, 4), "Fm(4)"), ((3, 4, 5), "fan(4; 2, 1)"), ((4, 6), "Fm(5)"),
    ])
    def test_corollary_product_matches_recursion(self, prefix, final):
        text = "circ(" + ", ".join(f"Fm({m})" for m in prefix) + f", {final})"
        assert extremal_betti_closed(P(text)) == corollary_product(prefix, P(final))

    def test_corollary_guard(self):
        with pytest.raises(NoClosedForm):
            corollary_product((4, 3), BipartiteFm(3))


class TestCmType:
    def test_complete(self):
        assert cm_type_closed(Complete(4)) == 3

    def test_cone(self):
        assert cm_type_closed(P("cone(fan(2;1), K(2))")) == 6 - 2 + 1 * 1

    def test_circ_refused_with_remark(self):
        with pytest.raises(NoClosedForm) as info:
            cm_type_closed(P("circ(Fm(4), Fm(3))"))
        assert str(info.value) == REMARK_CIRC
        assert "29" in REMARK_CIRC and "5" in REMARK_CIRC

    @pytest.mark.parametrize("m", [3, 4])
    def test_whisker_guard(self, m):
        e = Cone((Complete(m - 1), Complete(1)))
        assert cm_type_closed(e) == m - 1
        assert cone_formula_values(e)["cm_type"] == 2 * m - 3

    def test_fm_is_conjectural(self):
        with pytest.raises(NoClosedForm, match="conjectural"):
            cm_type_closed(BipartiteFm(3))
        assert cm_type_closed(BipartiteFm(3), conjectural=True) == 5

    @given(st.integers(2, 7), st.lists(st.integers(1, 3), min_size=1, max_size=3))
    def test_pure_fan_equality(self, m, sizes):
        if sum(sizes) > m:
            return
        e = Fan.pure(m, tuple(sizes))
        conj = len(sizes) > 1
        assert cm_type_closed(e, conjectural=conj) == extremal_betti_closed(e)

    @given(st.lists(st.sampled_from(["K(2)", "K(3)", "fan(2;1)", "Fm(2)", "fan(3;2)"]), min_size=2, max_size=3))
    def test_disjoint_union_multiplicative(self, parts):
        exprs = [P(p) for p in parts]
        e = DisjointUnion(tuple(exprs))
        beta = 1
        ct = 1
        for x in exprs:
            beta *= extremal_betti_closed(x)
            ct *= cm_type_closed(x, conjectural=True)
        assert extremal_betti_closed(e) == beta
        assert cm_type_closed(e, conjectural=True) == ct


class TestConeExtras:
    def test_beta_p_p2(self):
        assert beta_p_plus2_cone(P("cone(fan(2;1), K(2))")) == 4
        assert beta_p_plus2_cone(P("cone(fan(2;1), fan(2;1))")) == 5

    def test_reg_two_guard(self):
        with pytest.raises(NoClosedForm):
            beta_p_plus2_cone(P("cone(K(2), K(2))"))


def test_projdim():
    assert projdim_closed(P("Fm(3)")) == 5
    assert projdim_closed(P("du(K(2), K(3))")) == 5 - 2
    assert projdim_closed(P("circ(Fm(4), Fm(3))")) == 10


class TestLinearStrand:
    def test_examples(self):
        k3 = complete_graph(3)
        assert linear_strand(k3, 1) == 3
        assert linear_strand(k3, 2) == 2
        assert linear_strand(bipartite_fm(3), 2) == 0
        assert linear_strand(Graph.from_edges(4, []), 1) == 0


class TestHvector:
    def test_values(self):
        assert hvector_fm(2).h == (1, 3, 3, 1) and hvector_fm(2).d == 5
        assert hvector_fm(3).h == (1, 5, 9, 5) and hvector_fm(3).d == 7
        assert hvector_fm(4).h[3] == 14

    @given(st.integers(2, 12))
    def test_positive_and_consistent(self, m):
        hd = hvector_fm(m)
        assert all(x > 0 for x in hd.h)
        assert hd.h[3] == sum_of_squares(m)
        # p(t) = h(t) (1-t)^(2m-1) vanishes at t = 1
        assert sum(hd.numerator) == 0

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            hvector_fm(1)


def test_report_notes_whisker():
    rep = invariants_closed(P("cone(K(3), K(1))"))
    assert rep.cm_type == 3
    assert any("literal cone formula gives 5" in n for n in rep.notes)
