import math

import pytest
from hypothesis import given, strategies as st

from binedge.betti import BettiTable, stanley_reisner
from binedge.closed_form import hvector_fm, sum_of_squares
from binedge.expr import build, parse_expr
from binedge.graphs import Graph, bipartite_fm, complete_graph
from binedge.grobner import MonomialIdeal, groebner_of_graph
from binedge.hilbert import HilbertData, h_from_f, hilbert_data, hilbert_function, hilbert_numerator, \
    numerator_from_betti, reduce_to_h, series_coefficients, verify_hilbert_lemmas

from conftest import CORPUS, oracle_of


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def inj_of(g):
    return groebner_of_graph(g)[2]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def one_minus_t_power(k):
    return [(-1) ** i * math.comb(k, i) for i in range(k + 1)]


class TestHilbertFunction:
    def test_degree_zero(self):
        for g in CORPUS[:8]:
            assert hilbert_function(inj_of(g), 0) == 1

    def test_k3(self):
        inj = inj_of(complete_graph(3))
        assert hilbert_function(inj, 1) == 6
        assert hilbert_function(inj, 2) == math.comb(7, 2) - 3

    def test_accepts_basis(self):
        ring, gb, inj = groebner_of_graph(complete_graph(3))
        assert hilbert_function(gb, 3) == hilbert_function(inj, 3)

    def test_negative_degree(self):
        assert hilbert_function(inj_of(complete_graph(2)), -1) == 0

    def test_no_generators(self):
        free = MonomialIdeal.from_monomials(3, [])
        assert [hilbert_function(free, k) for k in range(4)] == [math.comb(k + 2, 2) for k in range(4)]


class TestNumerator:
    def test_examples(self):
        assert numerator_from_betti(oracle_of(complete_graph(2)).j_table) == (1, 0, -1)
        assert numerator_from_betti(oracle_of(path(3)).j_table) == (1, 0, -2, 0, 1)
        assert numerator_from_betti(oracle_of(complete_graph(3)).j_table) == (1, 0, -3, 2)

    def test_incomplete_rejected(self):
        with pytest.raises(ValueError):
            numerator_from_betti(BettiTable({(0, 0): 1}, 4, "J", cells=frozenset({(0, 0)})))

    @pytest.mark.parametrize("g", CORPUS, ids=lambda g: f"n{g.n}e{len(g.edges)}")
    def test_recursion_equals_betti_route(self, g):
        res = oracle_of(g)
        assert hilbert_numerator(inj_of(g)) == numerator_from_betti(res.j_table)


class TestReduce:
    def test_examples(self):
        k3 = reduce_to_h((1, 0, -3, 2), 6)
        assert k3.h == (1, 2) and k3.d == 4
        k2 = reduce_to_h((1, 0, -1), 4)
        assert k2.h == (1, 1) and k2.d == 3
        # complete intersection of three quadrics in eight variables
        f2 = reduce_to_h(tuple(poly_mul(poly_mul([1, 0, -1], [1, 0, -1]), [1, 0, -1])), 8)
        assert f2.h == (1, 3, 3, 1) and f2.d == 5

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            reduce_to_h((0, 0), 4)

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 3))
    def test_roundtrip(self, h, k):
        """p = h (1-t)^k is reduced back to h whenever h(1) != 0."""
        p = poly_mul(h, one_minus_t_power(k))
        hd = reduce_to_h(p, 10)
        assert hd.h == tuple(h) and hd.d == 10 - k

    def test_json(self):
        hd = reduce_to_h((1, 0, -3, 2), 6)
        assert hd.to_json() == {"p": [1, 0, -3, 2], "h": [1, 2], "d": 4, "a": -3}


class TestHFromF:
    def test_single_vertex(self):
        assert h_from_f([1, 1], 1) == (1, 0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            h_from_f([1, 2, 1], 1)

    @pytest.mark.parametrize("m", [2, 3])
    def test_matches_reduction(self, m):
        inj = inj_of(bipartite_fm(m))
        f = stanley_reisner(inj).f_vector()
        hd = hilbert_data(inj)
        h = h_from_f(f, hd.d)
        assert h[:len(hd.h)] == hd.h and not any(h[len(hd.h):])
        # f_0 = 4m and f_1 = C(4m, 2) - m(m+1)/2
        assert f[1] == 4 * m and f[2] == math.comb(4 * m, 2) - m * (m + 1) // 2
        assert h[1] == f[1] - hd.d

    def test_f2_numbers(self):
        assert h_from_f([1, 8, 25, 0, 0, 0], 5)[1:3] == (3, 3)


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: f"n{g.n}e{len(g.edges)}")
def test_series_matches_hilbert_function(g):
    res = oracle_of(g)
    p = numerator_from_betti(res.j_table)
    inj = inj_of(g)
    assert series_coefficients(p, 2 * g.n, 8) == [hilbert_function(inj, k) for k in range(9)]


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: f"n{g.n}e{len(g.edges)}")
def test_hilbert_data_invariants(g):
    res = oracle_of(g)
    hd = res.hilbert
    assert hd.h[0] == 1
    assert list(hd.numerator) == _trim(poly_mul(hd.h, one_minus_t_power(hd.nvars - hd.d)))
    depth = hd.nvars - res.j_table.projdim
    if depth == hd.d:  # Cohen-Macaulay
        assert len(hd.h) - 1 == res.j_table.reg
        assert hd.a_invariant == res.j_table.reg - depth
    else:
        assert hd.a_invariant <= res.j_table.reg - depth


def _trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


class TestHvectorFm:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_closed_form_equals_oracle(self, m):
        assert hvector_fm(m) == hilbert_data(inj_of(bipartite_fm(m)))

    def test_values(self):
        assert hvector_fm(3).h == (1, 5, 9, 5)
        assert hvector_fm(3).h[3] == sum_of_squares(3) == 5


class TestLemmas:
    @pytest.mark.parametrize("text,corner", [("Fm(2)", 1), ("Fm(3)", 5), ("K(3)", 2)])
    def test_examples(self, text, corner):
        res = oracle_of(build(parse_expr(text)))
        rep = verify_hilbert_lemmas(res.j_table, res.hilbert)
        assert rep.lc_h == corner == rep.corner
        assert rep.passed and rep.cm and rep.degree_match
        assert rep.a_invariant == rep.a_bound

    def test_sign_is_recorded(self):
        res = oracle_of(bipartite_fm(2))
        rep = verify_hilbert_lemmas(res.j_table, res.hilbert)
        # p = 3, d = 5: the displayed sign is +1
        assert rep.sign == 1 and rep.signed_match
        assert set(rep.to_json()) >= {"lc_h", "corner", "sign", "passed"}

    def test_needs_unique_corner(self):
        t = BettiTable({(0, 0): 1, (1, 3): 1, (2, 3): 2}, 4, "J")
        with pytest.raises(ValueError):
            verify_hilbert_lemmas(t, HilbertData((1,), (1,), 4, 4))
