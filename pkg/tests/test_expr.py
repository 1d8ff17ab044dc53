import pytest
from hypothesis import given, strategies as st

from binedge.closed_form import n_vertices
from binedge.expr import BipartiteFm, Circ, Complete, Cone, DisjointUnion, ExprError, Fan, Star, build, \
    parse_expr, to_str


def test_examples():
    assert parse_expr("Fm(3)") == BipartiteFm(3)
    assert parse_expr("fan(5; 2,1)") == Fan.pure(5, (2, 1))
    assert parse_expr("circ(Fm(4), Fm(3))") == Circ((BipartiteFm(4), BipartiteFm(3)))
    assert parse_expr("cone(K(2), fan(2;1))") == Cone((Complete(2), Fan.pure(2, (1,))))
    assert parse_expr("fan(4; [3,4])") == Fan(4, ((3, 4),))


def test_star_folds_left():
    e = parse_expr("star(fan(2;1), K(2), K(2))")
    assert e == Star(Star(Fan.pure(2, (1,)), Complete(2)), Complete(2))


@pytest.mark.parametrize("text,pos", [
    ("Fm(3", 4),
    ("Fm(x)", 3),
    ("foo(1)", 0),
    ("K(2) K(3)", 5),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExprError) as info:
        parse_expr(text)
    assert info.value.pos == pos


@pytest.mark.parametrize("text,rule", [
    ("circ(Fm(2), Fm(3))", "every entry but the last"),
    ("circ(Fm(3), K(3))", "last entry"),
    ("circ(Fm(3), fan(3; [2,4]))", "pure"),
    ("circ(Fm(3), fan(2; 1))", "m >= 3"),
    ("fan(3; 2, 2)", "more than m"),
    ("fan(3; [1])", "must exceed"),
    ("star(K(2))", "two operands"),
])
def test_guard_violations(text, rule):
    with pytest.raises(ExprError, match=rule):
        parse_expr(text)


def _leaf():
    return st.one_of(
        st.builds(Complete, st.integers(1, 4)),
        st.builds(BipartiteFm, st.integers(1, 4)),
        st.integers(2, 5).flatmap(lambda m: st.lists(st.integers(1, 2), max_size=2)
                                  .filter(lambda s: sum(s) <= m)
                                  .map(lambda s: Fan.pure(m, tuple(s)))),
    )


def _with_leaf(e) -> bool:
    try:
        return bool(build(e).leaves())
    except Exception:
        return False


exprs = st.recursive(
    _leaf(),
    lambda inner: st.one_of(
        st.lists(inner, min_size=1, max_size=2).map(lambda ps: Cone(tuple(ps))),
        st.lists(inner, min_size=1, max_size=2).map(lambda ps: DisjointUnion(tuple(ps))),
        st.tuples(inner.filter(_with_leaf), inner.filter(_with_leaf)).map(lambda ab: Star(*ab)),
    ),
    max_leaves=4,
)

circs = st.tuples(
    st.lists(st.integers(3, 5), min_size=1, max_size=3),
    st.one_of(st.builds(BipartiteFm, st.integers(3, 4)),
              st.tuples(st.integers(3, 5), st.lists(st.integers(1, 2), min_size=1, max_size=2))
              .filter(lambda t: sum(t[1]) <= t[0]).map(lambda t: Fan.pure(t[0], tuple(t[1])))),
).map(lambda t: Circ(tuple(BipartiteFm(m) for m in t[0]) + (t[1],)))


@given(st.one_of(exprs, circs))
def test_roundtrip(e):
    assert parse_expr(to_str(e)) == e


@given(st.one_of(exprs, circs))
def test_vertex_count_matches_builder(e):
    assert n_vertices(e) == build(e).n
