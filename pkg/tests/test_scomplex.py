import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from composer_kit.compose import pq_fill
from composer_kit.scomplex import (
    Relation,
    SSimplex,
    degen_c,
    degeneracy,
    dim_of,
    e_hull,
    face,
    fsig_pattern,
    fsig_size,
    h_inv,
    h_map,
    hull_tuples,
    is_component_simplicial,
    is_e_simplicial,
    is_subcomponent_simplicial,
    is_subface_simplicial,
    max_simplex,
    minimal_simplex,
    po_leq,
    proj_e,
    signature,
    t_max,
    t_min,
    vertex_relation,
)


@st.composite
def relations(draw, max_n=4, labels=3, max_rows=5):
    n = draw(st.integers(0, max_n))
    row = st.tuples(*[st.integers(0, labels - 1)] * (n + 1))
    rows = draw(st.lists(row, min_size=1, max_size=max_rows))
    return Relation.from_rows(rows)


def fundamental_tuples(n, labels=3):
    return st.lists(st.integers(0, labels - 1), min_size=fsig_size(n), max_size=fsig_size(n)).map(tuple)


def _component_simplicial_over(cols):
    """Every component-simplicial tuple whose entries come from the column pattern."""
    n = len(cols) - 1
    if n == 0:
        return {(v,) for v in cols[0]}
    if n == 1:
        return {(b, a) for a in cols[0] for b in cols[1]}
    faces = [_component_simplicial_over(cols[:p] + cols[p + 1:]) for p in range(n + 1)]
    return hull_tuples(faces)


# -- fundamental tuples ----------------------------------------------------------

def test_fsig_size():
    assert [fsig_size(n) for n in range(4)] == [1, 2, 6, 24]
    with pytest.raises(ValueError):
        fsig_size(-1)


def test_h_map_examples():
    assert h_map((0, 1)) == (1, 0)
    assert h_map((0, 1, 2)) == (2, 1, 2, 0, 1, 0)
    t = ("a", "b", "c", "d")
    expected = h_map(("b", "c", "d")) + h_map(("a", "c", "d")) + h_map(("a", "b", "d")) + h_map(("a", "b", "c"))
    assert h_map(t) == expected and len(expected) == 24
    assert fsig_pattern(2) == (2, 1, 2, 0, 1, 0)


def test_h_inv_rejects_bad_tuple():
    with pytest.raises(ValueError):
        h_inv((2, 1, 2, 0, 1, 1))


def test_proj_e_examples():
    a = h_map((0, 1, 2))
    assert proj_e(a, 0) == (2, 1) == h_map((1, 2))
    assert proj_e((1, 0), 1) == (0,)
    with pytest.raises(ValueError):
        proj_e(a, 3)
    with pytest.raises(ValueError):
        proj_e((0,), 0)


def test_degen_c_examples():
    assert degen_c((5,), 0) == (5, 5)
    assert degen_c(("t1", "t0"), 1) == ("t1", "t1", "t1", "t0", "t1", "t0")
    with pytest.raises(ValueError):
        degen_c((1, 0), 2)


@given(st.integers(0, 4).flatmap(lambda n: st.lists(st.integers(0, 5), min_size=n + 1, max_size=n + 1)))
def test_h_roundtrip(t):
    t = tuple(t)
    a = h_map(t)
    assert len(a) == math.factorial(len(t))
    assert is_subcomponent_simplicial(a)
    assert is_component_simplicial(a)
    assert h_inv(a) == t
    for j in range(len(t)):
        if len(t) > 1:
            assert proj_e(a, j) == h_map(t[:j] + t[j + 1:])
        assert degen_c(a, j) == h_map(t[:j + 1] + t[j:])


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), fundamental_tuples(n))))
def test_degen_c_identities(pair):
    n, a = pair
    for j in range(n + 1):
        c = degen_c(a, j)
        assert dim_of(c) == n + 1
        for i in range(n + 2):
            got = proj_e(c, i)
            if i < j:
                assert got == degen_c(proj_e(a, i), j - 1)
            elif i in (j, j + 1):
                assert got == a
            else:
                assert got == degen_c(proj_e(a, i - 1), j)
        for i in range(j):
            assert degen_c(degen_c(a, i), j) == degen_c(degen_c(a, j - 1), i)


def test_component_simplicial_mismatch():
    a = list(h_map((0, 1, 2)))
    assert is_component_simplicial(tuple(a))
    a[1] = 7  # e_0 e_1 no longer matches e_0 e_0
    assert not is_component_simplicial(tuple(a))
    assert is_component_simplicial((3, 4))


# -- simplices ---------------------------------------------------------------

def _identities_hold(y):
    n = y.dim
    if n >= 2:
        for j in range(n + 1):
            for i in range(j):
                assert face(face(y, j), i) == face(face(y, i), j - 1)
    for j in range(n + 1):
        s = degeneracy(y, j)
        for i in range(n + 2):
            got = face(s, i)
            if i < j:
                assert got == degeneracy(face(y, i), j - 1)
            elif i in (j, j + 1):
                assert got == y
            else:
                assert got == degeneracy(face(y, i - 1), j)
        for i in range(j + 1):
            assert degeneracy(degeneracy(y, j), i) == degeneracy(degeneracy(y, i), j + 1)


@settings(max_examples=1000, deadline=None)
@given(relations())
def test_simplicial_identities_on_relations(R):
    _identities_hold(minimal_simplex(R))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(fundamental_tuples(n, 2), min_size=1, max_size=4)))
def test_simplicial_identities_general_simplices(T):
    n = dim_of(T[0])
    y = t_min(T, [frozenset({0, 1})] * (n + 1))
    _identities_hold(y)


@settings(max_examples=300, deadline=None)
@given(relations())
def test_relation_simplex_roundtrip(R):
    y = minimal_simplex(R)
    assert is_subface_simplicial(y)
    assert y.check_coherence()
    assert vertex_relation(y) == R
    assert minimal_simplex(vertex_relation(y)) == y
    assert t_min(y.elements, R.columns) == y
    if R.n >= 1:
        for p in range(R.n + 1):
            assert vertex_relation(face(y, p)) == R.face(p)
    for p in range(R.n + 1):
        assert vertex_relation(degeneracy(y, p)) == R.degeneracy(p)


def test_minimal_simplex_single_row():
    y = minimal_simplex(Relation.from_rows([(0, 1, 2)]))
    assert all(len(els) == 1 for els in y.nodes.values())
    assert y.node((0, 1)) == {(1, 0)}
    assert (2, 0) in face(y, 1).elements
    assert vertex_relation(y).rows == {(0, 1, 2)}


def test_minimal_simplex_empty():
    with pytest.raises(ValueError):
        minimal_simplex(Relation.from_rows([], columns=[{0}, {1}]))


def test_vertex_relation_needs_subface_simplicial():
    bad = list(h_map((0, 1, 2)))
    bad[1] = 0
    y = t_min([tuple(bad)], [{0, 1, 2}] * 3)
    with pytest.raises(ValueError):
        vertex_relation(y)


def test_relation_face_degeneracy():
    R = Relation.from_rows([(0, 1, 2), (3, 1, 4)])
    assert R.face(1).rows == {(0, 2), (3, 4)}
    assert R.degeneracy(1).rows == {(0, 1, 1, 2), (3, 1, 1, 4)}
    assert R.pullback((0, 0, 2)).rows == {(0, 0, 2), (3, 3, 4)}
    with pytest.raises(ValueError):
        Relation.from_rows([(0, 1), (0,)])


def test_low_dimension_vacuous():
    y = minimal_simplex(Relation.from_rows([(0, 1)]))
    assert is_e_simplicial(y)
    assert is_e_simplicial(minimal_simplex(Relation.from_rows([(0,)])))


def test_face_errors():
    y = minimal_simplex(Relation.from_rows([(0, 1)]))
    with pytest.raises(ValueError):
        face(y, 2)
    with pytest.raises(ValueError):
        face(minimal_simplex(Relation.from_rows([(0,)])), 0)
    with pytest.raises(ValueError):
        SSimplex((frozenset({0}), frozenset({1})), {(0,): frozenset({(0,)})})


# -- hulls and extremal simplices -------------------------------------------

def test_e_hull_of_maximal_is_stable():
    cols = [frozenset({0, 1})] * 3
    y = e_hull(max_simplex(cols))
    assert is_e_simplicial(y)
    assert e_hull(y).elements == y.elements


def test_e_hull_of_empty_top():
    R = Relation.from_rows([(0, 0, 0), (1, 1, 1)])
    y = minimal_simplex(R)
    nodes = dict(y.nodes)
    nodes[(0, 1, 2)] = frozenset()
    empty = SSimplex(y.fsig, nodes)
    hull = e_hull(empty)
    assert hull.elements == y.elements
    assert is_e_simplicial(hull)


def test_e_hull_matches_brute_force():
    R = Relation.from_rows([(0, 1, 2), (0, 3, 2), (4, 1, 5)])
    y = minimal_simplex(R)
    sig = signature(y)
    brute = set()
    for choice in itertools.product(*(sorted(s) for s in sig)):
        a = tuple(x for b in choice for x in b)
        if is_component_simplicial(a):
            brute.add(a)
    assert e_hull(y).elements == brute
    with pytest.raises(ValueError):
        e_hull(minimal_simplex(Relation.from_rows([(0, 1)])))


def test_t_min_t_max_bracket():
    cols = [frozenset({0, 1}), frozenset({2}), frozenset({3, 4})]
    T = {h_map((0, 2, 3)), h_map((1, 2, 4))}
    lo, hi = t_min(T, cols), t_max(T, cols)
    assert po_leq(lo, hi)
    y = minimal_simplex(Relation.from_rows([(0, 2, 3), (1, 2, 4)], cols))
    assert po_leq(lo, y) and po_leq(y, hi)
    assert lo == y
    # the node missing vertex 1 is the product of the remaining columns
    assert hi.node((0, 2)) == {(b, a) for a in cols[0] for b in cols[2]}
    single = t_min({h_map((0, 2, 3))}, cols)
    assert all(len(v) == 1 for v in single.nodes.values())
    with pytest.raises(ValueError):
        t_min(set(), cols)


# -- two-row fillers ---------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_two_row_filler_brute_force(d):
    cols = [(0, 1)] * (d + 1)
    full = _component_simplicial_over(cols)
    faces = [_component_simplicial_over(cols[:p] + cols[p + 1:]) for p in range(d + 1)]
    for p in range(d + 1):
        for q in range(p + 1, d + 1):
            index = {}
            for b in full:
                index.setdefault((proj_e(b, p), proj_e(b, q)), []).append(b)
            for ap in faces[p]:
                for aq in faces[q]:
                    if d >= 2 and proj_e(aq, p) != proj_e(ap, q - 1):
                        continue
                    hits = index.get((ap, aq), [])
                    assert len(hits) == 1
                    assert pq_fill(None, ap, aq, p, q) == hits[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 9), min_size=n + 1, max_size=n + 1),
                        st.integers(0, n))))
def test_two_row_filler_constructive(args):
    n, t, p = args
    t = tuple(t)
    for q in range(p + 1, n + 1):
        a = h_map(t)
        assert pq_fill(None, proj_e(a, p), proj_e(a, q), p, q) == a
