import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from composer_kit.delta import operator_map
from composer_kit.modelgen import (
    ConditionSet,
    DetCondition,
    SurCondition,
    anchored_cover,
    apply_rules,
    block_stride,
    check_conditions,
    det_diagram,
    det_failures,
    det_family,
    enlarge,
    enlarge_with_trace,
    hypergroupoid_blocks,
    image,
    is_anchor_complete,
    model_check_overlap,
    overlap_classify,
    pq_fillers,
    required_conditions,
    rules_closure,
)
from composer_kit.scomplex import Relation
from composer_kit.verify import composition_check, relation_complex

SEED = [(0, 1, 2, 3, 4, 5, 6), (0, 7, 2, 3, 8, 5, 6), (0, 9, 2, 10, 4, 5, 6)]
NINE = {
    (0, 1, 2, 3, 4, 5, 6), (0, 7, 2, 3, 8, 5, 6), (0, 9, 2, 10, 4, 5, 6),
    (0, 7, 2, 3, 4, 5, 6), (0, 1, 2, 3, 8, 5, 6), (0, 9, 2, 3, 8, 5, 6),
    (0, 1, 2, 10, 4, 5, 6), (0, 7, 2, 10, 4, 5, 6), (0, 9, 2, 3, 4, 5, 6),
}
TWELVE = NINE | {(0, 1, 2, 10, 8, 5, 6), (0, 7, 2, 10, 8, 5, 6), (0, 9, 2, 10, 8, 5, 6)}


def D(s):
    return DetCondition.parse(s)


# -- conditions and rules --------------------------------------------------------

def test_condition_strings():
    assert str(DetCondition(1, 4, 6)) == "1,4.6"
    assert D("(1,4).6") == D("1,4.6") == DetCondition(1, 4, 6)
    assert SurCondition.parse("3-sur.6") == SurCondition(3, 6)
    assert str(SurCondition(3, 6)) == "3-sur.6"
    for bad in ("1,4", "4,1.6", "1,9.6"):
        with pytest.raises(ValueError):
            D(bad)
    with pytest.raises(ValueError):
        SurCondition(7, 6)
    cs = ConditionSet.parse(["1,4.6", "3-sur.6"])
    assert cs.strings() == ["3-sur.6", "1,4.6"]
    assert not cs.is_closed() and cs.closed().is_closed()


def test_rules_closure_example():
    got = rules_closure({D("2,5.7")})
    want = {D(s) for s in ("2,5.7", "1,4.6", "2,4.6", "2,5.6", "1,3.5", "1,4.5", "2,4.5", "1,3.4")}
    assert got == want


def test_rules_closure_terminal():
    assert rules_closure({D("1,3.4")}) == {D("1,3.4")}
    assert apply_rules(D("1,3.4")) == []


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_rules_closure_zero_two_chain(n):
    assert rules_closure({DetCondition(0, 2, n)}) == {DetCondition(0, 2, k) for k in range(3, n + 1)}


@given(st.integers(3, 9).flatmap(lambda m: st.sampled_from(det_family(m))))
def test_rules_closure_is_closed_and_stays_in_families(c):
    cl = rules_closure({c})
    assert rules_closure(cl) == cl
    for d in cl:
        assert d.q - d.p in (2, 3) and d.m <= c.m
        for _, e in apply_rules(d):
            assert e in cl


def test_det_diagram_six():
    dg = det_diagram(6)
    assert len(dg["nodes"]) == 25
    assert len(dg["arrows"]) == 28
    rules = [r for _, r, _ in dg["arrows"]]
    assert (rules.count("rule1"), rules.count("rule2"), rules.count("rule3")) == (9, 10, 9)
    assert sorted(dg["terminal"]) == sorted(["1,3.4", "0,2.3", "1,3.3", "0,2.2"])
    assert set(dg["nodes"]) >= {str(c) for c in rules_closure(det_family(6))}


def test_required_conditions_six_three():
    cs = required_conditions(6, 3)
    assert cs.strings() == ["2-sur.6", "3-sur.6", "1,3.4", "1,3.5", "1,4.5", "1,4.6"]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_required_conditions_outer(n):
    zero = required_conditions(n, 0).determinacy
    assert zero == {DetCondition(1, 2, m) for m in range(3, n + 1)}
    last = required_conditions(n, n + 1).determinacy
    chain_a = {DetCondition(k - 2, k - 1, k) for k in range(3, n + 1)}
    chain_b = {DetCondition(k - 1, k, k) for k in range(2, n + 1)}
    assert last == chain_a | chain_b
    assert DetCondition(1, 2, 3) in last and DetCondition(1, 2, 2) in last
    with pytest.raises(ValueError):
        required_conditions(n, n + 2)
    with pytest.raises(ValueError):
        required_conditions(1, 0)


def test_required_conditions_regimes():
    assert required_conditions(6, 1).strings()[:1] == ["1-sur.6"]
    assert DetCondition(0, 2, 6) in required_conditions(6, 1).determinacy
    assert {str(c) for c in required_conditions(6, 6).surjectivity} == {"5-sur.6"}
    assert DetCondition(4, 6, 6) in required_conditions(6, 6).determinacy


# -- relation-level determinacy ---------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(*[st.integers(0, 2)] * (n + 1)), min_size=1, max_size=5),
    st.sets(st.integers(0, n), min_size=2, max_size=2))))
def test_pq_fillers_brute_force(args):
    n, rows, pq = args
    p, q = sorted(pq)
    S = set(rows)
    fp = {t[:p] + t[p + 1:] for t in S}
    fq = {t[:q] + t[q + 1:] for t in S}
    brute = {t for t in itertools.product(range(3), repeat=n + 1)
             if t[:p] + t[p + 1:] in fp and t[:q] + t[q + 1:] in fq}
    assert set(pq_fillers(S, p, q)) == brute
    assert set(det_failures(S, p, q)) == brute - S


# -- anchored covers and enlargement ----------------------------------------------

def test_anchored_cover_examples():
    a = (0, 1, 2, 3, 4, 5)
    b = (6, 2, 3, 5, 5)
    assert operator_map("s_3d_1d_4", 5).values == (0, 2, 3, 5, 5)
    assert anchored_cover(b, a, via=(0, 2, 3, 5, 5)) == (6, 1, 2, 3, 4, 5)
    assert anchored_cover((9, 8), (1, 2), deleted=()) == (9, 8)
    assert anchored_cover((), (1, 2), deleted=(0, 1)) == (1, 2)
    assert anchored_cover((7,), (1, 2, 3), deleted=(0, 2)) == (1, 7, 3)
    with pytest.raises(ValueError):
        anchored_cover((7, 8), (1, 2, 3), deleted=(0, 2))
    with pytest.raises(ValueError):
        anchored_cover((6, 7), (0, 1), via=(1, 1))


def test_enlarge_nine_rows():
    R = Relation.from_rows(SEED)
    res = enlarge_with_trace(R, SEED[0], required_conditions(6, 3))
    assert res.relation.rows == NINE
    assert {str(c) for _, c, _, _ in res.added} == {"1,3.4"}
    assert is_anchor_complete(res.relation, SEED[0], required_conditions(6, 3))
    d = res.to_dict()
    assert len(d["rows"]) == 9 and d["anchor"] == list(SEED[0])


def test_enlarge_other_anchor_twelve_rows():
    R = Relation.from_rows(SEED)
    assert enlarge(R, SEED[1], required_conditions(6, 3)).rows == TWELVE


def test_enlarge_is_minimal():
    conds = required_conditions(6, 3)
    full = enlarge(Relation.from_rows(SEED), SEED[0], conds)
    for r in NINE - set(SEED):
        smaller = Relation.from_rows(NINE - {r})
        assert not is_anchor_complete(smaller, SEED[0], conds)
    assert enlarge(full, SEED[0], conds) == full


def test_enlarge_bad_anchor():
    with pytest.raises(ValueError):
        enlarge(Relation.from_rows(SEED), (9, 9, 9, 9, 9, 9, 9), required_conditions(6, 3))


def test_enlarged_relation_meets_conditions():
    fails = check_conditions(Relation.from_rows(NINE), required_conditions(6, 3))
    assert all(not v for v in fails.values())


def test_filler_only_closure_failures():
    R2 = set(SEED) | {(0, 7, 2, 3, 4, 5, 6), (0, 1, 2, 3, 8, 5, 6)}
    fails = check_conditions(R2, required_conditions(6, 3))
    counts = {k: (len(v), sum(d for _, d in v)) for k, v in fails.items()}
    assert counts["1,4.6"] == (9, 9)
    assert counts["1,3.4"] == (5, 0)
    assert counts["1,3.5"] == (9, 5)
    assert counts["1,4.5"] == (5, 5)
    maps6 = {g for g, _ in fails["1,4.6"]}
    assert operator_map("s_2d_3", 6).values in maps6
    assert operator_map("d_3d_5", 6).values in {g for g, _ in fails["1,3.4"]}
    maps5 = {g for g, _ in fails["1,3.5"]}
    for j in (3, 4, 5, 6):
        assert operator_map(f"d_{j}", 6).values in maps5
    assert operator_map("s_2d_3d_5", 6).values in {g for g, _ in fails["1,4.5"]}


# -- overlaps -------------------------------------------------------------------

def test_overlap_classify_examples():
    t = (0, 1, 2, 3, 4, 5, 6)
    assert overlap_classify(t, t).interval == (0, 6)
    ov = overlap_classify(t, ("a", 1, 2, "b", "c", 5, "d"))
    assert ov.kind == "multiple" and ov.positions == (1, 2, 5)
    ov = overlap_classify(t, (7, 1, 2, 3, 4, 5, 6))
    assert ov.kind == "interval" and ov.interval == (1, 6)
    assert overlap_classify((0, 1), (2, 3)).kind == "disjoint"
    with pytest.raises(ValueError):
        overlap_classify((0,), (0, 1))


def test_model_check_overlap_examples():
    B = hypergroupoid_blocks(6, 2)
    assert model_check_overlap(B, "i0") == (True, None)
    assert model_check_overlap(B, "in1") == (True, None)
    ok, wit = model_check_overlap([(0, 1, 2, 3), (0, 5, 2, 6)], "i0")
    assert not ok and wit[2].positions == (0, 2)
    assert model_check_overlap([(0, 1, 2, 3)], "in1")[0]
    ok, _ = model_check_overlap([(0, 1, 2, 3), (0, 1, 5, 6)], "in1")
    assert not ok
    with pytest.raises(ValueError):
        model_check_overlap(B, "i1")


def _tagged(rows):
    # columns are formally distinct, so labels carry their column
    return Relation.from_rows({tuple((k, v) for k, v in enumerate(t)) for t in rows})


def _composer_at(R, n, i, top):
    C = relation_complex(R, top)
    return all(composition_check(C, m, i)["status"] == "pass" for m in range(n, top))


def test_overlap_characterizes_outer_composers():
    rnd = random.Random(11)
    checked = 0
    while checked < 500:
        n = rnd.choice([3, 4])
        rows = {tuple(rnd.randint(0, 1) for _ in range(n + 1)) for _ in range(2)}
        if len(rows) < 2:
            continue
        R = _tagged(rows)
        for mode, i in (("i0", 0), ("in1", n + 1)):
            ok = model_check_overlap(R, mode)[0]
            if ok:
                assert _composer_at(R, n, i, n + 1)
            fails = check_conditions(R, required_conditions(n, i))
            assert ok == all(not v for v in fails.values())
        checked += 1


def test_overlap_implies_image_composition_two_levels_up():
    # the converse fails: images of R can compose while R breaks the conditions
    rnd = random.Random(5)
    converse_fails = 0
    for _ in range(60):
        n = 3
        rows = {tuple(rnd.randint(0, 1) for _ in range(n + 1)) for _ in range(2)}
        if len(rows) < 2:
            continue
        R = _tagged(rows)
        for mode, i in (("i0", 0), ("in1", n + 1)):
            ok, comp = model_check_overlap(R, mode)[0], _composer_at(R, n, i, n + 2)
            assert comp or not ok
            converse_fails += comp and not ok
    assert converse_fails > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(*[st.integers(0, 2)] * (n + 1)), min_size=1, max_size=4))))
def test_single_interval_overlap_gives_one_two_determinacy(args):
    n, rows = args
    R = _tagged(rows)
    if model_check_overlap(R, "i0")[0]:
        assert not check_conditions(R, [DetCondition(1, 2, 3)])["1,2.3"]


# -- hypergroupoid blocks ----------------------------------------------------------

def test_block_zero_rows():
    B = hypergroupoid_blocks(6, 1)
    assert B.sorted_rows() == [
        (0, 1, 2, 3, 4, 5, 6), (7, 1, 2, 3, 4, 5, 6), (8, 9, 2, 3, 4, 5, 6),
        (10, 11, 12, 3, 4, 5, 6), (13, 14, 15, 16, 4, 5, 6), (17, 18, 19, 20, 21, 5, 6),
        (22, 23, 24, 25, 26, 27, 6)]


def test_block_stride():
    assert block_stride(6) == 28
    B = hypergroupoid_blocks(6, 3)
    labels = sorted({v for r in B.rows for v in r})
    assert labels == list(range(3 * 28))
    assert (28, 29, 30, 31, 32, 33, 34) in B.rows and (56, 57, 58, 59, 60, 61, 62) in B.rows
    with pytest.raises(ValueError):
        hypergroupoid_blocks(2, 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_blocks_meet_every_slot(n):
    B = hypergroupoid_blocks(n, 2)
    assert model_check_overlap(B, "i0")[0] and model_check_overlap(B, "in1")[0]
    for i in range(n + 2):
        fails = check_conditions(B, required_conditions(n, i))
        assert all(not v for v in fails.values()), (i, fails)


def test_image_along_map():
    assert image([(0, 1, 2), (3, 4, 5)], (0, 0, 2)) == {(0, 0, 2), (3, 3, 5)}
