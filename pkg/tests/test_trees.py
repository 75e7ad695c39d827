from itertools import islice, product

import pytest

from bairespace import stump as st
from bairespace import trees as tr
from bairespace.errors import DomainError, ParseError
from bairespace.seqcode import Order, encode, kb_compare_seq

ONE = st.ONE_STAR
S1 = st.successor(ONE)


def loop0():
    return tr.make([{"explicit": {0: 0}}], 0)


def test_prune_examples():
    t = loop0()
    assert tr.same_set(tr.prune(t), t)
    assert tr.point_member(tr.prune(t), (), (0,))
    dead = tr.make([{"explicit": {0: 1}}, {"explicit": {}}], 0)
    assert tr.prune(dead).root is None


def test_node_member():
    assert tr.node_member(tr.cantor(), encode([0, 1, 1]))
    assert not tr.node_member(tr.cantor(), encode([0, 2]))
    assert tr.node_member(tr.baire(), encode([9, 0, 44]))


def test_is_fan():
    assert tr.is_fan(tr.cantor())
    assert not tr.is_fan(tr.baire())
    for family in tr.FAMILIES:
        for s in (ONE, S1, st.node([ONE], [st.EMPTY])):
            assert tr.is_fan(tr.closure_tree(family, s))


def test_intersect_examples():
    c = tr.cantor()
    assert tr.same_set(tr.intersect(c, c), c)
    assert tr.same_set(tr.intersect(c, tr.baire()), c)
    assert tr.intersect(tr.constant_path(0), tr.constant_path(1)).root is None


def test_path_count_examples():
    c = tr.cantor()
    assert tr.path_count(c)[c.root] == "many"
    p = tr.path((1, 2), (0,))
    counts = tr.path_count(p)
    assert all(counts[q] == 1 for q in tr.live_states(p))
    star = tr.closure_tree("cbstar", ONE)
    counts = tr.path_count(star)
    assert counts[star.root] == "many"
    assert counts[tr._walk_from(star, star.root, (1,))] == 1


def test_derived_examples():
    c = tr.cantor()
    assert tr.same_set(tr.derived(c), c)
    assert tr.derived(tr.path((3,), (1, 0))).root is None
    assert tr.same_set(tr.derived(tr.closure_tree("cbstar", ONE)), tr.constant_path(0))


def test_der_examples():
    c = tr.closure_tree("cbstar", S1)
    assert tr.same_set(tr.der(st.EMPTY, c), c)
    assert tr.der(ONE, tr.closure_tree("cb", ONE)).root is None
    assert tr.point_member(tr.der(ONE, tr.closure_tree("cb", S1)), (), (0,))
    # Der(1*, X) is the derived set of X, and the closure of CB*_{1*} has one limit point.
    assert tr.same_set(tr.der(ONE, tr.closure_tree("cbstar", ONE)), tr.constant_path(0))


def test_der_on_finite_set_is_empty():
    # 1* < Node[1* | Empty] but CB of the latter is the two points 0̲ and <1>0̲.
    rho = st.node([ONE], [st.EMPTY])
    assert st.lt(ONE, rho)
    closure = tr.closure_tree("cb", rho)
    assert tr.point_member(closure, (), (0,))
    assert tr.point_member(closure, (1,), (0,))
    assert tr.der(ONE, closure).root is None


def test_cb_family_examples():
    assert tr.closure_tree("cb", st.EMPTY).root is None
    assert tr.enumerate_family("cb", st.EMPTY, 3) is None
    single = tr.closure_tree("cbstar", st.EMPTY)
    assert tr.same_set(single, tr.constant_path(0))
    star = tr.closure_tree("cbstar", ONE)
    assert len(star.states) == 2
    for n in range(6):
        assert tr.point_member(star, (0,) * n + (1,), (0,))
        assert not tr.point_member(star, (0,) * n + (1, 1), (0,))
    assert tr.enumerate_family("cbstar", ONE, encode([2])) == (0, 0, 1)
    with pytest.raises(DomainError):
        tr.closure_tree("nope", ONE)


def test_bar_extract_examples():
    bar = tr.bar_extract_seqs(tr.cantor(), lambda s: len(s) >= 3, 64)
    assert sorted(bar) == sorted(product((0, 1), repeat=3))
    bar = tr.bar_extract_seqs(tr.closure_tree("cbstar", ONE), lambda s: len(s) >= 2, 64)
    assert sorted(bar) == [(0, 0), (0, 1), (1, 0)]
    assert tr.bar_extract_seqs(tr.cantor(), lambda s: True, 64) == [()]


def test_find_infinite_path():
    assert tr.find_infinite_path(tr.cantor()) == ((), (0,))
    assert tr.find_infinite_path(tr.empty()) is None
    assert tr.find_infinite_path(tr.closure_tree("cbstar", ONE)) == ((), (0,))
    chain = list(islice(tr.descending_chain((), (0,)), 4))
    assert chain == [(), (0,), (0, 0), (0, 0, 0)]


def test_descending_chain_is_kb_descending():
    t = tr.make([{"explicit": {3: 1}}, {"explicit": {1: 2, 2: 1}}, {"explicit": {0: 1}}], 0)
    prefix, cycle = tr.find_infinite_path(t)
    chain = list(islice(tr.descending_chain(prefix, cycle), 100))
    for a, b in zip(chain, chain[1:]):
        assert kb_compare_seq(b, a) is Order.LESS
    assert all(tr.node_member_seq(t, s) for s in chain)


def test_bar01_examples():
    assert tr.bar01(0) == [encode([])]
    assert tr.bar01(1) == [encode([0]), encode([1])]
    assert tr.bar01(2) == [encode([0, 0]), encode([0, 1]), encode([1])]


def test_json_round_trip():
    for t in (tr.cantor(), tr.baire(), tr.empty(), tr.closure_tree("cbdagger", S1)):
        doc = tr.to_json(t)
        assert tr.to_json(tr.from_json(doc)) == doc
    with pytest.raises(ParseError):
        tr.from_json({"root": 0, "states": [{"edges": {"explicit": {"0": 7}}}]})
    with pytest.raises(ParseError):
        tr.from_json("forest")
