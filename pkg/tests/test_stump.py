import random

import pytest

from bairespace import stump as st
from bairespace.errors import DomainError, ParseError
from bairespace.suites import random_stump

from oracles import brute_embeds, hull_law_holds, nodes_of, proper_prefix

E, ONE = st.EMPTY, st.ONE_STAR
S1 = st.successor(ONE)


def test_normal_form():
    assert st.node([E], [E]) is st.node([], [E])
    assert st.node([], [ONE, ONE]) is st.node([], [ONE])
    assert st.normalize(E) is E
    assert st.successor(E) is ONE


def test_order_examples():
    for s in (E, ONE, S1, st.node([ONE], [E])):
        assert st.leq(E, s)
    assert st.lt(ONE, S1)
    assert not st.lt(ONE, ONE)
    assert not st.leq(ONE, E)


def test_successor_is_above():
    rng = random.Random(5)
    for _ in range(200):
        s = random_stump(rng, 3, 3)
        succ = st.successor(s)
        assert st.lt(s, succ)
        assert st.normalize(succ) is succ


def test_natural_sum_examples():
    for s in (E, ONE, S1, st.node([ONE], [E])):
        assert st.natural_sum(E, s) is s
        assert st.natural_sum(s, E) is s
    assert st.natural_sum(ONE, ONE) is S1


def test_tree_union_examples():
    for s in (E, ONE, S1):
        assert st.tree_union(E, s) is s
        assert st.tree_union(s, s) is s
    assert st.tree_union(ONE, S1) is S1


def test_hull_examples():
    assert st.hull(E) is E
    assert st.hull(ONE) is ONE
    assert st.hull(st.node([E, ONE], [E])) is ONE


def test_hull_law_on_examples():
    for s in (ONE, S1, st.node([E, ONE], [E]), st.node([S1, E], [ONE])):
        assert hull_law_holds(s, st.hull(s), 4, 2)


def test_predicates_examples():
    assert st.predicates(ONE)["is_hereditarily_increasing"]
    # Children shrink from 1* to Empty, so the excluded sets grow: increasing.
    assert st.predicates(st.node([ONE, E], [E]))["is_hereditarily_increasing"]
    assert not st.predicates(st.node([E, ONE], [E]))["is_hereditarily_increasing"]
    assert st.predicates(S1)["is_hereditarily_repetitive"]
    assert not st.predicates(st.node([ONE], [E]))["is_hereditarily_repetitive"]


def test_increasing_matches_upward_closure():
    rng = random.Random(11)
    for _ in range(100):
        s = random_stump(rng, 3, 3)
        assert st.is_hereditarily_increasing(s) == hull_law_holds(s, s, 4, 4)


def test_embed_examples():
    assert st.embeds(E, S1) == {}
    table = st.embeds(ONE, S1)
    assert table is not None and table[()] == ()
    for u, v in table.items():
        if u:
            assert proper_prefix(table[u[:-1]], v)
            assert st.code_at(S1, v) == 0
    assert st.embeds(S1, ONE) is None


def test_embed_agrees_with_brute_force():
    fin = [E, ONE, st.node([ONE, E], [E]), st.node([ONE, ONE], [E]),
           st.node([st.node([ONE], [E])], [E]), st.node([E, E, ONE], [E])]
    for s in fin:
        for t in fin:
            assert (st.embeds(s, t) is not None) == brute_embeds(s, t)
            assert st.leq(s, t) == brute_embeds(s, t)


def test_admitted_nodes():
    s = st.node([ONE, E], [E])
    assert sorted(st.admitted_nodes(s)) == sorted(nodes_of(s))
    with pytest.raises(DomainError):
        st.admitted_nodes(S1)


def test_critical_extension():
    ext = st.critical_extension(E, 1)
    assert ext.child(0) is E
    seq = st.critical_sequence(ONE, 2)
    assert seq[0] is ONE
    assert seq[1] is st.hull(st.natural_sum(ONE, ONE))
    ext = st.critical_extension(ONE, 3)
    assert st.code_subset(ONE, ext.child(0))
    with pytest.raises(DomainError):
        st.critical_extension(ONE, 0)


def test_json_round_trip():
    for s in (E, ONE, S1, st.node([ONE, E], [S1, E])):
        assert st.from_json(st.to_json(s)) is s
    assert st.from_json("1*") is ONE
    with pytest.raises(ParseError):
        st.from_json({"prefix": [], "cycle": []})
    with pytest.raises(ParseError):
        st.from_json(3)
