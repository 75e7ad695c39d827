import random
from itertools import islice, product

from hypothesis import given, settings
from hypothesis import strategies as hs

from bairespace import planted
from bairespace import stump as st
from bairespace import trees as tr
from bairespace.errors import FuelExhausted
from bairespace.functional import (
    Const, EvPeriodic, TreeChar, apply, eval_at, finite_apply_seq, identity_code, modulus,
)
from bairespace.seqcode import (
    Order, decode, encode, interleave_parts, is_prefix_seq, kb_compare, kb_compare_seq, pair,
    prepend,
)
from bairespace.suites import random_stump

from oracles import ref_kb

nat = hs.integers(min_value=0, max_value=10 ** 6 - 1)
small_list = hs.lists(hs.integers(0, 8), max_size=6)
seeds = hs.integers(0, 2 ** 32 - 1)


# ---------------------------------------------------------------- codes

@given(nat)
def test_decode_encode(n):
    assert encode(decode(n)) == n


@given(small_list)
def test_encode_decode(xs):
    assert decode(encode(xs)) == tuple(xs)


@given(hs.integers(0, 50), small_list)
def test_prepend_is_pair(n, xs):
    s = encode(xs)
    assert prepend(n, s) == pair(n, s) == encode([n] + xs)


@given(hs.lists(hs.tuples(hs.integers(0, 9), hs.integers(0, 9)), max_size=5))
def test_interleave_parts_even(pairs):
    flat = [x for p in pairs for x in p]
    i, ii = interleave_parts(encode(flat))
    assert decode(i) == tuple(p[0] for p in pairs)
    assert decode(ii) == tuple(p[1] for p in pairs)


@given(nat, nat, nat)
def test_kb_linear(a, b, c):
    ab = kb_compare(a, b)
    assert (ab is Order.EQUAL) == (a == b)
    assert {Order.LESS: -1, Order.EQUAL: 0, Order.GREATER: 1}[ab] == ref_kb(decode(a), decode(b))
    if ab is Order.LESS and kb_compare(b, c) is Order.LESS:
        assert kb_compare(a, c) is Order.LESS


@given(small_list, small_list)
def test_kb_extension_is_smaller(xs, ys):
    if ys:
        assert kb_compare(encode(xs + ys), encode(xs)) is Order.LESS


# ---------------------------------------------------------------- streams and functions

ev = hs.builds(EvPeriodic, hs.lists(hs.integers(0, 3), max_size=4),
               hs.lists(hs.integers(0, 3), min_size=1, max_size=3))


@given(seeds, ev, hs.integers(1, 40))
def test_eval_at_convention(seed, alpha, fuel):
    rng = random.Random(seed)
    t = tr.finite_tree(planted.rand_nodes(rng, 6, 3, 4))
    gamma = TreeChar(t) if rng.random() < 0.8 else Const(rng.randrange(1, 4))
    try:
        value = eval_at(gamma, alpha, fuel)
    except FuelExhausted:
        return
    n = modulus(gamma, alpha, fuel)
    assert all(gamma.at_seq(alpha.prefix(i)) == 0 for i in range(n))
    assert gamma.at_seq(alpha.prefix(n)) == value + 1


@given(ev, hs.integers(0, 12), hs.integers(0, 12))
def test_finite_apply_monotone_and_consistent(alpha, m, k):
    gamma = identity_code()
    short, long_ = alpha.prefix(min(m, k)), alpha.prefix(max(m, k))
    a, b = finite_apply_seq(gamma, short), finite_apply_seq(gamma, long_)
    assert is_prefix_seq(a, b)
    image = apply(gamma, alpha)
    assert is_prefix_seq(a, image.prefix(len(a)))


@given(ev, hs.lists(hs.integers(0, 200), max_size=10))
def test_evaluation_is_repeatable(alpha, points):
    image = apply(identity_code(), alpha)
    first = [image.at(n) for n in points]
    assert [image.at(n) for n in points] == first == [alpha.at(n) for n in points]


# ---------------------------------------------------------------- stumps

@settings(max_examples=60)
@given(seeds)
def test_stump_order_laws(seed):
    rng = random.Random(seed)
    s, t, r = (random_stump(rng, 3, 3) for _ in range(3))
    assert st.leq(s, s) and not st.lt(s, s)
    if st.leq(s, t) and st.lt(t, r):
        assert st.lt(s, r)
    if st.lt(s, t) and st.leq(t, r):
        assert st.lt(s, r)
    if st.leq(s, t) and st.leq(t, r):
        assert st.leq(s, r)
    assert st.lt(s, st.successor(s))


@settings(max_examples=60)
@given(seeds)
def test_sum_and_hull_laws(seed):
    rng = random.Random(seed)
    s, t = random_stump(rng, 3, 2), random_stump(rng, 3, 2)
    total = st.natural_sum(s, t)
    assert st.mutual_leq(total, st.natural_sum(t, s))
    if not s.is_empty:
        assert all(st.lt(st.natural_sum(c, t), total) for c in s.children())
    h = st.hull(s)
    assert st.code_subset(s, h)
    assert st.is_hereditarily_increasing(h)
    assert st.is_hereditarily_increasing(st.tree_union(h, st.hull(t)))


# ---------------------------------------------------------------- trees

@settings(max_examples=60)
@given(seeds)
def test_derived_shrinks(seed):
    rng = random.Random(seed)
    t = planted.rand_fan(rng)
    d = tr.derived(t)
    assert tr.subset_nodes(d, tr.prune(t))
    assert tr.subset_nodes(tr.derived(d), d)


def test_derived_fixes_perfect_trees():
    for t in (tr.cantor(), tr.baire()):
        assert tr.same_set(tr.derived(t), t)


@settings(max_examples=40)
@given(seeds, hs.integers(0, 4))
def test_bar_extract_thin_cover(seed, k):
    rng = random.Random(seed)
    fan = tr.prune(planted.rand_fan(rng))
    if fan.root is None:
        return
    bar = tr.bar_extract_seqs(fan, lambda s: len(s) >= k, 64)
    for i, x in enumerate(bar):
        for y in bar[i + 1:]:
            assert not is_prefix_seq(x, y) and not is_prefix_seq(y, x)
    for s in tr.fan_nodes(fan, k):
        assert sum(is_prefix_seq(x, s) for x in bar) == 1


@settings(max_examples=40)
@given(seeds)
def test_infinite_path_chain(seed):
    rng = random.Random(seed)
    t = planted.rand_fan(rng)
    found = tr.find_infinite_path(t)
    if found is None:
        assert tr.prune(t).root is None
        return
    chain = list(islice(tr.descending_chain(*found), 100))
    assert all(tr.node_member_seq(t, s) for s in chain)
    assert all(kb_compare_seq(b, a) is Order.LESS for a, b in zip(chain, chain[1:]))


@given(hs.integers(0, 7))
def test_bar01_thin_cover(n):
    bar = tr.bar01_seqs(n)
    assert len(bar) == n + 1
    for s in product((0, 1), repeat=n + 1):
        assert sum(is_prefix_seq(x, s) for x in bar) == 1


def repetitive_stump(rng: random.Random, depth: int) -> st.Stump:
    """Every child recurs infinitely often: no finite prefix of children."""
    if depth == 0 or rng.random() < 0.2:
        return st.EMPTY
    return st.node([], [repetitive_stump(rng, depth - 1) for _ in range(rng.randint(1, 3))])


@settings(max_examples=60)
@given(seeds)
def test_cb_implications_on_repetitive_stumps(seed):
    rng = random.Random(seed)
    s, t = repetitive_stump(rng, 3), repetitive_stump(rng, 3)
    closure = tr.closure_tree("cb", s)
    if st.leq(s, t):
        assert tr.der(t, closure).root is None
    if st.lt(t, s):
        assert tr.point_member(tr.der(t, closure), (), (0,))
