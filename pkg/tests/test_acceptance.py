"""The thirteen acceptance criteria, each checked against an independent oracle.

Run under pytest (one test per criterion, a summary line each at the end)
or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from functools import lru_cache
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bairespace import planted  # noqa: E402
from bairespace import reductions as R  # noqa: E402
from bairespace import stump as st  # noqa: E402
from bairespace import trees as tr  # noqa: E402
from bairespace.functional import TreeChar, apply, identity_code  # noqa: E402
from bairespace.seqcode import (  # noqa: E402
    Order, decode, encode, is_prefix_seq, kb_compare, pair, unpair,
)
from bairespace.suites import random_stump, small_finite_stump  # noqa: E402

from oracles import (  # noqa: E402
    TABLE, brute_embeds, diagonal_table, proper_prefix, ref_encode, ref_kb, tree_nodes,
)

SEED = 20240601
RESULTS: dict[int, tuple[bool, str, float]] = {}


class Tally:
    def __init__(self):
        self.checks = 0
        self.bad: list = []

    def check(self, ok: bool, what) -> None:
        self.checks += 1
        if not ok and len(self.bad) < 3:
            self.bad.append(what)

    @property
    def ok(self) -> bool:
        return not self.bad

    def detail(self) -> str:
        return f"{self.checks} checks" + (f"; first problems: {self.bad}" if self.bad else "")


# ---------------------------------------------------------------- criteria

def codec_laws(t: Tally):
    _, back = diagonal_table(TABLE)
    for n in range(10 ** 5):
        s = decode(n)
        t.check(encode(s) == n, ("encode.decode", n))
        if n:
            t.check(unpair(n) == back[n] and pair(*back[n]) == n, ("pair", n))
    for k in range(6):
        for xs in product(range(7), repeat=k):
            code = encode(xs)
            t.check(decode(code) == xs, ("decode.encode", xs))
            if code < 10 ** 5:
                t.check(code == ref_encode(xs), ("reference", xs))
            if xs:
                t.check(pair(xs[0], encode(xs[1:])) == code, ("J", xs))


def kb_order(t: Tally):
    rng = random.Random(f"{SEED}:kb")
    sign = {Order.LESS: -1, Order.EQUAL: 0, Order.GREATER: 1}
    for _ in range(10 ** 4):
        a, b, c = (rng.randrange(10 ** 6) for _ in range(3))
        ab, ba = sign[kb_compare(a, b)], sign[kb_compare(b, a)]
        t.check(ab == -ba and (ab == 0) == (a == b), ("trichotomy", a, b))
        t.check(ab == ref_kb(decode(a), decode(b)), ("reference", a, b))
        bc, ac = sign[kb_compare(b, c)], sign[kb_compare(a, c)]
        if ab < 0 and bc < 0:
            t.check(ac < 0, ("transitive", a, b, c))


def stump_order_laws(t: Tally):
    rng = random.Random(f"{SEED}:order")
    pool = [random_stump(rng, 4, 3) for _ in range(1000)]
    for s in pool:
        t.check(st.leq(s, s), ("reflexive", s))
        t.check(not st.lt(s, s), ("irreflexive", s))
    for _ in range(1000):
        s, u, r = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        if st.leq(s, u) and st.leq(u, r):
            t.check(st.leq(s, r), ("leq-leq", s, u, r))
        if st.leq(s, u) and st.lt(u, r):
            t.check(st.lt(s, r), ("leq-lt", s, u, r))
        if st.lt(s, u) and st.leq(u, r):
            t.check(st.lt(s, r), ("lt-leq", s, u, r))


def leq_is_embedding(t: Tally):
    rng = random.Random(f"{SEED}:embed")
    for _ in range(500):
        s, u = small_finite_stump(rng), small_finite_stump(rng)
        t.check(st.leq(s, u) == brute_embeds(s, u), ("leq vs search", s, u))


def sum_laws(t: Tally):
    rng = random.Random(f"{SEED}:sum")
    for _ in range(200):
        s, u, r = (random_stump(rng, 3, 3) for _ in range(3))
        total = st.natural_sum(s, u)
        if not s.is_empty:
            for c in s.children():
                t.check(st.lt(st.natural_sum(c, u), total), ("left child", s, u))
        if not u.is_empty:
            for c in u.children():
                t.check(st.lt(st.natural_sum(s, c), total), ("right child", s, u))
        t.check(st.mutual_leq(total, st.natural_sum(u, s)), ("commutative", s, u))
        t.check(st.mutual_leq(st.natural_sum(total, r), st.natural_sum(s, st.natural_sum(u, r))),
                ("associative", s, u, r))


def upward_closure(s: st.Stump, depth: int, top: int):
    """excluded(t): s excludes some u pointwise below t, by lowering one entry at a time."""
    @lru_cache(maxsize=None)
    def excluded(v: tuple) -> bool:
        if st.code_at(s, v) == 1:
            return True
        return any(excluded(v[:i] + (v[i] - 1,) + v[i + 1:]) for i in range(len(v)) if v[i])
    return excluded


def hull_laws(t: Tally):
    rng = random.Random(f"{SEED}:hull")
    depth, top = 5, 3
    for _ in range(200):
        s, u = random_stump(rng, 3, 3), random_stump(rng, 3, 3)
        h = st.hull(s)
        t.check(st.code_subset(s, h), ("growth", s))
        excluded = upward_closure(s, depth, top)
        for k in range(depth + 1):
            for v in product(range(top + 1), repeat=k):
                if (st.code_at(h, v) == 1) != excluded(v):
                    t.check(False, ("characterization", s, v))
                    break
        t.check(True, ("characterization", s))
        t.check(st.is_hereditarily_increasing(h), ("increasing", s))
        t.check(st.is_hereditarily_increasing(st.tree_union(h, st.hull(u))), ("union", s, u))


def cantor_bendixson(t: Tally):
    one = st.ONE_STAR
    t.check(tr.der(one, tr.closure_tree("cb", one)).root is None, "anchor: empty")
    t.check(tr.point_member(tr.der(one, tr.closure_tree("cb", st.successor(one))), (), (0,)),
            "anchor: zero point")
    rng = random.Random(f"{SEED}:cb")
    # 1* and Node[1* | Empty] are a known pair where the second implication fails.
    pool = [one, st.node([one], [st.EMPTY])] + [random_stump(rng, 3, 3) for _ in range(38)]
    for s in pool:
        closure = tr.closure_tree("cb", s)
        for u in pool:
            if st.leq(s, u):
                t.check(tr.der(u, closure).root is None, ("leq", s, u))
            if st.lt(u, s):
                t.check(tr.point_member(tr.der(u, closure), (), (0,)), ("lt", u, s))


def bar_is_thin_cover(t: Tally, fan: tr.RegularTree, bar: list, depth: int):
    member = lambda s: tr.node_member_seq(fan, s)  # noqa: E731
    for i, x in enumerate(bar):
        for y in bar[i + 1:]:
            t.check(not is_prefix_seq(x, y) and not is_prefix_seq(y, x), ("thin", x, y))
    for s in tree_nodes(member, depth, 3):
        t.check(sum(is_prefix_seq(x, s) for x in bar) == 1, ("cover", s))


def fan_realizer(t: Tally):
    cantor = tr.cantor()
    bar = tr.bar_extract_seqs(cantor, lambda s: len(s) >= 5, 64)
    t.check(len(bar) == 32 and sorted(bar) == sorted(product((0, 1), repeat=5)), ("cantor", bar))
    bar_is_thin_cover(t, cantor, bar, 5)
    star = tr.closure_tree("cbstar", st.ONE_STAR)
    bar = tr.bar_extract_seqs(star, lambda s: len(s) >= 2, 64)
    expected = tree_nodes(lambda s: tr.node_member_seq(star, s), 2, 3)
    t.check(sorted(bar) == sorted(expected) == [(0, 0), (0, 1), (1, 0)], ("cbstar", bar))
    bar_is_thin_cover(t, star, bar, 2)


def bar01_law(t: Tally):
    for n in range(11):
        bar = tr.bar01_seqs(n)
        t.check(len(bar) == n + 1, ("size", n))
        t.check(all(x[:len(y)] != y and y[:len(x)] != x
                    for i, x in enumerate(bar) for y in bar[i + 1:]), ("thin", n))
        for s in product((0, 1), repeat=n + 1):
            t.check(sum(s[:len(x)] == x for x in bar) == 1, ("cover", n, s))


def witness_round_trips(t: Tally):
    names = sorted(planted.INSTANCES)
    t.check(len(names) >= 15, ("catalog size", len(names)))
    t.check(set(names) == set(R.CATALOG), ("every entry planted", set(R.CATALOG) ^ set(names)))
    for name in names:
        for o in planted.round_trips(name, 100, SEED):
            t.check(o.ok, (name, o.seed, o.failures()))
            t.check(not o.exhausted, (name, o.seed, "fuel exhausted"))


def forbids_at(code, beta, depth: int):
    """Least i <= depth with code non-zero at the first i values of beta."""
    return next((i for i in range(depth + 1) if code.at_seq(beta.prefix(i)) != 0), None)


def fixed_point(t: Tally):
    rng = random.Random(f"{SEED}:fixed")
    gammas = [identity_code()]
    for _ in range(10):
        tree = planted.tree_with(rng, [planted.rand_ev(rng, 2)], 3)
        gammas.append(R.build("sigma11_to_e11", {"code": TreeChar(tree)}).forward)
    depth = 8
    for g in gammas:
        alpha = R.fixed_point(g)
        image = apply(g, alpha)
        for _ in range(100):
            beta = planted.rand_ev(rng, 2)
            n, m = forbids_at(alpha, beta, depth), forbids_at(image, beta, depth)
            if n is not None:
                # alpha forbids beta by depth n: the image must too, no later.
                t.check(m is not None and m <= n, ("alpha forbids, image not", beta))
            if m is not None:
                back = R.transported_depth(g, alpha, beta, m)
                t.check(forbids_at(alpha, beta, back) is not None, ("image forbids, alpha not", beta))
            if n is None and m is None:
                t.check(True, "neither forbids")


def boundedness(t: Tally):
    rng = random.Random(f"{SEED}:bounded")
    for _ in range(20):
        g = planted.boundedness_gamma(rng)
        alpha, embed_of = R.boundedness(g)
        for _ in range(5):
            beta = planted.rand_ev(rng)
            code = apply(g, beta)
            emb = embed_of(beta)
            # Source trees have entries <= 2 and length <= 3: search one step wider.
            nodes = tree_nodes(lambda s: code.at_seq(s) == 0, 0, 4)
            for k in range(1, 5):
                nodes += tree_nodes(lambda s: code.at_seq(s) == 0, k, 4)
            for s in nodes:
                e = emb(s)
                t.check(all(alpha.at_seq(e[:i]) == 0 for i in range(len(e) + 1)), ("forbidden", s))
                if s:
                    t.check(proper_prefix(emb(s[:-1]), e), ("monotone", s))


def range_codes(t: Tally):
    beta, pre = R.injection_range_code(identity_code())
    for c in range(10 ** 4):
        s = decode(c)
        t.check((beta.at(c) == 0) == (set(s) <= {0, 1}), ("beta", c))
    rng = random.Random(f"{SEED}:range")
    for _ in range(100):
        a = planted.rand_binary(rng)
        t.check(pre(apply(identity_code(), a)).prefix(50) == a.prefix(50), ("preimage", a))


CRITERIA = [
    (1, "codec laws", codec_laws),
    (2, "KB linear order", kb_order),
    (3, "stump order laws", stump_order_laws),
    (4, "leq agrees with embedding search", leq_is_embedding),
    (5, "natural sum laws", sum_laws),
    (6, "hull laws", hull_laws),
    (7, "Cantor-Bendixson implications", cantor_bendixson),
    (8, "fan realizer", fan_realizer),
    (9, "bar01", bar01_law),
    (10, "reduction witness round-trips", witness_round_trips),
    (11, "fixed point", fixed_point),
    (12, "boundedness", boundedness),
    (13, "range codes", range_codes),
]


def run_criterion(number: int) -> tuple[bool, str, float]:
    _, name, fn = CRITERIA[number - 1]
    tally = Tally()
    t0 = time.perf_counter()
    fn(tally)
    elapsed = time.perf_counter() - t0
    RESULTS[number] = (tally.ok, f"{name}: {tally.detail()}", elapsed)
    return RESULTS[number]


def report_line(number: int) -> str:
    ok, detail, elapsed = RESULTS[number]
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}"


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    ok, detail, _ = run_criterion(number)
    print(report_line(number))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, _, _ in CRITERIA:
        ok, _, _ = run_criterion(number)
        failed += not ok
        print(report_line(number), flush=True)
    sys.exit(1 if failed else 0)
