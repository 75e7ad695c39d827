"""Named acceptance suites, runnable from the command line.

Each suite returns a ``SuiteResult`` with a pass flag, a count of checks
and the first few problems found.  All randomness comes from the seed.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import planted
from . import reductions as R
from . import stump as st
from . import trees as tr
from .functional import TreeChar, apply, identity_code
from .seqcode import (
    Order, decode, encode, is_prefix_seq, kb_compare, pair, unpair,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checks: int = 0
    problems: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, problem) -> None:
        self.checks += 1
        if not ok:
            self.passed = False
            if len(self.problems) < 5:
                self.problems.append(problem)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checks": self.checks,
                "problems": [str(p) for p in self.problems]}


# ---------------------------------------------------------------- random stumps

def random_stump(rng: random.Random, depth: int, branching: int = 3,
                 finite: bool = False) -> st.Stump:
    """A random stump of depth at most ``depth`` with child window at most ``branching``."""
    if depth == 0 or rng.random() < 0.2:
        return st.EMPTY
    if finite:
        k = rng.randint(1, branching)
        return st.node([random_stump(rng, depth - 1, branching, True) for _ in range(k)],
                       [st.EMPTY])
    p = rng.randint(0, branching - 1)
    c = rng.randint(1, branching - p)
    return st.node([random_stump(rng, depth - 1, branching) for _ in range(p)],
                   [random_stump(rng, depth - 1, branching) for _ in range(c)])


def small_finite_stump(rng: random.Random, max_nodes: int = 12) -> st.Stump:
    while True:
        s = random_stump(rng, 3, 3, finite=True)
        if len(st.representative_nodes(s)) <= max_nodes:
            return s


# ---------------------------------------------------------------- suites

SUITES: dict[str, Callable[[int], SuiteResult]] = {}


def suite(name: str):
    def deco(fn):
        def run(seed: int = 0) -> SuiteResult:
            res = SuiteResult(name)
            t0 = time.perf_counter()
            fn(res, random.Random(f"{name}:{seed}"))
            res.seconds = time.perf_counter() - t0
            return res
        SUITES[name] = run
        return run
    return deco


@suite("codec")
def _codec(res, rng):
    for n in range(10 ** 5):
        res.check(encode(decode(n)) == n, n)
        if n:
            res.check(pair(*unpair(n)) == n, n)
    for k in range(6):
        for xs in product(range(7), repeat=k):
            res.check(decode(encode(xs)) == xs, xs)
            if xs:
                res.check(pair(xs[0], encode(xs[1:])) == encode(xs), xs)


@suite("kb")
def _kb(res, rng):
    for _ in range(10 ** 4):
        a, b, c = (rng.randrange(10 ** 6) for _ in range(3))
        ab, ba = kb_compare(a, b), kb_compare(b, a)
        flip = {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS, Order.EQUAL: Order.EQUAL}
        res.check(flip[ab] == ba and (ab is Order.EQUAL) == (a == b), (a, b))
        if ab is Order.LESS and kb_compare(b, c) is Order.LESS:
            res.check(kb_compare(a, c) is Order.LESS, (a, b, c))


@suite("stump-order")
def _stump_order(res, rng):
    pool = [random_stump(rng, 4, 3) for _ in range(1000)]
    for s in pool:
        res.check(st.leq(s, s), ("reflexive", s))
        res.check(not st.lt(s, s), ("irreflexive", s))
    for _ in range(1000):
        s, t, r = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        if st.leq(s, t) and st.lt(t, r):
            res.check(st.lt(s, r), ("leq-lt", s, t, r))
        if st.lt(s, t) and st.leq(t, r):
            res.check(st.lt(s, r), ("lt-leq", s, t, r))
        if st.leq(s, t) and st.leq(t, r):
            res.check(st.leq(s, r), ("leq-leq", s, t, r))


@suite("leq-embed")
def _leq_embed(res, rng):
    for _ in range(500):
        s, t = small_finite_stump(rng), small_finite_stump(rng)
        res.check(st.leq(s, t) == (st.embeds(s, t) is not None), (s, t))


@suite("sum")
def _sum(res, rng):
    for _ in range(200):
        s, t, r = (random_stump(rng, 3, 3) for _ in range(3))
        total = st.natural_sum(s, t)
        if not s.is_empty:
            for c in s.children():
                res.check(st.lt(st.natural_sum(c, t), total), ("child", s, t))
        res.check(st.mutual_leq(total, st.natural_sum(t, s)), ("commutative", s, t))
        res.check(st.mutual_leq(st.natural_sum(total, r),
                                st.natural_sum(s, st.natural_sum(t, r))), ("associative", s, t, r))


def hull_characterization(s: st.Stump, h: st.Stump, depth: int, top: int) -> bool:
    """h excludes t iff s excludes some u pointwise below t (all t up to ``depth``)."""
    for k in range(depth + 1):
        for t in product(range(top + 1), repeat=k):
            below = any(st.code_at(s, u) == 1 for u in product(*(range(x + 1) for x in t)))
            if (st.code_at(h, t) == 1) != below:
                return False
    return True


@suite("hull")
def _hull(res, rng):
    for _ in range(200):
        s, t = random_stump(rng, 3, 3), random_stump(rng, 3, 3)
        h = st.hull(s)
        res.check(st.code_subset(s, h), ("growth", s))
        res.check(hull_characterization(s, h, 4, 2), ("characterization", s))
        res.check(st.is_hereditarily_increasing(h), ("his", s))
        res.check(st.is_hereditarily_increasing(st.tree_union(h, st.hull(t))), ("union", s, t))


@suite("cb")
def _cb(res, rng):
    one = st.ONE_STAR
    res.check(tr.der(one, tr.closure_tree("cb", one)).root is None, "anchor empty")
    zero = tr.der(one, tr.closure_tree("cb", st.successor(one)))
    res.check(tr.point_member(zero, (), (0,)), "anchor zero point")
    pool = [random_stump(rng, 3, 3) for _ in range(40)]
    for s in pool:
        closure = tr.closure_tree("cb", s)
        for t in pool:
            if st.leq(s, t):
                res.check(tr.der(t, closure).root is None, ("leq", s, t))
            if st.lt(t, s):
                res.check(tr.point_member(tr.der(t, closure), (), (0,)), ("lt", t, s))


@suite("fan")
def _fan(res, rng):
    bar = tr.bar_extract_seqs(tr.cantor(), lambda s: len(s) >= 5, 64)
    res.check(len(bar) == 32, ("cantor", len(bar)))
    bar = tr.bar_extract_seqs(tr.closure_tree("cbstar", st.ONE_STAR), lambda s: len(s) >= 2, 64)
    res.check(sorted(bar) == [(0, 0), (0, 1), (1, 0)], ("cbstar", bar))


@suite("bar01")
def _bar01(res, rng):
    for n in range(11):
        b = tr.bar01_seqs(n)
        res.check(len(b) == n + 1, ("size", n))
        res.check(all(not is_prefix_seq(x, y) and not is_prefix_seq(y, x)
                      for i, x in enumerate(b) for y in b[i + 1:]), ("thin", n))
        for s in product((0, 1), repeat=n + 1):
            res.check(sum(is_prefix_seq(x, s) for x in b) == 1, ("cover", n, s))


@suite("roundtrip")
def _roundtrip(res, rng):
    seed = rng.randrange(1 << 30)
    for name in planted.INSTANCES:
        for o in planted.round_trips(name, 100, seed):
            res.check(o.ok and not o.exhausted, (name, o.seed, o.failures()))


@suite("fixed-point")
def _fixed(res, rng):
    gammas = [identity_code()]
    for _ in range(10):
        t = planted.tree_with(rng, [planted.rand_ev(rng, 2)], 3)
        gammas.append(R.build("sigma11_to_e11", {"code": TreeChar(t)}).forward)
    for g in gammas:
        alpha = R.fixed_point(g)
        for _ in range(100):
            beta = planted.rand_ev(rng, 2)
            v = planted.fixed_point_verdict(g, alpha, beta, 8)
            res.check(v.holds, (g.to_json(), beta, v.note))


@suite("boundedness")
def _boundedness(res, rng):
    for _ in range(20):
        g = planted.boundedness_gamma(rng)
        for _ in range(5):
            beta = planted.rand_ev(rng)
            v = planted.boundedness_verdict(g, beta, 4)
            res.check(v.holds, (g.to_json(), beta, v.note))


@suite("range-code")
def _range(res, rng):
    beta, pre = R.injection_range_code(identity_code())
    for c in range(10 ** 4):
        s = decode(c)
        res.check((beta.at(c) == 0) == all(x < 2 for x in s), c)
    for _ in range(100):
        a = planted.rand_binary(rng)
        got = pre(apply(identity_code(), a)).prefix(50)
        res.check(got == a.prefix(50), a)


ORDER = ["codec", "kb", "stump-order", "leq-embed", "sum", "hull", "cb", "fan", "bar01",
         "roundtrip", "fixed-point", "boundedness", "range-code"]


def run_suite(name: str, seed: int = 0) -> list[SuiteResult]:
    from .errors import DomainError
    if name == "all":
        return [SUITES[n](seed) for n in ORDER]
    if name not in SUITES:
        raise DomainError("unknown suite", name=name, known=ORDER + ["all"])
    return [SUITES[name](seed)]
