"""Seeded instances with planted witnesses for every catalog entry.

``round_trip(name, seed)`` builds one random instance of an entry, checks
the source evidence, carries it forward (and back, where the entry has a
backward map) and checks the results with the named-set checkers.  The
checking depth per entry is listed in ``DEPTH``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import reductions as R
from . import trees as tr
from .functional import (
    Const, EvPeriodic, Functional, Localize, Merge, Subseq, TreeChar, apply, eval_at,
    identity_code, zeros,
)
from .namedsets import (
    Verdict, check_a11, check_a2, check_analytic, check_coanalytic, check_dbang,
    check_e11, check_e11bang, check_e2, check_e2bang, check_equal, check_fin,
    check_member, check_share, check_sink, check_unc, ev_interleave, fails, holds,
)
from .errors import DomainError
from .seqcode import encode

# Checking depth per entry (initial-part length, or binary depth for UNC).
DEPTH: dict[str, int] = {
    "sigma11_to_e11": 10, "strong_reduce_to_e11": 10, "pi11_to_a11": 10,
    "analytic_union": 8, "coanalytic_intersection": 8, "analytic_intersection": 6,
    "souslin_code": 5, "e11_to_share_inf": 40, "a11_to_sink_almostfin": 40,
    "e11_to_unc": 4, "a11_to_sink_fin": 20, "fin_sink01_pair": 10,
    "a11_to_e11bang": 20, "e2bang_chain": 12, "e2bang_surjection": 12,
    "share_singleton": 20, "share_sum_iso": 20, "perfect_to_injection": 12,
    "injection_range_code": 12, "fan_surjection": 16, "fan_share_reduction": 12,
    "range_enumeration": 8, "enumeration_to_surjection": 6,
    "strict_disjunction_conjunction": 10, "strict_projection": 10,
    "fixed_point": 8, "diagonal": 40, "boundedness": 4,
}


@dataclass
class Outcome:
    name: str
    seed: int
    checks: list = field(default_factory=list)

    def expect(self, label: str, verdict: Verdict, status: str = "holds") -> None:
        self.checks.append((label, verdict, status))

    @property
    def ok(self) -> bool:
        return all(v.status == s for _, v, s in self.checks)

    @property
    def exhausted(self) -> bool:
        return any(v.exhausted for _, v, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{label}: wanted {s}, got {v.status} ({v.note})"
                for label, v, s in self.checks if v.status != s]


# ---------------------------------------------------------------- random data

def rand_ev(rng: random.Random, top: int = 3, pre: int = 3, cyc: int = 3) -> EvPeriodic:
    return EvPeriodic([rng.randint(0, top) for _ in range(rng.randint(0, pre))],
                      [rng.randint(0, top) for _ in range(rng.randint(1, cyc))])


def rand_binary(rng: random.Random) -> EvPeriodic:
    return rand_ev(rng, 1, 4, 4)


def rand_nodes(rng: random.Random, count: int, top: int = 3, depth: int = 4) -> set:
    nodes = {()}
    for _ in range(count):
        s = tuple(rng.randint(0, top) for _ in range(rng.randint(1, depth)))
        nodes.update(s[:k] for k in range(len(s) + 1))
    return nodes


def tree_with(rng: random.Random, points, noise: int = 4) -> tr.RegularTree:
    """A regular tree through the given eventually periodic points plus finite noise."""
    t = tr.finite_tree(rand_nodes(rng, noise))
    for p in points:
        t = tr.union(t, tr.path(p.pre, p.cycle))
    return t


def rand_fan(rng: random.Random, states: int = 3, width: int = 3) -> tr.RegularTree:
    docs = []
    for _ in range(states):
        moves = rng.sample(range(4), rng.randint(1, width))
        docs.append({"explicit": {m: rng.randrange(states) for m in moves}})
    return tr.prune(tr.make(docs, 0))


def rand_perfect(rng: random.Random, states: int = 3) -> tr.RegularTree:
    docs = []
    for _ in range(states):
        moves = rng.sample(range(4), rng.randint(2, 3))
        docs.append({"explicit": {m: rng.randrange(states) for m in moves}})
    return tr.make(docs, 0)


def fan_point(rng: random.Random, fan: tr.RegularTree, lead: int = 4) -> EvPeriodic:
    """An eventually periodic point of a fan: random moves, then a fixed move per state."""
    q, moves = fan.root, []
    for _ in range(lead):
        m, q = rng.choice(list(fan.children(q)))
        moves.append(m)
    choice = {s: rng.choice(list(fan.children(s))) for s in range(len(fan.states))
              if list(fan.children(s))}
    seen: dict[int, int] = {}
    while q not in seen:
        seen[q] = len(moves)
        m, q = choice[q]
        moves.append(m)
    k = seen[q]
    return EvPeriodic(moves[:k], moves[k:])


def tchar(t: tr.RegularTree) -> TreeChar:
    return TreeChar(t)


# ---------------------------------------------------------------- instances

INSTANCES: dict[str, Callable[[random.Random, Outcome, int], None]] = {}


def instance(name: str):
    def deco(fn):
        INSTANCES[name] = fn
        return fn
    return deco


def _analytic(name):
    def run(rng, out, d):
        alpha, delta = rand_ev(rng), rand_ev(rng)
        code = tchar(tree_with(rng, [ev_interleave(alpha, delta)]))
        r = R.build(name, {"code": code})
        out.expect("source", check_analytic(alpha, d, code=code, witness=delta))
        w = R.transport_witness(r, "fwd", {"point": alpha, "partner": delta})
        image = R.apply_reduction(r, alpha)
        out.expect("target", check_e11(image, d, witness=w["path"]))
        back = R.transport_witness(r, "bwd", w)
        out.expect("back", check_analytic(alpha, d, code=code, witness=back["partner"]))
    return run


instance("sigma11_to_e11")(_analytic("sigma11_to_e11"))
instance("strong_reduce_to_e11")(_analytic("strong_reduce_to_e11"))


@instance("pi11_to_a11")
def _pi11(rng, out, d):
    alpha, delta = rand_ev(rng), rand_ev(rng)
    code = tchar(tree_with(rng, [ev_interleave(alpha, delta)]))
    r = R.build("pi11_to_a11", {"code": code})
    out.expect("source", check_coanalytic(alpha, d, code=code, counter=delta), "fails")
    w = R.transport_witness(r, "fwd", {"point": alpha, "partner": delta})
    out.expect("target", check_a11(R.apply_reduction(r, alpha), d, counter=w["counter"]), "fails")
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_coanalytic(alpha, d, code=code, counter=back["partner"]), "fails")


def _family_instance(rng, planted: bool):
    alpha = rand_ev(rng)
    k = rng.randint(1, 4)
    n = rng.randrange(k)
    delta = rand_ev(rng)
    members = []
    for j in range(k):
        t = tree_with(rng, [ev_interleave(alpha, delta)]) if j == n else \
            tree_with(rng, [rand_ev(rng)])
        members.append(tchar(t))
    return alpha, members, n, delta


def _union_like(name, status):
    def run(rng, out, d):
        alpha, members, n, delta = _family_instance(rng, True)
        r = R.build(name, {"family": [m.to_json() for m in members]})
        beta = r.companions["family"]
        check = check_analytic if status == "holds" else check_coanalytic
        key = "witness" if status == "holds" else "counter"
        out.expect("source", check(alpha, d, code=members[n], **{key: delta}), status)
        w = R.transport_witness(r, "fwd", {"point": alpha, "index": n, "partner": delta})
        code = R.apply_reduction(r, beta)
        out.expect("target", check(alpha, d, code=code, **{key: w["partner"]}), status)
        back = R.transport_witness(r, "bwd", w)
        out.expect("back", check(alpha, d, code=beta.member(back["index"]),
                                 **{key: back["partner"]}), status)
    return run


instance("analytic_union")(_union_like("analytic_union", "holds"))
instance("coanalytic_intersection")(_union_like("coanalytic_intersection", "fails"))


@instance("analytic_intersection")
def _anint(rng, out, d):
    alpha = rand_ev(rng)
    k = rng.randint(1, 3)
    partners = [rand_ev(rng) for _ in range(k)]
    members = [tchar(tree_with(rng, [ev_interleave(alpha, p)])) for p in partners]
    r = R.build("analytic_intersection", {"family": [m.to_json() for m in members]})
    beta = r.companions["family"]
    for j in range(k):
        out.expect(f"source{j}", check_analytic(alpha, d, code=members[j], witness=partners[j]))
    w = R.transport_witness(r, "fwd", {"point": alpha, "partners": partners})
    out.expect("target", check_analytic(alpha, d, code=R.apply_reduction(r, beta),
                                        witness=w["partner"]))
    back = R.transport_witness(r, "bwd", w)
    for j in range(k):
        out.expect(f"back{j}", check_analytic(alpha, d, code=members[j],
                                              witness=back["partners"][j]))


@instance("souslin_code")
def _souslin(rng, out, d):
    alpha, delta, zeta = rand_ev(rng, 2), rand_ev(rng, 2), rand_ev(rng, 2)
    on = tree_with(rng, [ev_interleave(alpha, delta)])
    selector = tr.path(zeta.pre, zeta.cycle)
    r = R.build("souslin_code", {"trees": [on, tr.empty()], "selector": selector})
    system = r.companions["system"]
    for n in range(3):
        member = Localize(system, (encode(zeta.prefix(n)),))
        out.expect(f"source{n}", check_analytic(alpha, d, code=member, witness=delta))
    w = R.transport_witness(r, "fwd", {"point": alpha, "index_path": zeta, "partners": delta})
    code = R.apply_reduction(r, system)
    out.expect("target", check_analytic(alpha, d, code=code, witness=w["partner"]))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back-index", check_equal(back["index_path"], d, target=zeta))
    for n in range(3):
        member = Localize(system, (encode(back["index_path"].prefix(n)),))
        out.expect(f"back{n}", check_analytic(alpha, d, code=member,
                                              witness=back["partners"](n)))


@instance("e11_to_share_inf")
def _share_inf(rng, out, d):
    path = rand_ev(rng, 2)
    code = tchar(tree_with(rng, [path]))
    r = R.build("e11_to_share_inf", {})
    out.expect("source", check_e11(code, d, witness=path))
    w = R.transport_witness(r, "fwd", {"path": path})
    out.expect("target", check_share(R.apply_reduction(r, code), d, witness=w["point"],
                                     tree=tr.cantor()))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_e11(code, d, witness=back["path"]))


@instance("a11_to_sink_almostfin")
def _sink_almostfin(rng, out, d):
    path = rand_ev(rng, 2)
    code = tchar(tree_with(rng, [path]))
    r = R.build("a11_to_sink_almostfin", {})
    out.expect("source", check_a11(code, d, counter=path), "fails")
    w = R.transport_witness(r, "fwd", {"counter": path})
    out.expect("target", check_sink(R.apply_reduction(r, code), d, inner="AlmostStarFin",
                                    counter=w["counter"]), "fails")
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_a11(code, d, counter=back["counter"]), "fails")


@instance("e11_to_unc")
def _unc(rng, out, d):
    path = rand_ev(rng, 2)
    code = tchar(tree_with(rng, [path]))
    r = R.build("e11_to_unc", {})
    out.expect("source", check_e11(code, 12, witness=path))
    w = R.transport_witness(r, "fwd", {"path": path})
    out.expect("target", check_unc(R.apply_reduction(r, code), d, witness=w["embedding"]))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_e11(code, 12, witness=back["path"]))


@instance("a11_to_sink_fin")
def _sink_fin(rng, out, d):
    path = rand_ev(rng, 2)
    code = tchar(tree_with(rng, [path]))
    r = R.build("a11_to_sink_fin", {})
    out.expect("source", check_a11(code, d, counter=path), "fails")
    w = R.transport_witness(r, "fwd", {"counter": path})
    out.expect("target", check_sink(R.apply_reduction(r, code), d, inner="Fin",
                                    counter=w["counter"]), "fails")
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_a11(code, d, counter=back["counter"]), "fails")


@instance("fin_sink01_pair")
def _fin_sink(rng, out, d):
    alpha = EvPeriodic([rng.randint(0, 2) for _ in range(rng.randint(0, 5))], [0])
    m = len(alpha.pre)
    r = R.build("fin_sink01_pair", {})
    out.expect("source", check_fin(alpha, d, witness=m))
    w = R.transport_witness(r, "fwd", {"bound": m})
    law = R.apply_reduction(r, alpha)
    out.expect("target", check_sink(law, d, inner="Fin", witness=w["bound"]))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_fin(alpha, d, witness=back["bound"]))
    again = apply(r.companions["reverse"], law)
    out.expect("reverse", check_fin(again, d, witness=back["bound"]))


@instance("a11_to_e11bang")
def _e11bang(rng, out, d):
    path = rand_ev(rng, 2)
    code = tchar(tree_with(rng, [path]))
    r = R.build("a11_to_e11bang", {})
    out.expect("source", check_a11(code, d, counter=path), "fails")
    w = R.transport_witness(r, "fwd", {"counter": path})
    out.expect("target", check_e11bang(R.apply_reduction(r, code), d, counter=w["counter"]),
               "fails")
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_a11(code, d, counter=back["counter"]), "fails")


def _apart_column(rng, at: int) -> EvPeriodic:
    """A column first non-zero at position ``at``."""
    return EvPeriodic([0] * at + [rng.randint(1, 3)], [rng.randint(0, 3)])


@instance("e2bang_chain")
def _chain(rng, out, d):
    cols = 5
    step = ("a2", "dbang", "e11bang")[rng.randrange(3)]
    r = R.build("e2bang_chain", {"step": step})
    if step == "a2":
        firsts = [rng.randint(0, 3) for _ in range(cols)]
        alpha = Merge([_apart_column(rng, p) for p in firsts], Const(1))
        apart = lambda m: firsts[m] if m < cols else 0
        out.expect("source", check_a2(alpha, d, witness=apart, columns=cols))
        w = R.transport_witness(r, "fwd", {"apart": apart})
        image = R.apply_reduction(r, alpha)
        out.expect("target", check_e2bang(image, d, witness=(w["column"], w["apart"]),
                                          columns=cols + 1))
        back = R.transport_witness(r, "bwd", w)
        out.expect("back", check_a2(alpha, d, witness=back["apart"], columns=cols))
    elif step == "dbang":
        i, p = rng.randint(0, 1), rng.randint(0, 3)
        columns = [zeros(), _apart_column(rng, p)] if i == 0 else [_apart_column(rng, p), zeros()]
        alpha = Merge(columns, rand_ev(rng))
        out.expect("source", check_dbang(alpha, d, witness=(i, p)))
        w = R.transport_witness(r, "fwd", {"column": i, "apart": p})
        image = R.apply_reduction(r, alpha)
        out.expect("target", check_e2bang(image, d, witness=(w["column"], w["apart"]),
                                          columns=cols))
        back = R.transport_witness(r, "bwd", w)
        out.expect("back", check_dbang(alpha, d, witness=(back["column"], back["apart"])))
    else:
        n = rng.randrange(cols)
        firsts = [rng.randint(0, 3) for _ in range(cols)]
        columns = [zeros() if m == n else _apart_column(rng, firsts[m]) for m in range(cols)]
        alpha = Merge(columns, Const(1))
        apart = lambda m: 0 if m >= cols else firsts[m]
        out.expect("source", check_e2bang(alpha, d, witness=(n, apart), columns=cols))
        w = R.transport_witness(r, "fwd", {"column": n})
        image = R.apply_reduction(r, alpha)
        out.expect("target", check_e11bang(image, d, witness=w["path"], moves=cols + 1))
        back = R.transport_witness(r, "bwd", w)
        out.expect("back", check_e2(alpha, d, witness=back["column"]))


def rand_merge(rng, cols: int = 4, top: int = 3) -> Merge:
    return Merge([rand_ev(rng, top) for _ in range(cols)], rand_ev(rng, top),
                 head=rng.randint(0, top))


@instance("e2bang_surjection")
def _e2surj(rng, out, d):
    alpha = rand_merge(rng)
    r = R.build("e2bang_surjection", {})
    image = R.apply_reduction(r, alpha)
    w = R.transport_witness(r, "fwd", {"point": alpha})
    out.expect("target", check_e2bang(image, d, witness=(w["column"], w["apart"]), columns=6))
    back = R.transport_witness(r, "bwd", {"image": image, "column": w["column"]})
    out.expect("back", check_equal(back["point"], d, target=alpha))


@instance("share_singleton")
def _singleton(rng, out, d):
    x = rand_ev(rng)
    t = tree_with(rng, [x])
    r = R.build("share_singleton", {"tree": t})
    out.expect("source", check_member(x, d, tree=t))
    w = R.transport_witness(r, "fwd", {"point": x})
    out.expect("target", check_share(R.apply_reduction(r, x), d, witness=w["point"], tree=t))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_member(back["point"], d, tree=t))


@instance("share_sum_iso")
def _sum_iso(rng, out, d):
    n = rng.randint(1, 3)
    sets = [tree_with(rng, [rand_ev(rng)], 2) for _ in range(n)]
    i = rng.randrange(n)
    z = tr.find_infinite_path(sets[i])
    z = EvPeriodic(*z)
    chain, direct = tr.zero_chain_tree(sets), tr.sum_tree(sets)
    direction = ("sum_to_direct", "direct_to_sum")[rng.randrange(2)]
    r = R.build("share_sum_iso", {"n": n, "direction": direction})
    if direction == "sum_to_direct":
        x = EvPeriodic((0,) * i + (1,) + z.pre, z.cycle)
        src_tree, dst_tree = chain, direct
    else:
        x = EvPeriodic((i,) + z.pre, z.cycle)
        src_tree, dst_tree = direct, chain
    code = tchar(tree_with(rng, [x]))
    out.expect("source", check_share(code, d, witness=x, tree=src_tree))
    w = R.transport_witness(r, "fwd", {"point": x})
    out.expect("target", check_share(R.apply_reduction(r, code), d, witness=w["point"],
                                     tree=dst_tree))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_share(code, d, witness=back["point"], tree=src_tree))


@instance("perfect_to_injection")
def _perfect(rng, out, d):
    t = rand_perfect(rng)
    alpha = rand_binary(rng)
    r = R.build("perfect_to_injection", {"tree": t})
    w = R.transport_witness(r, "fwd", {"point": alpha})
    out.expect("target", check_member(w["image"], d, tree=t))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_equal(back["point"], d, target=alpha))


@instance("injection_range_code")
def _range_code(rng, out, d):
    k = rng.randint(0, 2)
    gamma = identity_code() if k == 0 else \
        Functional("prepend", {"items": [rng.randint(0, 1) for _ in range(k)]})
    alpha = rand_binary(rng)
    r = R.build("injection_range_code", {"gamma": gamma})
    w = R.transport_witness(r, "fwd", {"point": alpha})
    out.expect("target", check_e11(r.forward, d, witness=w["image"]))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_equal(back["point"], d, target=alpha))


@instance("fan_surjection")
def _fan_surj(rng, out, d):
    fan = rand_fan(rng)
    r = R.build("fan_surjection", {"tree": fan})
    x = rand_binary(rng)
    w = R.transport_witness(r, "fwd", {"point": x})
    out.expect("target", check_member(w["image"], d, tree=fan))
    y = fan_point(rng, fan)
    back = R.transport_witness(r, "bwd", {"image": y})
    out.expect("back", check_equal(apply(r.forward, back["point"]), d, target=y))


@instance("fan_share_reduction")
def _fan_share(rng, out, d):
    fan = rand_fan(rng)
    y = fan_point(rng, fan)
    code = tchar(tree_with(rng, [y]))
    r = R.build("fan_share_reduction", {"tree": fan})
    out.expect("source", check_share(code, d, witness=y, tree=fan))
    w = R.transport_witness(r, "fwd", {"point": y})
    out.expect("target", check_share(R.apply_reduction(r, code), d, witness=w["point"],
                                     tree=tr.cantor()))
    back = R.transport_witness(r, "bwd", w)
    out.expect("back", check_share(code, d, witness=back["point"], tree=fan))


@instance("range_enumeration")
def _range_enum(rng, out, d):
    k = rng.randint(0, 2)
    gamma = identity_code() if k == 0 else \
        Functional("prepend", {"items": [rng.randint(0, 1) for _ in range(k)]})
    alpha = rand_binary(rng)
    image = apply(gamma, alpha)
    r = R.build("range_enumeration", {})
    enum = R.apply_reduction(r, gamma)
    w = R.transport_witness(r, "fwd", {"image": image, "point": alpha, "depth": d})
    bad = [s for s, n in w["indices"] if enum.at(n) != encode(s) + 1]
    out.expect("target", holds(d, True) if not bad else fails(len(bad[0]), True))


@instance("enumeration_to_surjection")
def _enum_surj(rng, out, d):
    t = rand_fan(rng, 2, 2)
    r = R.build("enumeration_to_surjection", {"tree": tr.to_json(t)})
    x = EvPeriodic([rng.randint(0, 5) for _ in range(3)], [rng.randint(0, 5)])
    w = R.transport_witness(r, "fwd", {"point": x})
    out.expect("target", check_member(w["image"], d, tree=t))
    y = fan_point(rng, t, 2)
    back = R.transport_witness(r, "bwd", {"image": y})
    out.expect("back", check_equal(apply(r.forward, back["point"]), d, target=y))


@instance("strict_disjunction_conjunction")
def _strict(rng, out, d):
    k = rng.randint(1, 3)
    fans = [rand_fan(rng) for _ in range(k)]
    mode = ("disjunction", "conjunction")[rng.randrange(2)]
    r = R.build("strict_disjunction_conjunction", {"fans": fans, "mode": mode})
    walks = [r.companions[f"surjection{i}"].fn.walk for i in range(k)]
    n = rng.randrange(k)
    alpha = Merge([rand_binary(rng) for _ in range(k + 1)], rand_binary(rng), head=n)
    w = R.transport_witness(r, "fwd", {"point": alpha})
    image = w["image"]
    cols = [n] if mode == "disjunction" else range(k)
    for c in cols:
        out.expect(f"column{c}", check_member(Subseq(image, c), d, tree=fans[c]))
    if mode == "disjunction":
        pre = walks[n].preimage(Subseq(image, n))
        back = R.transport_witness(r, "bwd", {"image": image, "column": n, "preimage": pre})
    else:
        pres = [walks[c].preimage(Subseq(image, c)) for c in range(k)]
        back = R.transport_witness(r, "bwd", {"image": image, "preimages": pres})
    again = apply(r.forward, back["point"])
    positions = [0] + [encode((c, j)) for c in cols for j in range(d)]
    same = all(again.at(p) == image.at(p) for p in positions)
    out.expect("back", holds(d, True) if same else fails(d, True))


@instance("strict_projection")
def _projection(rng, out, d):
    fan = rand_fan(rng)
    r = R.build("strict_projection", {"tree": fan})
    surj = r.companions["surjection"]
    beta = rand_binary(rng)
    w = R.transport_witness(r, "fwd", {"point": beta})
    out.expect("target", check_equal(w["image"], d, target=Subseq(apply(surj, beta), 0)))
    z = fan_point(rng, fan)
    back = R.transport_witness(r, "bwd", {"source": z})
    out.expect("back", check_equal(apply(r.forward, back["point"]), d, target=Subseq(z, 0)))


def fixed_point_gamma(rng) -> Functional:
    if rng.randrange(3) == 0:
        return identity_code()
    t = tree_with(rng, [rand_ev(rng, 2)], 3)
    return R.build("sigma11_to_e11", {"code": tchar(t)}).forward


def forbids_depth(code, beta, depth: int) -> int | None:
    for n in range(depth + 1):
        if code.at_seq(beta.prefix(n)) != 0:
            return n
    return None


@instance("fixed_point")
def _fixed(rng, out, d):
    gamma = fixed_point_gamma(rng)
    beta = rand_ev(rng, 2)
    r = R.build("fixed_point", {"gamma": gamma})
    out.expect("equivalence", fixed_point_verdict(gamma, r.forward, beta, d))


def fixed_point_verdict(gamma, alpha, beta, d) -> Verdict:
    """Depth-matched: alpha forbids beta by d iff gamma|alpha does, at the transported depths."""
    image = apply(gamma, alpha)
    n = forbids_depth(alpha, beta, d)
    m = forbids_depth(image, beta, d)
    if n is not None:
        if m is None or m > n:
            return fails(n, True, note="alpha forbids but the image does not")
        back = R.transported_depth(gamma, alpha, beta, m)
        if back < n:
            return fails(back, True, note="transported depth undershoots")
    elif m is not None:
        back = R.transported_depth(gamma, alpha, beta, m)
        if forbids_depth(alpha, beta, back) is None:
            return fails(m, True, note="image forbids but alpha does not")
    return holds(d, True)


@instance("diagonal")
def _diagonal(rng, out, d):
    if rng.randrange(2):
        gamma = Functional("constant", {"value": rng.randint(1, 4)})
    else:
        gamma = identity_code()
    beta = EvPeriodic([rng.randint(0, 3) for _ in range(rng.randint(0, 3))],
                      [rng.randint(1, 3)])
    r = R.build("diagonal", {"gamma": gamma})
    w = R.transport_witness(r, "fwd", {"point": beta}, fuel=d)
    k = w["index"]
    image = apply(gamma, beta)
    apart = r.forward.at_seq(beta.prefix(k)) != image.at_seq(beta.prefix(k))
    value = eval_at(r.forward, beta, d) == eval_at(image, beta, d) + 1
    out.expect("apart", holds(k, True) if apart and value else fails(k, True))


def boundedness_gamma(rng) -> Functional:
    trees = [tr.finite_tree(rand_nodes(rng, 3, 2, 3)) for _ in range(rng.randint(1, 3))]
    if len(trees) == 1:
        return Functional("constant_code", {"tree": tr.to_json(trees[0])})
    return Functional("tree_select_code", {"trees": [tr.to_json(t) for t in trees]})


def boundedness_verdict(gamma, beta, depth: int) -> Verdict:
    """embed_of(beta) maps every node admitted by gamma|beta to an admitted alpha-node, monotonically."""
    alpha, embed_of = R.boundedness(gamma)
    emb = embed_of(beta)
    code = apply(gamma, beta)
    layer = [()]
    while layer:
        nxt = []
        for s in layer:
            if code.at_seq(s) != 0:
                continue
            e = emb(s)
            if any(alpha.at_seq(e[:k]) for k in range(len(e) + 1)):
                return fails(len(s), True, witness=list(s), note="embedded node forbidden")
            if s and not (len(e) > len(emb(s[:-1])) and e[:len(emb(s[:-1]))] == emb(s[:-1])):
                return fails(len(s), True, note="not strictly monotone")
            if len(s) < depth:
                nxt.extend(s + (m,) for m in range(4))
        layer = nxt
    return holds(depth, True)


@instance("boundedness")
def _bounded(rng, out, d):
    gamma = boundedness_gamma(rng)
    beta = rand_ev(rng)
    out.expect("embedding", boundedness_verdict(gamma, beta, d))


# ---------------------------------------------------------------- driver

def round_trip(name: str, seed: int) -> Outcome:
    if name not in INSTANCES:
        raise DomainError("no planted instances for this entry", name=name)
    out = Outcome(name, seed)
    INSTANCES[name](random.Random(f"{name}:{seed}"), out, DEPTH[name])
    return out


def round_trips(name: str, count: int, seed: int = 0) -> list[Outcome]:
    return [round_trip(name, seed * 100003 + i) for i in range(count)]
