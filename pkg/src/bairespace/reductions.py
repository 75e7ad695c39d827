"""Catalog of explicit reductions between subsets of Baire space.

Each entry is built from JSON-able parameters into a ``Reduction``: a coded
functional (``forward``) together with maps that carry membership evidence
from the source set to the target set (``witness_fwd``) and back
(``witness_bwd``).  Evidence is a plain dict of streams and numbers; the
named-set checkers in ``namedsets`` verify it.

A few entries are constructions rather than functionals (the fixed point,
the diagonal code, the boundedness code and the range code); their
``forward`` is the constructed stream itself.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from . import trees as tr
from .errors import DomainError, FuelExhausted, PreconditionViolation
from .functional import (
    DEFAULT_FUEL, Const, Defined, EvPeriodic, Family, Functional, Lazy, Merge, PartI,
    Position, PrefixOracle, Prefixed, Shift, StreamSpec, Subseq, TreeChar, Undetermined,
    apply, defined, finite_apply_seq, from_json, rule, zeros,
)
from .namedsets import is_ev, pair_point
from .seqcode import (
    decode, encode, incompatible_seq, is_prefix_seq, pair, split_seq, unpair,
)


def _norm(v: int) -> int:
    return 0 if v == 0 else 1


def _interleave(a: Sequence[int], b: Sequence[int], length: int) -> tuple[int, ...]:
    """First ``length`` values of the interleaving a(0), b(0), a(1), ..."""
    return tuple(a[k // 2] if k % 2 == 0 else b[k // 2] for k in range(length))


def _known(o, n: int) -> tuple[int, ...]:
    return tuple(o.at(i) for i in range(n))


def _tree(doc) -> tr.RegularTree:
    return doc if isinstance(doc, tr.RegularTree) else tr.from_json(doc)


def _stream(doc) -> StreamSpec:
    return doc if isinstance(doc, StreamSpec) else from_json(doc)


def _admits(code_at, s: Sequence[int]) -> bool:
    s = tuple(s)
    return all(code_at(s[:k]) == 0 for k in range(len(s) + 1))


# ---------------------------------------------------------------- rules: analytic codes

@rule("interleave_code")
def _interleave_code(params):
    """(f|a)(t) is the value of ``code`` at the interleaving of a and t of length |t|."""
    code = _stream(params["code"])
    normalize = params.get("normalize", True)

    def fn(pos, o):
        t = pos.seq
        u = _interleave(_known(o, (len(t) + 1) // 2), t, len(t))
        v = code.at_seq(u)
        return _norm(v) if normalize else v

    return fn


def _family_split(s):
    s_i, s_ii = split_seq(s)
    return s_i, s_ii


@rule("family_union")
def _family_union(params):
    """Input: code of a family of codes.  One code for the union (or intersection
    of open complements): the partner's first value picks the member."""

    def fn(pos, o):
        s = pos.seq
        if len(s) < 2:
            return 0
        s_i, s_ii = _family_split(s)
        rest = s_ii[1:]
        length = min(2 * len(s_i), 2 * len(rest) + 1)
        return _norm(o.at_seq((s[1],) + _interleave(s_i, rest, length)))

    return fn


def _column_values(values: Sequence[int], j: int) -> list[int]:
    """Known values of column j of a partially known point."""
    out, k = [], 0
    while True:
        i = pair(j, k)
        if i >= len(values):
            return out
        out.append(values[i])
        k += 1


@rule("family_intersection")
def _family_intersection(params):
    """Input: code of a family of closed codes.  Column j of the partner serves member j."""

    def fn(pos, o):
        s = pos.seq
        s_i, s_ii = _family_split(s)
        for j in range(len(s) + 1):
            col = _column_values(s_ii, j)
            top = min(2 * len(s_i), 2 * len(col) + 1)
            for i in range(min(top, len(s)) + 1):
                if o.at_seq((j,) + _interleave(s_i, col, i)):
                    return 1
        return 0

    return fn


@rule("souslin")
def _souslin(params):
    """Input: code of a system of closed codes indexed by sequences.

    The partner carries an index path in column 0 and, in column 1, one
    partner per initial part of that path.
    """

    def fn(pos, o):
        s = pos.seq
        s_i, s_ii = _family_split(s)
        index = _column_values(s_ii, 0)
        partners = _column_values(s_ii, 1)
        for n in range(len(index) + 1):
            c = encode(index[:n])
            col = _column_values(partners, n)
            top = min(2 * len(s_i), 2 * len(col) + 1)
            for i in range(min(top, len(s)) + 1):
                if o.at_seq((c,) + _interleave(s_i, col, i)):
                    return 1
        return 0

    return fn


@defined("souslin_system")
def _souslin_system(params):
    """P_s is the set coded by ``trees[0]`` when s is a node of ``selector``, else ``trees[1]``."""
    on, off = (_tree(t) for t in params["trees"])
    selector = _tree(params["selector"])

    def fn(s):
        if not s:
            return 0
        chosen = on if tr.node_member_seq(selector, decode(s[0])) else off
        return 0 if tr.node_member_seq(chosen, s[1:]) else 1

    return fn


# ---------------------------------------------------------------- rules: set reductions

def block_code(t: Sequence[int]) -> tuple[int, ...]:
    """0^t0 1 0^t1 1 ...: the helper map with block(s * <n>) = block(s) * 0^n * <1>."""
    return tr.block_point(t)


def _blocks(s: Sequence[int]) -> tuple[int, ...] | None:
    """Lengths of the complete 0-runs of a binary sequence; None if not binary."""
    out, run = [], 0
    for x in s:
        if x == 0:
            run += 1
        elif x == 1:
            out.append(run)
            run = 0
        else:
            return None
    return tuple(out)


@rule("share_inf")
def _share_inf(params):
    """(g|a)(s) = 0 iff s is binary with complete blocks t and a(t) = 0."""

    def fn(pos, o):
        t = _blocks(pos.seq)
        if t is None:
            return 1
        return _norm(o.at_seq(t))

    return fn


def unc_digit_target(v: int) -> tuple[int, ...]:
    """The sequence t coded in a non-zero digit v = 2t+1 or 2t+2."""
    return decode((v - 1) // 2)


@rule("unc")
def _unc(params):
    """Non-zero digits name growing admitted sequences; 0 ends the growth."""

    def fn(pos, o):
        s = pos.seq
        for i, v in enumerate(s):
            if v == 0:
                continue
            t = unc_digit_target(v)
            if len(t) != i + 1:
                return 1
            if any(o.at_seq(t[:k]) for k in range(i + 1)):
                return 1
            for j in range(i):
                c = encode(t[: j + 1])
                if s[j] not in (2 * c + 1, 2 * c + 2):
                    return 1
        return 0

    return fn


@rule("sink_fin")
def _sink_fin(params):
    """Pairs (i, j): either (0, 0), or j = 1 with the I-part still admitted."""

    def fn(pos, o):
        s = pos.seq
        part_i: list[int] = []
        for k in range(0, len(s), 2):
            i = s[k]
            part_i.append(i)
            j = s[k + 1] if k + 1 < len(s) else None
            if i == 0 and j in (0, None):
                continue
            if not _admits(o.at_seq, part_i):
                return 1
            if j not in (1, None):
                return 1
        return 0

    return fn


@rule("fin_to_sink01")
def _fin_to_sink01(params):
    """Binary sequences with 1 only where the input is non-zero."""

    def fn(pos, o):
        for k, x in enumerate(pos.seq):
            if x == 0:
                continue
            if x != 1 or o.at(k) == 0:
                return 1
        return 0

    return fn


def _admitted_binary(code_at, length: int):
    stack = [()] if code_at(()) == 0 else []
    while stack:
        s = stack.pop()
        if len(s) == length:
            yield s
            continue
        for x in (1, 0):
            t = s + (x,)
            if code_at(t) == 0:
                stack.append(t)


@rule("sink01_to_fin")
def _sink01_to_fin(params):
    """Output n is 1 iff some admitted binary s of length n admits s * <1>."""

    def fn(pos, o):
        n = pos.nat
        return int(any(o.at_seq(s + (1,)) == 0 for s in _admitted_binary(o.at_seq, n)))

    return fn


@rule("e11bang")
def _e11bang(params):
    """<0> * zeros is always admitted; <n+1> * s follows the input code at s."""

    def fn(pos, o):
        s = pos.seq
        if not s:
            return 0
        if s[0] == 0:
            return _norm(sum(s[1:]))
        return _norm(o.at_seq(s[1:]))

    return fn


@rule("a2_to_e2bang")
def _a2_to_e2bang(params):
    def fn(pos, o):
        n = pos.nat
        if n == 0:
            return 0
        m, k = unpair(n)
        return 0 if m == 0 else o.at(pair(m - 1, k))

    return fn


@rule("dbang_to_e2bang")
def _dbang_to_e2bang(params):
    def fn(pos, o):
        n = pos.nat
        if n == 0:
            return 0
        m, _ = unpair(n)
        return o.at(n) if m < 2 else 1

    return fn


@rule("e2bang_to_e11bang")
def _e2bang_to_e11bang(params):
    """Admitted nodes: constant sequences m^n+1 with column m zero below n."""

    def fn(pos, o):
        s = pos.seq
        if not s:
            return 0
        m = s[0]
        if any(x != m for x in s):
            return 1
        return _norm(sum(o.at(pair(m, k)) for k in range(len(s) - 1)))

    return fn


def e2bang_block(k: int) -> tuple[int, ...]:
    """epsilon(2^m (2n+1) - 1) = 0^m * <n+1>."""
    x, m = k + 1, 0
    while x % 2 == 0:
        x //= 2
        m += 1
    return (0,) * m + ((x - 1) // 2 + 1,)


def e2bang_block_index(block: Sequence[int]) -> int:
    m = len(block) - 1
    return 2 ** m * (2 * (block[-1] - 1) + 1) - 1


def _e2bang_surj_source(a: int, n: int) -> tuple[int, int]:
    """(position in column 0, source column) feeding output column n != a."""
    return (n + 1, n + 1) if n < a else (n, n)


@rule("e2bang_surjection")
def _e2bang_surjection(params):
    def fn(pos, o):
        i = pos.nat
        if i == 0:
            return o.at(0)
        n, k = unpair(i)
        a = o.at(pair(0, 0))
        if n == a:
            return 0
        p, src = _e2bang_surj_source(a, n)
        block = e2bang_block(o.at(pair(0, p)))
        return block[k] if k < len(block) else o.at(pair(src, k - len(block)))

    return fn


@rule("share_singleton")
def _share_singleton(params):
    def fn(pos, o):
        s = pos.seq
        return 0 if all(o.at(k) == x for k, x in enumerate(s)) else 1

    return fn


@rule("share_sum_to_direct")
def _share_sum_to_direct(params):
    """From the code of a set inside the zero-chain sum to the direct sum."""

    def fn(pos, o):
        s = pos.seq
        if not s:
            return _norm(o.at_seq(()))
        i = s[0]
        if len(s) == 1:
            zeros_ok = all(o.at_seq((0,) * j) == 0 for j in range(i + 1))
            return 0 if zeros_ok and o.at_seq((0,) * i + (1,)) == 0 else 1
        return _norm(o.at_seq((0,) * i + (1,) + s[1:]))

    return fn


@rule("share_direct_to_sum")
def _share_direct_to_sum(params):
    n = int(params["n"])

    def fn(pos, o):
        s = pos.seq
        if not s:
            return _norm(o.at_seq(()))
        k = 0
        while k < len(s) and s[k] == 0:
            k += 1
        if k == len(s):
            return 0 if k < n else 1
        if s[k] != 1:
            return 1
        return _norm(o.at_seq((k,) + s[k + 1:]))

    return fn


# ---------------------------------------------------------------- perfect spreads and injections

def _check_perfect(t: tr.RegularTree) -> tr.RegularTree:
    t = tr.prune(t)
    if t.root is None:
        raise DomainError("perfect spread must be non-empty")
    counts = tr.path_count(t)
    if any(counts[q] != "many" for q in range(len(t.states))):
        raise DomainError("spread has an isolated point; it is not perfect")
    return t


def _extensions_in_code_order(t: tr.RegularTree, start: tuple[int, ...]):
    """Admitted extensions of ``start`` (itself included), by increasing code."""
    q0 = t.walk(start)
    if q0 is None:
        return
    heap = [(encode(start), start, q0, None)]
    while heap:
        _, s, q, sibs = heapq.heappop(heap)
        yield s
        kids = t.children(q)
        first = next(kids, None)
        if first is not None:
            m, x = first
            child = s + (m,)
            heapq.heappush(heap, (encode(child), child, x, kids))
        if sibs is not None:
            nxt = next(sibs, None)
            if nxt is not None:
                m, x = nxt
                sib = s[:-1] + (m,)
                heapq.heappush(heap, (encode(sib), sib, x, sibs))


class PerfectMap:
    """The map F on binary sequences into a perfect spread; memoised."""

    def __init__(self, t: tr.RegularTree):
        self.tree = _check_perfect(t)
        self.memo: dict[tuple, tuple] = {(): ()}

    def __call__(self, c: Sequence[int]) -> tuple[int, ...]:
        c = tuple(c)
        if c not in self.memo:
            parent = self(c[:-1])
            u0, u1 = self._split(parent)
            self.memo[c[:-1] + (0,)] = u0
            self.memo[c[:-1] + (1,)] = u1
        return self.memo[c]

    def _split(self, t: tuple[int, ...]) -> tuple[tuple, tuple]:
        base = encode(t)
        seen: list[tuple[int, tuple]] = []
        best = None
        for x in _extensions_in_code_order(self.tree, t):
            cx = encode(x)
            if best is not None:
                bound = min(pair(cx, pair(base, 0)), pair(base, pair(cx, 0)))
                if bound >= best[0]:
                    break
            for cy, y in seen:
                if incompatible_seq(x, y):
                    for a, ca, b, cb in ((x, cx, y, cy), (y, cy, x, cx)):
                        u = pair(ca, pair(cb, 0))
                        if best is None or u < best[0]:
                            best = (u, a, b)
            seen.append((cx, x))
        return best[1], best[2]


@rule("perfect_injection")
def _perfect_injection(params):
    fmap = PerfectMap(_tree(params["tree"]))

    def fn(pos, o):
        n = pos.nat
        c: list[int] = []
        while True:
            image = fmap(c)
            if len(image) > n:
                return image[n]
            c.append(min(o.at(len(c)), 1))

    fn.fmap = fmap
    return fn


def perfect_preimage(fmap: PerfectMap, image: StreamSpec, fuel: int = DEFAULT_FUEL) -> Lazy:
    """The binary point whose F-image is ``image``."""
    bits: list[int] = []

    def at(n):
        while len(bits) <= n:
            c = tuple(bits)
            for b in (0, 1):
                node = fmap(c + (b,))
                if all(image.at(i) == x for i, x in enumerate(node)):
                    bits.append(b)
                    break
            else:
                raise DomainError("point is not in the image", depth=len(bits))
        return bits[n]

    return Lazy(at, "perfect-preimage")


# ---------------------------------------------------------------- fans onto Cantor space

def _fan(t) -> tr.RegularTree:
    t = tr.prune(_tree(t))
    if t.root is None:
        raise DomainError("fan must be non-empty")
    if not tr.is_fan(t):
        raise DomainError("tree is not a fan (a state has infinitely many children)")
    return t


class FanWalk:
    """The block construction: a node with k > 1 children reads a word of bar01(k-1)."""

    def __init__(self, fan: tr.RegularTree):
        self.fan = fan
        self.kids = {q: list(fan.children(q)) for q in range(len(fan.states))}

    def run(self, bits_at, outputs: int) -> tuple[int, ...]:
        """First ``outputs`` values of the image; ``bits_at(i)`` may raise Undetermined."""
        q, used, out = self.fan.root, 0, []
        while len(out) < outputs:
            kids = self.kids[q]
            if len(kids) == 1:
                m, q = kids[0]
                out.append(m)
                continue
            bar = tr.bar01_seqs(len(kids) - 1)
            word: tuple[int, ...] = ()
            while word not in bar:
                word += (min(bits_at(used), 1),)
                used += 1
            m, q = kids[bar.index(word)]
            out.append(m)
        return tuple(out)

    def preimage(self, point: StreamSpec) -> Lazy:
        """Block inversion: concatenated words along the point's walk."""
        bits: list[int] = []
        state = {"q": self.fan.root, "n": 0}

        def at(i):
            idle = 0
            while len(bits) <= i:
                q = state["q"]
                kids = self.kids[q]
                move = point.at(state["n"])
                idx = next((j for j, (m, _) in enumerate(kids) if m == move), None)
                if idx is None:
                    raise DomainError("point leaves the fan", depth=state["n"])
                if len(kids) > 1:
                    bits.extend(tr.bar01_seqs(len(kids) - 1)[idx])
                    idle = 0
                else:
                    idle += 1
                    if idle > len(self.kids):
                        # from here on no input is read: the rest is free
                        bits.extend([0] * (i + 1 - len(bits)))
                        break
                state["q"] = kids[idx][1]
                state["n"] += 1
            return bits[i]

        return Lazy(at, "fan-preimage")


@rule("fan_surjection")
def _fan_surjection(params):
    walk = FanWalk(_fan(params["tree"]))

    def fn(pos, o):
        return walk.run(o.at, pos.nat + 1)[-1]

    fn.walk = walk
    return fn


def fan_surjection(fan) -> Functional:
    """Functional from Cantor space onto the fan's closed set (inputs read as min(x, 1))."""
    return Functional("fan_surjection", {"tree": tr.to_json(_fan(fan))})


@rule("fan_share")
def _fan_share(params):
    """(d|b)(s) = 0 iff b admits the finite image of s under the fan surjection."""
    walk = FanWalk(_fan(params["tree"]))

    def fn(pos, o):
        s = pos.seq
        image = _fan_finite_image(walk, s)
        return 0 if _admits(o.at_seq, image) else 1

    return fn


def _fan_finite_image(walk: FanWalk, s: Sequence[int]) -> tuple[int, ...]:
    out: tuple[int, ...] = ()
    for j in range(len(s)):
        try:
            out = walk.run(PrefixOracle(s).at, j + 1)
        except Undetermined:
            break
    return out


# ---------------------------------------------------------------- enumerations and ranges

def _finite_image_oracle(o, a: Sequence[int]) -> tuple[int, ...]:
    """gamma|a for a code gamma available through an oracle."""
    a = tuple(a)
    out = []
    for j in range(len(a)):
        v = next((w - 1 for k in range(len(a) + 1) if (w := o.at_seq((j,) + a[:k]))), None)
        if v is None:
            break
        out.append(v)
    return tuple(out)


@rule("range_enumeration")
def _range_enumeration(params):
    """Input: a code gamma.  Output n = <s, a> is s + 1 when s is a proper initial part of gamma|a."""

    def fn(pos, o):
        n = pos.nat
        if n == 0:
            return 0
        si, sii = unpair(n)
        s = decode(si)
        image = _finite_image_oracle(o, decode(sii))
        return si + 1 if len(s) < len(image) and is_prefix_seq(s, image) else 0

    return fn


class NodeList:
    """Nodes of a regular tree listed by (length + sum of entries), then lexicographically."""

    def __init__(self, t: tr.RegularTree):
        self.tree = t
        self.items: list[tuple[int, ...]] = []
        self.index: dict[tuple, int] = {}
        self.level = -1

    def _grow(self):
        self.level += 1
        lvl = self.level
        found = []

        def go(s, q, budget):
            if budget == 0:
                found.append(s)
            for m, x in self.tree.children(q):
                if 1 + m > budget:
                    break
                go(s + (m,), x, budget - 1 - m)

        if self.tree.root is not None:
            go((), self.tree.root, lvl)
        for s in sorted(found):
            self.index[s] = len(self.items)
            self.items.append(s)

    def at(self, n: int, fuel: int = 64) -> tuple[int, ...] | None:
        while len(self.items) <= n:
            if self.level > fuel:
                return None
            self._grow()
        return self.items[n]

    def position(self, s: Sequence[int], fuel: int = 64) -> int:
        s = tuple(s)
        while s not in self.index:
            if self.level > len(s) + sum(s) or self.level > fuel:
                raise DomainError("not a node of the tree", node=list(s))
            self._grow()
        return self.index[s]


_NODE_LISTS: dict = {}


def _node_list(doc) -> NodeList:
    key = repr(doc)
    if key not in _NODE_LISTS:
        _NODE_LISTS[key] = NodeList(tr.prune(_tree(doc)))
    return _NODE_LISTS[key]


@defined("node_enumeration")
def _node_enumeration(params):
    """Value at n: code of the n-th node plus 1 (0 when the tree is empty)."""
    nodes = _node_list(params["tree"])

    def fn(s):
        node = nodes.at(encode(s))
        return 0 if node is None else encode(node) + 1

    return fn


def node_enumeration(tree) -> Defined:
    return Defined("node_enumeration", {"tree": tr.to_json(tr.prune(_tree(tree)))})


@rule("enum_surjection")
def _enum_surjection(params):
    """Maps every point onto the spread enumerated by ``enumeration`` (values s + 1)."""
    delta = _stream(params["enumeration"])
    limit = int(params.get("search", 100000))

    def successor(cur, v):
        if v == 0:
            return None
        s = decode(v - 1)
        return s if len(s) == len(cur) + 1 and is_prefix_seq(cur, s) else None

    def least(cur):
        for p in range(limit):
            s = successor(cur, delta.at(p))
            if s is not None:
                return s
        raise FuelExhausted("no enumerated successor found", node=list(cur), search=limit)

    def fn(pos, o):
        cur: tuple[int, ...] = ()
        for k in range(pos.nat + 1):
            nxt = successor(cur, delta.at(o.at(k)))
            cur = nxt if nxt is not None else least(cur)
        return cur[pos.nat]

    return fn


def _column_functionals(fans: Sequence, default) -> Callable[[int], Functional]:
    fs = [fan_surjection(f) for f in fans]
    d = fan_surjection(default)
    return lambda n: fs[n] if n < len(fs) else d


@rule("strict_disjunction")
def _strict_disjunction(params):
    """Column a(0) goes through surjection a(0); every other position is copied."""
    column_map = _column_functionals(params["fans"], params.get("default", "cantor"))

    def fn(pos, o):
        i = pos.nat
        if i == 0:
            return o.at(0)
        n, k = unpair(i)
        if n != o.at(0):
            return o.at(i)
        return column_map(n).fn(Position(nat=k), o.sub(n))

    return fn


@rule("strict_conjunction")
def _strict_conjunction(params):
    column_map = _column_functionals(params["fans"], params.get("default", "cantor"))

    def fn(pos, o):
        i = pos.nat
        if i == 0:
            return o.at(0)
        n, k = unpair(i)
        return column_map(n).fn(Position(nat=k), o.sub(n))

    return fn


@rule("strict_projection")
def _strict_projection(params):
    """Column 0 of the image under the fan surjection."""
    inner = fan_surjection(params["tree"])

    def fn(pos, o):
        return inner.fn(Position(nat=pair(0, pos.nat)), o)

    return fn


# ---------------------------------------------------------------- constructions on codes

def _rule_value(gamma: Functional, pos: Position, known: Sequence[int]) -> int | None:
    return gamma.value_on(pos, known)


def _minimal_fire(gamma: StreamSpec, t: Sequence[int], u: Sequence[int]) -> int | None:
    """The decoded value when gamma^t fires at u but at no proper initial part of u."""
    t, u = tuple(t), tuple(u)
    if isinstance(gamma, Functional):
        pos = Position(seq=t)
        v = _rule_value(gamma, pos, u)
        if v is None:
            return None
        if u and _rule_value(gamma, pos, u[:-1]) is not None:
            return None
        return v
    c = encode(t)
    if gamma.at_seq((c,) + u) == 0:
        return None
    if any(gamma.at_seq((c,) + u[:k]) for k in range(len(u))):
        return None
    return gamma.at_seq((c,) + u) - 1


class _BoundedOracle:
    """Oracle on a stream that refuses indices at or above a bound."""

    def __init__(self, stream: StreamSpec, bound: int):
        self.stream, self.bound = stream, bound

    def at(self, i: int) -> int:
        if i >= self.bound:
            raise Undetermined(i)
        return self.stream.at(i)

    def at_seq(self, s):
        c = encode(s)
        if c >= self.bound:
            raise Undetermined(s)
        return self.stream.at(c)

    def sub(self, m):
        from .functional import SubOracle
        return SubOracle(self, m)


@defined("fixed_point")
def _fixed_point(params):
    """a(s) = 1 iff gamma|a is non-zero at an initial part of s, read from a below code(s)."""
    gamma = _stream(params["gamma"])

    def fn(s):
        alpha = self_stream
        bound = encode(s)
        for k in range(len(s) + 1):
            t = s[:k]
            if isinstance(gamma, Functional):
                try:
                    if gamma.fn(Position(seq=t), _BoundedOracle(alpha, bound)) != 0:
                        return 1
                except Undetermined:
                    continue
            else:
                known = []
                for i in range(bound):
                    v = _minimal_fire(gamma, t, known)
                    if v is not None:
                        if v != 0:
                            return 1
                        break
                    if i >= len(s) + 64:
                        break
                    known.append(alpha.at(i))
        return 0

    self_stream = Lazy(lambda n: fn(decode(n)), "fixed-point", seq_fn=fn)
    return fn


@defined("fixed_point_literal")
def _fixed_point_literal(params):
    """a(s) = 1 iff initial parts t, u of s have gamma^t firing minimally at u with value > 0."""
    gamma = _stream(params["gamma"])

    def fn(s):
        for k in range(len(s) + 1):
            for j in range(len(s) + 1):
                v = _minimal_fire(gamma, s[:k], s[:j])
                if v is not None and v != 0:
                    return 1
        return 0

    return fn


def fixed_point(gamma: StreamSpec, literal: bool = False) -> Defined:
    """A code alpha with alpha forbidding beta exactly when gamma|alpha does."""
    if literal:
        return Defined("fixed_point_literal", {"gamma": gamma.to_json()})
    return Defined("fixed_point", {"gamma": gamma.to_json()})


def fixed_point_query_bound(gamma: Functional, alpha: StreamSpec, t: Sequence[int]) -> int:
    """One more than the largest input index read when computing (gamma|alpha)(t)."""
    seen = [-1]

    class Spy:
        def at(self, i):
            seen[0] = max(seen[0], i)
            return alpha.at(i)

        def at_seq(self, s):
            c = encode(s)
            seen[0] = max(seen[0], c)
            return alpha.at(c)

        def sub(self, m):
            from .functional import SubOracle
            return SubOracle(self, m)

    gamma.fn(Position(seq=tuple(t)), Spy())
    return seen[0] + 1


def transported_depth(gamma: Functional, alpha: StreamSpec, beta: StreamSpec, m: int,
                      fuel: int = 4096) -> int:
    """Depth at which alpha forbids beta, given gamma|alpha forbids beta at depth m."""
    q = fixed_point_query_bound(gamma, alpha, beta.prefix(m))
    for n in range(m, m + fuel):
        if encode(beta.prefix(n)) >= q:
            return n
    raise FuelExhausted("no long enough initial part", m=m)


@defined("diagonal")
def _diagonal(params):
    """a(b) = (gamma|b)(b) + 1 for every b, as a code of a function to naturals."""
    gamma = _stream(params["gamma"])
    if not isinstance(gamma, Functional):
        raise DomainError("diagonal needs a rule-based code")

    def fn(s):
        for k in range(len(s) + 1):
            v = gamma.value_on(Position(seq=s[:k]), s)
            if v is None:
                return 0
            if v != 0:
                return v + 1
        return 0

    return fn


def diagonal(gamma: Functional) -> Defined:
    return Defined("diagonal", {"gamma": gamma.to_json()})


def diagonal_apartness(gamma: Functional, beta: StreamSpec, fuel: int = 256) -> int:
    """Length k with alpha and gamma|beta differing at the first k values of beta."""
    image = apply(gamma, beta, fuel)
    for k in range(fuel):
        if image.at_seq(beta.prefix(k)) != 0:
            return k
    raise FuelExhausted("gamma|beta does not fire at beta within the bound", fuel=fuel)


@defined("boundedness")
def _boundedness(params):
    gamma = _stream(params["gamma"])

    def fn(a):
        n = len(a)
        evens, odds = a[0::2], a[1::2]
        for i in range((n + 1) // 2):
            d = evens[: i + 1]
            for j in range(n // 2):
                v = _minimal_fire(gamma, d, odds[: j + 1])
                if v is not None and v != 0:
                    return 1
        return 0

    return fn


def boundedness(gamma: StreamSpec) -> tuple[Defined, Callable[[StreamSpec], Callable]]:
    """(alpha, embed_of): alpha admits the interleaving of every node admitted by gamma|beta with beta."""
    alpha = Defined("boundedness", {"gamma": gamma.to_json()})

    def embed_of(beta: StreamSpec):
        def embed(d: Sequence[int]) -> tuple[int, ...]:
            d = tuple(d)
            return _interleave(d, beta.prefix(len(d)), 2 * len(d))
        return embed

    return alpha, embed_of


@rule("constant_code")
def _constant_code(params):
    """Ignores its input but reads one value before answering: the tree's char code."""
    t = _tree(params["tree"])

    def fn(pos, o):
        o.at(0)
        return 0 if tr.node_member_seq(t, pos.seq) else 1

    return fn


@rule("tree_select_code")
def _tree_select_code(params):
    """The char code of tree number b(0) mod k."""
    ts = [_tree(t) for t in params["trees"]]

    def fn(pos, o):
        t = ts[o.at(0) % len(ts)]
        return 0 if tr.node_member_seq(t, pos.seq) else 1

    return fn


# ---------------------------------------------------------------- range codes of injections

def binary_code_key(s: Sequence[int]) -> tuple:
    """Sort key equal to code order on binary sequences: length, then last entries first."""
    return (len(s), tuple(reversed(tuple(s))))


MODULI: dict[str, Callable[[dict], tuple[Callable[[int], int], Callable[[int], int]]]] = {
    "identity": lambda p: (lambda n: n, lambda n: n),
    "prepend": lambda p: (lambda n: n, lambda n: n + len(p["items"])),
}


class RangeCode:
    """Lemma-style range code of a strongly injective functional on Cantor space."""

    def __init__(self, gamma: StreamSpec, fuel: int = 20, declared=None):
        self.gamma = gamma
        self.fuel = fuel
        self._delta: dict[int, int] = {}
        self._eta: dict[int, int] = {}
        self.closed = None
        if declared is not None:
            self.closed = declared
        elif isinstance(gamma, Functional) and gamma.name in MODULI:
            self.closed = MODULI[gamma.name](gamma.params)
        self._checked: set = set()

    def image(self, s: Sequence[int]) -> tuple[int, ...]:
        return finite_apply_seq(self.gamma, tuple(s))

    def delta(self, n: int) -> int:
        """Least L such that every binary s of length L has an image of length >= n."""
        if n not in self._delta:
            if self.closed is not None:
                self._delta[n] = self.closed[0](n)
            else:
                self._delta[n] = self._search_delta(n)
        return self._delta[n]

    def _search_delta(self, n: int) -> int:
        for length in range(n, n + self.fuel + 1):
            short = False
            stack = [()]
            while stack and not short:
                s = stack.pop()
                if len(self.image(s)) >= n:
                    continue
                if len(s) == length:
                    short = True
                    break
                stack.extend((s + (0,), s + (1,)))
            if not short:
                return length
        raise FuelExhausted("length modulus not found", n=n, fuel=self.fuel)

    def _offending_pairs(self, n: int, p: int, limit: int):
        """Pairs of binary sequences of length p differing before n, with compatible images."""
        stack = [((), ())]
        visited = 0
        while stack:
            s, t = stack.pop()
            visited += 1
            if visited > limit:
                raise FuelExhausted("pair search too large", n=n, length=p)
            if s != t and incompatible_seq(self.image(s), self.image(t)):
                continue
            if len(s) == p:
                if s[:n] != t[:n]:
                    yield s, t
                continue
            for a, b in product((0, 1), repeat=2):
                if s == t and a > b:
                    continue
                stack.append((s + (a,), t + (b,)))

    def eta(self, n: int) -> int:
        """Least p >= n such that binary s, t of length p differing before n have incompatible images."""
        if n in self._eta:
            return self._eta[n]
        if self.closed is not None:
            p = self.closed[1](n)
            if p <= 10 and (n, p) not in self._checked:
                bad = next(self._offending_pairs(n, p, 1 << 22), None)
                if bad is not None:
                    raise PreconditionViolation(
                        "not strongly injective at the declared modulus",
                        first=list(bad[0]), second=list(bad[1]))
                self._checked.add((n, p))
            self._eta[n] = p
            return p
        for p in range(n, n + self.fuel + 1):
            if next(self._offending_pairs(n, p, 1 << 20), None) is None:
                self._eta[n] = p
                return p
        raise FuelExhausted("separation modulus not found", n=n, fuel=self.fuel)

    def value(self, t: Sequence[int]) -> int:
        """beta(t): 0 iff some binary s of length delta(|t|) has t as an initial part of gamma|s."""
        t = tuple(t)
        if any(x > 1 for x in t) and self._binary_outputs():
            return 1
        length = self.delta(len(t))
        stack = [()]
        while stack:
            s = stack.pop()
            im = self.image(s)
            if incompatible_seq(im, t):
                continue
            if len(s) == length:
                if is_prefix_seq(t, im):
                    return 0
                continue
            stack.extend((s + (0,), s + (1,)))
        return 1

    def _binary_outputs(self) -> bool:
        return isinstance(self.gamma, Functional) and self.gamma.name in ("identity", "prepend") \
            and all(x < 2 for x in self.gamma.params.get("items", ()))

    def zeta(self, eps: StreamSpec, m: int) -> tuple[int, ...]:
        """Least binary s (code order) whose image starts with the first m values of eps."""
        target = eps.prefix(m)
        for length in range(m, m + self.fuel + 1):
            hits = []
            stack = [()]
            while stack:
                s = stack.pop()
                im = self.image(s)
                if incompatible_seq(im, target):
                    continue
                if len(s) == length:
                    if is_prefix_seq(target, im):
                        hits.append(s)
                    continue
                stack.extend((s + (0,), s + (1,)))
            if hits:
                return min(hits, key=binary_code_key)
        raise FuelExhausted("no binary preimage of the initial part", m=m, fuel=self.fuel)

    def preimage(self, eps: StreamSpec) -> Lazy:
        return Lazy(lambda n: self.zeta(eps, self.eta(n + 1))[n], "range-preimage")

    def code(self) -> Lazy:
        return Lazy(lambda n: self.value(decode(n)), "range-code", seq_fn=self.value)


def injection_range_code(gamma: StreamSpec, fuel: int = 20, declared=None) -> tuple[Lazy, Callable]:
    """(beta, preimage): beta codes the range of gamma on Cantor space."""
    rc = RangeCode(gamma, fuel, declared)
    return rc.code(), rc.preimage


# ---------------------------------------------------------------- the catalog

@dataclass
class Reduction:
    name: str
    params: dict
    forward: StreamSpec
    witness_fwd: Callable | None
    witness_bwd: Callable | None
    citation: str
    source: str = ""
    target: str = ""
    construction: bool = False
    companions: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "params": self.params, "citation": self.citation,
               "source": self.source, "target": self.target,
               "forward": self.forward.to_json(),
               "directions": [d for d, f in (("fwd", self.witness_fwd), ("bwd", self.witness_bwd)) if f]}
        if self.companions:
            out["companions"] = {k: v.to_json() for k, v in self.companions.items()}
        return out


CATALOG: dict[str, Callable[[dict], Reduction]] = {}


def entry(name: str):
    def deco(fn):
        CATALOG[name] = fn
        return fn
    return deco


def build(name: str, params: dict | None = None) -> Reduction:
    if name not in CATALOG:
        raise DomainError("unknown reduction", name=name, known=sorted(CATALOG))
    try:
        return CATALOG[name](dict(params or {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError("malformed parameters", name=name, detail=str(exc)) from exc


def apply_reduction(r: Reduction, alpha: StreamSpec, fuel: int | None = None) -> StreamSpec:
    if r.construction:
        raise DomainError("this entry is a construction, not a functional", name=r.name)
    return apply(r.forward, alpha, fuel)


def transport_witness(r: Reduction, direction: str, data: dict, fuel: int = DEFAULT_FUEL) -> dict:
    fn = {"fwd": r.witness_fwd, "bwd": r.witness_bwd}.get(direction, "bad")
    if fn == "bad":
        raise DomainError("direction must be fwd or bwd", direction=direction)
    if fn is None:
        raise DomainError("this entry carries no witness map in that direction",
                          name=r.name, direction=direction)
    return fn(dict(data), fuel)


def _same(key_in: str, key_out: str):
    return lambda d, fuel: {key_out: d[key_in]}


def _code_param(params, key="code") -> StreamSpec:
    doc = params[key]
    if isinstance(doc, StreamSpec):
        params[key] = doc.to_json()
        return doc
    if isinstance(doc, dict) and "states" in doc or isinstance(doc, str):
        s = TreeChar(tr.from_json(doc))
        params[key] = s.to_json()
        return s
    return from_json(doc)


@entry("sigma11_to_e11")
def _b_sigma11(params):
    _code_param(params)
    f = Functional("interleave_code", {"code": params["code"], "normalize": True})
    return Reduction("sigma11_to_e11", params, f,
                     _same("partner", "path"), _same("path", "partner"),
                     "analytic set of a closed code of pairs, reduced to the codes admitting a path",
                     "Analytic", "E11")


@entry("strong_reduce_to_e11")
def _b_strong(params):
    _code_param(params)
    f = Functional("interleave_code", {"code": params["code"], "normalize": False})
    return Reduction("strong_reduce_to_e11", params, f,
                     _same("partner", "path"), _same("path", "partner"),
                     "strong reduction to E11 by reading the code at interleavings",
                     "Analytic", "E11")


@entry("pi11_to_a11")
def _b_pi11(params):
    _code_param(params)
    f = Functional("interleave_code", {"code": params["code"], "normalize": True})
    return Reduction("pi11_to_a11", params, f,
                     _same("partner", "counter"), _same("counter", "partner"),
                     "co-analytic set of an open code of pairs, reduced to A11 (counterexamples transported)",
                     "Coanalytic", "A11")


def _family(params, default: StreamSpec) -> Family:
    members = [_code_param({"code": c}) for c in params["family"]]
    return Family(members, default)


@entry("analytic_union")
def _b_union(params):
    fam = _family(params, Const(1))

    def fwd(d, fuel):
        return {"partner": Prefixed([d["index"]], d["partner"])}

    def bwd(d, fuel):
        e = d["partner"]
        return {"index": e.at(0), "partner": Shift(e)}

    r = Reduction("analytic_union", params, Functional("family_union"), fwd, bwd,
                  "one closed code for a countable union of analytic sets", "Analytic[member]", "Analytic")
    r.companions["family"] = fam
    return r


@entry("coanalytic_intersection")
def _b_coint(params):
    fam = _family(params, Const(1))
    r = _b_union(params)
    r.name = "coanalytic_intersection"
    r.citation = "one open code for a countable intersection of co-analytic sets (counterexamples transported)"
    r.source, r.target = "Coanalytic[member]", "Coanalytic"
    r.companions["family"] = fam
    return r


@entry("analytic_intersection")
def _b_anint(params):
    fam = _family(params, Const(0))
    k = len(fam.members)

    def fwd(d, fuel):
        return {"partner": Merge(d["partners"], zeros())}

    def bwd(d, fuel):
        e = d["partner"]
        return {"partners": [Subseq(e, j) for j in range(k)]}

    r = Reduction("analytic_intersection", params, Functional("family_intersection"), fwd, bwd,
                  "one closed code for a countable intersection of analytic sets",
                  "Analytic[each member]", "Analytic")
    r.companions["family"] = fam
    return r


@entry("souslin_code")
def _b_souslin(params):
    sysparams = {"trees": [tr.to_json(_tree(t)) for t in params["trees"]],
                 "selector": tr.to_json(_tree(params["selector"]))}
    params.update(sysparams)
    system = Defined("souslin_system", sysparams)

    def fwd(d, fuel):
        partners = d["partners"]
        col1 = Merge(partners, partners[-1]) if isinstance(partners, list) else Merge([], partners)
        return {"partner": Merge([d["index_path"], col1], zeros())}

    def bwd(d, fuel):
        g = d["partner"]
        return {"index_path": Subseq(g, 0), "partners": lambda n: Subseq(Subseq(g, 1), n)}

    r = Reduction("souslin_code", params, Functional("souslin"), fwd, bwd,
                  "closed code for the Souslin operation applied to a system of analytic sets",
                  "Souslin", "Analytic")
    r.companions["system"] = system
    return r


def blocks_point(path: StreamSpec) -> StreamSpec:
    """The point 0^b(0) 1 0^b(1) 1 ... for a path b."""
    if is_ev(path):
        return EvPeriodic(block_code(path.pre), block_code(path.cycle))
    state = {"out": [], "i": 0}

    def at(n):
        while len(state["out"]) <= n:
            state["out"].extend(block_code([path.at(state["i"])]))
            state["i"] += 1
        return state["out"][n]

    return Lazy(at, "blocks")


def gaps_path(point: StreamSpec) -> StreamSpec:
    """Inverse of ``blocks_point``: the lengths of the 0-runs before each 1."""
    if is_ev(point) and 1 in point.cycle:
        j = point.cycle.index(1)
        head = point.pre + point.cycle[: j + 1]
        tail = point.cycle[j + 1:] + point.cycle[: j + 1]
        return EvPeriodic(_blocks(head), _blocks(tail))
    state = {"runs": [], "pos": 0}

    def at(n):
        while len(state["runs"]) <= n:
            run = 0
            for _ in range(1 << 20):
                x = point.at(state["pos"])
                state["pos"] += 1
                if x == 1:
                    break
                run += 1
            else:
                raise FuelExhausted("no further 1 found")
            state["runs"].append(run)
        return state["runs"][n]

    return Lazy(at, "gaps")


@entry("e11_to_share_inf")
def _b_share_inf(params):
    return Reduction("e11_to_share_inf", params, Functional("share_inf"),
                     lambda d, fuel: {"point": blocks_point(d["path"])},
                     lambda d, fuel: {"path": gaps_path(d["point"])},
                     "E11 reduced to the codes sharing a point with Inf", "E11", "Share(Inf)")


@entry("a11_to_sink_almostfin")
def _b_sink_almostfin(params):
    return Reduction("a11_to_sink_almostfin", params, Functional("share_inf"),
                     lambda d, fuel: {"counter": blocks_point(d["counter"])},
                     lambda d, fuel: {"counter": gaps_path(d["counter"])},
                     "A11 reduced to the spread laws whose points are all in Almost*Fin "
                     "(counterexamples transported)", "A11", "Sink(AlmostStarFin)")


def unc_embedding(path: StreamSpec) -> Callable[[Sequence[int]], tuple[int, ...]]:
    """Perfect embedding c -> (2 code(path|n+1) + 1 + c(n))_n into the UNC image."""
    def emb(c):
        p = path.prefix(len(c))
        return tuple(2 * encode(p[: n + 1]) + 1 + c[n] for n in range(len(c)))
    return emb


def unc_path(emb: Callable) -> Lazy:
    """Recover an admitted path from a perfect embedding: follow the leftmost branch."""
    def at(n):
        node = tuple(emb((0,) * (n + 1)))
        if len(node) <= n or node[n] == 0:
            raise DomainError("embedding leaves the growth region", depth=n)
        t = unc_digit_target(node[n])
        return t[n]
    return Lazy(at, "unc-path")


@entry("e11_to_unc")
def _b_unc(params):
    return Reduction("e11_to_unc", params, Functional("unc"),
                     lambda d, fuel: {"embedding": unc_embedding(d["path"])},
                     lambda d, fuel: {"path": unc_path(d["embedding"])},
                     "E11 reduced to the spread laws with a perfect subspread", "E11", "UNC")


@entry("a11_to_sink_fin")
def _b_sink_fin(params):
    def fwd(d, fuel):
        return {"counter": pair_point(d["counter"], EvPeriodic((), (1,)))}

    return Reduction("a11_to_sink_fin", params, Functional("sink_fin"), fwd,
                     lambda d, fuel: {"counter": _part_i(d["counter"])},
                     "A11 reduced to the spread laws whose points are all in Fin "
                     "(counterexamples transported)", "A11", "Sink(Fin)")


def _part_i(p: StreamSpec) -> StreamSpec:
    if is_ev(p):
        if len(p.pre) % 2 == 0 and len(p.cycle) % 2 == 0:
            return EvPeriodic(p.pre[0::2], p.cycle[0::2])
        return EvPeriodic([p.at(2 * i) for i in range(len(p.pre))],
                          [p.at(2 * i) for i in range(len(p.pre), len(p.pre) + len(p.cycle))])
    return PartI(p)


@entry("fin_sink01_pair")
def _b_fin_sink(params):
    r = Reduction("fin_sink01_pair", params, Functional("fin_to_sink01"),
                  _same("bound", "bound"), _same("bound", "bound"),
                  "Fin and the binary spread laws sinking into Fin reduce to each other",
                  "Fin", "Sink01(Fin)")
    r.companions["reverse"] = Functional("sink01_to_fin")
    return r


@entry("a11_to_e11bang")
def _b_e11bang(params):
    def fwd(d, fuel):
        return {"counter": (zeros(), Prefixed([1], d["counter"]))}

    def bwd(d, fuel):
        p, q = d["counter"]
        other = q if q.at(0) != 0 else p
        return {"counter": Shift(other)}

    return Reduction("a11_to_e11bang", params, Functional("e11bang"), fwd, bwd,
                     "A11 reduced to the codes admitting exactly one path "
                     "(counterexamples transported)", "A11", "E11bang")


@entry("e2bang_chain")
def _b_chain(params):
    step = params.get("step", "a2")
    if step == "a2":
        f = Functional("a2_to_e2bang")

        def fwd(d, fuel):
            ap = d["apart"]
            return {"column": 0, "apart": lambda m: ap(m - 1)}

        def bwd(d, fuel):
            ap = d["apart"]
            return {"apart": lambda m: ap(m + 1)}

        src = "A2"
    elif step == "dbang":
        f = Functional("dbang_to_e2bang")

        def fwd(d, fuel):
            i, p = d["column"], d["apart"]
            return {"column": i, "apart": lambda m: p if m == 1 - i else 0}

        def bwd(d, fuel):
            i = d["column"]
            return {"column": i, "apart": d["apart"](1 - i)}

        src = "DbangA1A1"
    elif step == "e11bang":
        f = Functional("e2bang_to_e11bang")

        def fwd(d, fuel):
            return {"path": EvPeriodic((), (d["column"],))}

        def bwd(d, fuel):
            return {"column": d["path"].at(0)}

        src = "E2bang"
    else:
        raise DomainError("unknown chain step", step=step)
    return Reduction("e2bang_chain", params, f, fwd, bwd,
                     "A2 and D!(A1,A1) reduce to E2!, and E2! reduces to E11!",
                     src, "E11bang" if step == "e11bang" else "E2bang")


def e2bang_preimage(image: StreamSpec, column: int) -> Lazy:
    """The unique input of the E2! surjection with the given image."""
    a = column

    def split(n):
        col = Subseq(image, n)
        m = 0
        while col.at(m) == 0:
            m += 1
            if m > 1 << 16:
                raise FuelExhausted("column not seen apart from zero", column=n)
        block = (0,) * m + (col.at(m),)
        return e2bang_block_index(block), Shift(col, m + 1)

    def at(i):
        if i == 0:
            return image.at(0)
        c, k = unpair(i)
        if c == 0:
            if k == 0:
                return a
            n = k - 1 if k <= a else k
            return split(n)[0]
        n = c - 1 if c <= a else c
        return split(n)[1].at(k)

    return Lazy(at, "e2bang-preimage")


@entry("e2bang_surjection")
def _b_e2surj(params):
    f = Functional("e2bang_surjection")

    def fwd(d, fuel):
        alpha = d["point"]
        a = alpha.at(pair(0, 0))

        def apart(n):
            p, _ = _e2bang_surj_source(a, n)
            return len(e2bang_block(alpha.at(pair(0, p)))) - 1

        return {"column": a, "apart": apart}

    def bwd(d, fuel):
        return {"point": e2bang_preimage(d["image"], d["column"])}

    return Reduction("e2bang_surjection", params, f, fwd, bwd,
                     "strongly injective map of Baire space onto E2!", "Baire", "E2bang")


@entry("share_singleton")
def _b_singleton(params):
    tree = _tree(params.get("tree", "baire"))
    params["tree"] = tr.to_json(tree)
    return Reduction("share_singleton", params, Functional("share_singleton"),
                     _same("point", "point"), _same("point", "point"),
                     "X reduced to Share(X) through the singleton code", "Member", "Share")


@entry("share_sum_iso")
def _b_sum_iso(params):
    n = int(params["n"])
    direction = params.get("direction", "sum_to_direct")
    if direction == "sum_to_direct":
        f = Functional("share_sum_to_direct")

        def fwd(d, fuel):
            x = d["point"]
            i = 0
            while x.at(i) == 0:
                i += 1
            return {"point": Prefixed([i], Shift(x, i + 1))}

        def bwd(d, fuel):
            y = d["point"]
            return {"point": Prefixed((0,) * y.at(0) + (1,), Shift(y))}
    elif direction == "direct_to_sum":
        f = Functional("share_direct_to_sum", {"n": n})

        def fwd(d, fuel):
            y = d["point"]
            return {"point": Prefixed((0,) * y.at(0) + (1,), Shift(y))}

        def bwd(d, fuel):
            x = d["point"]
            i = 0
            while x.at(i) == 0:
                i += 1
            return {"point": Prefixed([i], Shift(x, i + 1))}
    else:
        raise DomainError("direction must be sum_to_direct or direct_to_sum")
    return Reduction("share_sum_iso", params, f, fwd, bwd,
                     "Share of the zero-chain sum and Share of the direct sum reduce to each other",
                     "Share", "Share")


@entry("perfect_to_injection")
def _b_perfect(params):
    t = _check_perfect(_tree(params["tree"]))
    params["tree"] = tr.to_json(t)
    f = Functional("perfect_injection", {"tree": params["tree"]})

    def fwd(d, fuel):
        return {"image": apply(f, d["point"], fuel)}

    def bwd(d, fuel):
        return {"point": perfect_preimage(f.fn.fmap, d["image"], fuel)}

    return Reduction("perfect_to_injection", params, f, fwd, bwd,
                     "strongly injective map of Cantor space into a perfect spread", "Cantor", "Member")


@entry("injection_range_code")
def _b_range_code(params):
    gamma = from_json(params["gamma"]) if not isinstance(params["gamma"], StreamSpec) else params["gamma"]
    params["gamma"] = gamma.to_json()
    rc = RangeCode(gamma, int(params.get("search", 20)))
    beta = rc.code()

    def fwd(d, fuel):
        return {"image": apply(gamma, d["point"], fuel)}

    def bwd(d, fuel):
        return {"point": rc.preimage(d["image"])}

    r = Reduction("injection_range_code", params, beta, fwd, bwd,
                  "closed code of the range of a strongly injective map on Cantor space",
                  "Cantor", "E11", construction=True)
    r.companions["range"] = rc
    return r


@entry("fan_surjection")
def _b_fan_surj(params):
    f = fan_surjection(params["tree"])
    params["tree"] = f.params["tree"]
    walk = f.fn.walk

    def fwd(d, fuel):
        return {"image": apply(f, d["point"], fuel)}

    def bwd(d, fuel):
        return {"point": walk.preimage(d["image"])}

    return Reduction("fan_surjection", params, f, fwd, bwd,
                     "map of Cantor space onto a fan by binary blocks", "Cantor", "Member")


@entry("fan_share_reduction")
def _b_fan_share(params):
    surj = fan_surjection(params["tree"])
    params["tree"] = surj.params["tree"]
    f = Functional("fan_share", {"tree": params["tree"]})
    walk = surj.fn.walk

    def fwd(d, fuel):
        return {"point": walk.preimage(d["point"])}

    def bwd(d, fuel):
        return {"point": apply(surj, d["point"], fuel)}

    r = Reduction("fan_share_reduction", params, f, fwd, bwd,
                  "Share of a fan reduced to Share of Cantor space", "Share[fan]", "Share[cantor]")
    r.companions["surjection"] = surj
    return r


@entry("range_enumeration")
def _b_range_enum(params):
    f = Functional("range_enumeration")

    def fwd(d, fuel):
        y, a, depth = d["image"], d["point"], int(d.get("depth", 6))
        out = []
        for k in range(depth):
            s = y.prefix(k)
            out.append((s, pair(encode(s), encode(a.prefix(k + 1)))))
        return {"indices": out}

    return Reduction("range_enumeration", params, f, fwd, None,
                     "enumeration of the nodes meeting the range of a code", "Range", "Enumerated")


@entry("enumeration_to_surjection")
def _b_enum_surj(params):
    if "tree" in params:
        delta = node_enumeration(params.pop("tree"))
        params["enumeration"] = delta.to_json()
    delta = _stream(params["enumeration"])
    f = Functional("enum_surjection", {"enumeration": params["enumeration"]})

    def fwd(d, fuel):
        return {"image": apply(f, d["point"], fuel)}

    def bwd(d, fuel):
        y = d["image"]
        nodes = _node_list(delta.params["tree"]) if isinstance(delta, Defined) and \
            delta.name == "node_enumeration" else None

        def at(n):
            s = y.prefix(n + 1)
            if nodes is not None:
                return nodes.position(s)
            for p in range(1 << 20):
                if delta.at(p) == encode(s) + 1:
                    return p
            raise FuelExhausted("node not enumerated within the search", node=list(s))

        return {"point": Lazy(at, "enumeration-preimage")}

    return Reduction("enumeration_to_surjection", params, f, fwd, bwd,
                     "map of Baire space onto a spread given by an enumeration of its nodes",
                     "Baire", "Member")


@entry("strict_disjunction_conjunction")
def _b_strict(params):
    fans = [tr.to_json(_fan(t)) for t in params["fans"]]
    params["fans"] = fans
    mode = params.get("mode", "disjunction")
    surj = [fan_surjection(t) for t in fans]
    if mode == "disjunction":
        f = Functional("strict_disjunction", {"fans": fans})

        def fwd(d, fuel):
            alpha = d["point"]
            return {"image": apply(f, alpha, fuel), "column": alpha.at(0)}

        def bwd(d, fuel):
            y, n, beta = d["image"], d["column"], d["preimage"]

            def at(i):
                if i == 0:
                    return n
                c, k = unpair(i)
                return beta.at(k) if c == n else y.at(i)

            return {"point": Lazy(at, "disjunction-preimage")}
    elif mode == "conjunction":
        f = Functional("strict_conjunction", {"fans": fans})

        def fwd(d, fuel):
            return {"image": apply(f, d["point"], fuel)}

        def bwd(d, fuel):
            y, pre = d["image"], d["preimages"]
            return {"point": Merge(pre, zeros(), head=y.at(0))}
    else:
        raise DomainError("mode must be disjunction or conjunction")
    r = Reduction("strict_disjunction_conjunction", params, f, fwd, bwd,
                  "disjunction and conjunction of ranges of maps are ranges of maps",
                  "Baire", "Range")
    r.companions.update({f"surjection{i}": s for i, s in enumerate(surj)})
    return r


@entry("strict_projection")
def _b_proj(params):
    surj = fan_surjection(params["tree"])
    params["tree"] = surj.params["tree"]
    f = Functional("strict_projection", {"tree": params["tree"]})
    walk = surj.fn.walk

    def fwd(d, fuel):
        return {"image": apply(f, d["point"], fuel)}

    def bwd(d, fuel):
        return {"point": walk.preimage(d["source"])}

    r = Reduction("strict_projection", params, f, fwd, bwd,
                  "column 0 of the range of a map is the range of a map", "Baire", "Range")
    r.companions["surjection"] = surj
    return r


@entry("fixed_point")
def _b_fixed(params):
    gamma = _stream(params["gamma"])
    params["gamma"] = gamma.to_json()
    literal = bool(params.get("literal", False))
    alpha = fixed_point(gamma, literal)

    def fwd(d, fuel):
        beta, n = d["point"], d["depth"]
        for m in range(n + 1):
            if apply(gamma, alpha, fuel).at_seq(beta.prefix(m)) != 0:
                return {"depth": m}
        raise FuelExhausted("no forbidding initial part found", depth=n)

    def bwd(d, fuel):
        return {"depth": transported_depth(gamma, alpha, d["point"], d["depth"])}

    return Reduction("fixed_point", params, alpha, fwd, None if literal else bwd,
                     "a code forbidding exactly what its own image forbids", "Forbids", "Forbids",
                     construction=True)


@entry("diagonal")
def _b_diag(params):
    gamma = _stream(params["gamma"])
    params["gamma"] = gamma.to_json()
    alpha = diagonal(gamma)

    def fwd(d, fuel):
        return {"index": diagonal_apartness(gamma, d["point"], min(fuel, 256))}

    return Reduction("diagonal", params, alpha, fwd, None,
                     "a code of a function apart from every gamma|beta", "Baire", "Apart",
                     construction=True)


@entry("boundedness")
def _b_bound(params):
    gamma = _stream(params["gamma"])
    params["gamma"] = gamma.to_json()
    alpha, embed_of = boundedness(gamma)

    def fwd(d, fuel):
        return {"node": embed_of(d["point"])(d["node"])}

    r = Reduction("boundedness", params, alpha, fwd, None,
                  "one code bounding all the codes gamma|beta", "Admitted", "Admitted",
                  construction=True)
    r.companions["embed_of"] = embed_of
    return r
