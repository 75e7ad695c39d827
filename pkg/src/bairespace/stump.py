"""Eventually periodic stumps.

A stump is either ``EMPTY`` or a node whose n-th child is ``prefix[n]`` for
``n < len(prefix)`` and afterwards runs through ``cycle`` forever.  The
characteristic code of a stump is 1 everywhere for ``EMPTY``; for a node it is
0 at the empty sequence and agrees with child ``n`` on ``<n> * u``.  The
*admitted* sequences are the ones where the code is 0.

Every stump is built through :func:`node`, which normalises and interns it,
so two stumps with the same code are the same Python object.

Careful with :func:`code_subset`: ``a`` is a subset of ``b`` when every
sequence *excluded* by ``a`` is excluded by ``b``.  In terms of admitted
trees that is reverse inclusion.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from .errors import DomainError, ParseError


class Stump:
    __slots__ = ("prefix", "cycle", "__weakref__")

    def __init__(self, prefix: tuple | None, cycle: tuple | None):
        self.prefix = prefix
        self.cycle = cycle

    @property
    def is_empty(self) -> bool:
        return self.cycle is None

    def child(self, n: int) -> "Stump":
        if self.cycle is None:
            raise DomainError("the empty stump has no children")
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def children(self) -> tuple["Stump", ...]:
        """Distinct children, in order of first occurrence."""
        seen = {}
        for c in self.prefix + self.cycle:
            seen.setdefault(id(c), c)
        return tuple(seen.values())

    def period_window(self) -> int:
        """Number of leading children after which the child sequence repeats."""
        return len(self.prefix) + len(self.cycle)

    def __repr__(self) -> str:
        return show(self)


EMPTY = Stump(None, None)

_interned: dict[tuple, Stump] = {}
_intern_lock = threading.Lock()


def _minimal_cycle(cycle: tuple) -> tuple:
    k = len(cycle)
    for p in range(1, k + 1):
        if k % p == 0 and all(cycle[i] is cycle[i % p] for i in range(k)):
            return cycle[:p]
    return cycle


def node(prefix: Sequence[Stump], cycle: Sequence[Stump]) -> Stump:
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        raise DomainError("a node needs a non-empty cycle")
    cycle = _minimal_cycle(cycle)
    while prefix and prefix[-1] is cycle[-1]:
        cycle = (prefix[-1],) + cycle[:-1]
        prefix = prefix[:-1]
    key = (tuple(map(id, prefix)), tuple(map(id, cycle)))
    with _intern_lock:
        found = _interned.get(key)
        if found is None:
            found = Stump(prefix, cycle)
            _interned[key] = found
    return found


def normalize(s: Stump) -> Stump:
    """Rebuild ``s`` bottom-up through :func:`node` (a no-op for built stumps)."""
    if s.is_empty:
        return EMPTY
    return node([normalize(c) for c in s.prefix], [normalize(c) for c in s.cycle])


def successor(s: Stump) -> Stump:
    return node((), (s,))


ONE_STAR = successor(EMPTY)


def code_at(s: Stump, seq: Sequence[int]) -> int:
    for n in seq:
        if s.is_empty:
            return 1
        s = s.child(n)
    return 1 if s.is_empty else 0


def admits(s: Stump, seq: Sequence[int]) -> bool:
    return code_at(s, seq) == 0


def depth(s: Stump) -> int:
    if s.is_empty:
        return 0
    return 1 + max(depth(c) for c in s.children())


# ---------------------------------------------------------------- order

@lru_cache(maxsize=None)
def leq(s: Stump, t: Stump) -> bool:
    if s.is_empty:
        return True
    return all(lt(c, t) for c in s.children())


@lru_cache(maxsize=None)
def lt(s: Stump, t: Stump) -> bool:
    if t.is_empty:
        return False
    return any(leq(s, d) for d in t.children())


def mutual_leq(s: Stump, t: Stump) -> bool:
    return leq(s, t) and leq(t, s)


# ---------------------------------------------------------------- pointwise combinations

def _aligned(s: Stump, t: Stump):
    """Prefix length and cycle length that serve both child sequences."""
    p = max(len(s.prefix), len(t.prefix))
    c = lcm(len(s.cycle), len(t.cycle))
    return p, c


def _combine(s: Stump, t: Stump, f) -> Stump:
    p, c = _aligned(s, t)
    prefix = [f(s.child(n), t.child(n)) for n in range(p)]
    cycle = [f(s.child(n), t.child(n)) for n in range(p, p + c)]
    return node(prefix, cycle)


@lru_cache(maxsize=None)
def tree_union(s: Stump, t: Stump) -> Stump:
    """Code is 1 exactly where both codes are 1: the admitted trees unite."""
    if s.is_empty:
        return t
    if t.is_empty:
        return s
    return _combine(s, t, tree_union)


@lru_cache(maxsize=None)
def exclusion_join(s: Stump, t: Stump) -> Stump:
    """Code is 1 where either code is 1: the admitted trees intersect."""
    if s.is_empty or t.is_empty:
        return EMPTY
    return _combine(s, t, exclusion_join)


@lru_cache(maxsize=None)
def code_subset(s: Stump, t: Stump) -> bool:
    """Every sequence excluded by ``s`` is excluded by ``t``."""
    if s.is_empty:
        return t.is_empty
    if t.is_empty:
        return True
    p, c = _aligned(s, t)
    return all(code_subset(s.child(n), t.child(n)) for n in range(p + c))


@lru_cache(maxsize=None)
def natural_sum(s: Stump, t: Stump) -> Stump:
    if s.is_empty:
        return t
    if t.is_empty:
        return s
    p = max(len(s.prefix), len(t.prefix))
    c = lcm(len(s.cycle), len(t.cycle))

    def kids(lo: int, hi: int) -> list[Stump]:
        out = []
        for m in range(lo, hi):
            out.append(natural_sum(s.child(m), t))
            out.append(natural_sum(s, t.child(m)))
        return out

    return node(kids(0, p), kids(p, p + c))


def iterated_sum(stumps: Iterable[Stump]) -> Stump:
    total = EMPTY
    for s in stumps:
        total = natural_sum(total, s)
    return total


@lru_cache(maxsize=None)
def hull(s: Stump) -> Stump:
    """Code 1 at ``t`` iff the code of ``s`` is 1 at some ``u`` pointwise below ``t``.

    Child ``n`` of the hull is the exclusion-join of the hulls of the first
    ``n + 1`` children, which is constant once every distinct child has
    been seen.
    """
    if s.is_empty:
        return EMPTY
    window = s.period_window()
    running = None
    kids = []
    for n in range(window):
        h = hull(s.child(n))
        running = h if running is None else exclusion_join(running, h)
        kids.append(running)
    return node(kids[:-1], kids[-1:])


# ---------------------------------------------------------------- predicates

@lru_cache(maxsize=None)
def is_hereditarily_increasing(s: Stump) -> bool:
    if s.is_empty:
        return True
    window = s.period_window()
    if not all(is_hereditarily_increasing(c) for c in s.children()):
        return False
    return all(code_subset(s.child(n), s.child(n + 1)) for n in range(window))


@lru_cache(maxsize=None)
def is_hereditarily_repetitive(s: Stump) -> bool:
    if s.is_empty:
        return True
    recurring = {id(c) for c in s.cycle}
    if any(id(c) not in recurring for c in s.prefix):
        return False
    return all(is_hereditarily_repetitive(c) for c in s.children())


def is_hereditarily_repetitive_mutual(s: Stump) -> bool:
    """Variant reading child repetition as mutual ``leq`` rather than equality."""
    if s.is_empty:
        return True
    for c in s.prefix:
        if not any(mutual_leq(c, d) for d in s.cycle):
            return False
    return all(is_hereditarily_repetitive_mutual(c) for c in s.children())


def is_weakly_comparative(s: Stump) -> bool:
    """Any two children lie below a common child.  Only defined for nodes."""
    if s.is_empty:
        return False
    kids = s.children()
    for a in kids:
        for b in kids:
            if not any(leq(a, c) and leq(b, c) for c in kids):
                return False
    return True


@lru_cache(maxsize=None)
def is_nonzero(s: Stump) -> bool:
    if s is ONE_STAR:
        return True
    if s.is_empty:
        return False
    return all(not c.is_empty and is_nonzero(c) for c in s.children())


def predicates(s: Stump) -> dict:
    return {
        "is_empty": s.is_empty,
        "is_nonzero": is_nonzero(s),
        "is_hereditarily_increasing": is_hereditarily_increasing(s),
        "is_hereditarily_repetitive": is_hereditarily_repetitive(s),
        "is_weakly_comparative": is_weakly_comparative(s),
    }


# ---------------------------------------------------------------- finite branching

def is_finite_branching(s: Stump) -> bool:
    if s.is_empty:
        return True
    return all(c.is_empty for c in s.cycle) and all(is_finite_branching(c) for c in s.prefix)


def admitted_nodes(s: Stump) -> list[tuple[int, ...]]:
    """All admitted sequences of a finite-branching stump, parents first."""
    if not is_finite_branching(s):
        raise DomainError("stump has infinitely many admitted nodes; use representative_nodes or leq")
    return representative_nodes(s)


def representative_nodes(s: Stump) -> list[tuple[int, ...]]:
    """Admitted sequences using only moves below each node's period window.

    Every admitted node ``<..., n, ...>`` has the same subtree as the node
    with ``n`` replaced by its representative below the window, so this
    finite set carries all of the embedding structure.  For finite-branching
    stumps it is exactly the set of admitted nodes.
    """
    out = []

    def walk(t: Stump, path: tuple[int, ...]):
        if t.is_empty:
            return
        out.append(path)
        for n in range(t.period_window()):
            walk(t.child(n), path + (n,))

    walk(s, ())
    return out


def embeds(s: Stump, t: Stump) -> dict | None:
    """A strictly prefix-monotone map from the admitted nodes of ``s`` to those
    of ``t``, or None when there is none.

    The table covers the representative nodes of ``s``; a node outside the
    window maps like its representative.  Maps need not be injective, so
    this loses nothing.
    """
    source = representative_nodes(s)
    target = representative_nodes(t)
    if not source:
        return {}
    below: dict[tuple, list[tuple]] = {v: [] for v in target}
    for w in target:
        for k in range(len(w)):
            below[w[:k]].append(w)
    kids: dict[tuple, list[tuple]] = {u: [] for u in source}
    for u in source:
        if u:
            kids[u[:-1]].append(u)

    @lru_cache(maxsize=None)
    def fits(u: tuple, v: tuple) -> bool:
        return all(any(fits(c, w) for w in below[v]) for c in kids[u])

    def build(u: tuple, v: tuple, table: dict):
        table[u] = v
        for c in kids[u]:
            w = next(w for w in below[v] if fits(c, w))
            build(c, w, table)

    for v in target:
        if fits((), v):
            table: dict = {}
            build((), v, table)
            return table
    return None


# ---------------------------------------------------------------- critical extension

def critical_extension(s: Stump, depth_k: int) -> Stump:
    if depth_k < 1:
        raise DomainError("critical extension needs depth at least 1", depth=depth_k)
    taus = [hull(s)]
    while len(taus) < depth_k:
        last = taus[-1]
        taus.append(hull(natural_sum(last, last)))
    return node(taus[:-1], taus[-1:])


def critical_sequence(s: Stump, depth_k: int) -> list[Stump]:
    taus = [hull(s)]
    while len(taus) < depth_k:
        taus.append(hull(natural_sum(taus[-1], taus[-1])))
    return taus


# ---------------------------------------------------------------- JSON

def to_json(s: Stump):
    if s.is_empty:
        return {"empty": True}
    return {"prefix": [to_json(c) for c in s.prefix], "cycle": [to_json(c) for c in s.cycle]}


def from_json(doc) -> Stump:
    if isinstance(doc, str):
        named = {"empty": EMPTY, "1*": ONE_STAR, "one": ONE_STAR}
        if doc in named:
            return named[doc]
        raise ParseError("unknown stump name", name=doc)
    if not isinstance(doc, dict):
        raise ParseError("stump must be an object")
    if doc.get("empty") is True and len(doc) == 1:
        return EMPTY
    if set(doc) != {"prefix", "cycle"}:
        raise ParseError("stump needs keys prefix and cycle, or empty:true")
    if not isinstance(doc["prefix"], list) or not isinstance(doc["cycle"], list) or not doc["cycle"]:
        raise ParseError("prefix must be a list and cycle a non-empty list")
    return node([from_json(c) for c in doc["prefix"]], [from_json(c) for c in doc["cycle"]])


def show(s: Stump) -> str:
    if s.is_empty:
        return "Empty"
    if s is ONE_STAR:
        return "1*"
    return "Node[" + ", ".join(map(show, s.prefix)) + " | " + ", ".join(map(show, s.cycle)) + "]"
