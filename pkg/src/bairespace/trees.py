"""Regular closed subsets of Baire space.

A ``RegularTree`` is a finite automaton over moves (naturals).  Each state
has explicit edges ``move -> target`` (target ``None`` rejects that move) and
optionally a tail: for ``move >= tail_from`` without an explicit edge, the
target is ``tail_period[(move - tail_from) % len(tail_period)]``.  Moves not
covered by either reject.  A sequence is a node when the walk from the root
never rejects; the set denoted is the set of points all of whose prefixes are
nodes.  ``root is None`` is the empty set.

Pruned form keeps only states lying on an infinite path and renumbers them
breadth-first, so two trees built the same way compare equal.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Callable, Iterator, Sequence

from . import stump as st
from .errors import DomainError, FuelExhausted, ParseError
from .seqcode import decode, encode, incompatible_seq, is_prefix_seq


@dataclass(frozen=True)
class State:
    explicit: tuple[tuple[int, int | None], ...] = ()
    tail_period: tuple[int | None, ...] | None = None
    tail_from: int = 0

    def target(self, move: int) -> int | None:
        for m, t in self.explicit:
            if m == move:
                return t
        if self.tail_period is not None and move >= self.tail_from:
            return self.tail_period[(move - self.tail_from) % len(self.tail_period)]
        return None

    def window(self) -> int:
        """Moves at or past this bound follow the tail (or reject)."""
        top = max((m + 1 for m, _ in self.explicit), default=0)
        if self.tail_period is None:
            return top
        return max(top, self.tail_from)

    def targets(self) -> set[int]:
        out = {t for _, t in self.explicit if t is not None}
        if self.tail_period is not None:
            out |= {t for t in self.tail_period if t is not None}
        return out

    def has_live_tail(self) -> bool:
        return self.tail_period is not None and any(t is not None for t in self.tail_period)

    def finite_moves(self) -> list[tuple[int, int]]:
        """Accepted moves below the window, in order."""
        return [(m, t) for m in range(self.window()) if (t := self.target(m)) is not None]


@dataclass(frozen=True)
class RegularTree:
    states: tuple[State, ...]
    root: int | None

    @property
    def is_empty_presentation(self) -> bool:
        return self.root is None

    def walk(self, seq: Sequence[int]) -> int | None:
        q = self.root
        for n in seq:
            if q is None:
                return None
            q = self.states[q].target(n)
        return q

    def children(self, q: int) -> Iterator[tuple[int, int]]:
        """Accepted (move, target) pairs of a state; infinite when a tail is live."""
        s = self.states[q]
        yield from s.finite_moves()
        if s.has_live_tail():
            m = s.window()
            while True:
                t = s.target(m)
                if t is not None:
                    yield m, t
                m += 1


# ---------------------------------------------------------------- constructors

def make(states: Sequence[dict], root: int | None) -> RegularTree:
    """Build from plain dicts ``{"explicit": {move: target}, "tail": {...}}``."""
    built = []
    for s in states:
        explicit = tuple(sorted((int(m), t) for m, t in s.get("explicit", {}).items()))
        tail = s.get("tail")
        if tail is None:
            built.append(State(explicit))
        else:
            period = tuple(tail["period"])
            if not period:
                raise ParseError("tail period must be non-empty")
            built.append(State(explicit, period, int(tail.get("from", 0))))
    tree = RegularTree(tuple(built), root)
    _validate(tree)
    return tree


def _validate(tree: RegularTree) -> None:
    k = len(tree.states)
    if tree.root is not None and not 0 <= tree.root < k:
        raise ParseError("root is not a state", root=tree.root)
    for s in tree.states:
        for t in [t for _, t in s.explicit] + list(s.tail_period or ()):
            if t is not None and not 0 <= t < k:
                raise ParseError("edge target is not a state", target=t)
        if any(m < 0 for m, _ in s.explicit) or s.tail_from < 0:
            raise ParseError("moves are naturals")


EMPTY_TREE = RegularTree((), None)


def empty() -> RegularTree:
    return EMPTY_TREE


def baire() -> RegularTree:
    return RegularTree((State((), (0,), 0),), 0)


def cantor() -> RegularTree:
    return RegularTree((State(((0, 0), (1, 0))),), 0)


def path(prefix: Sequence[int], cycle: Sequence[int]) -> RegularTree:
    """The single eventually periodic point ``prefix`` then ``cycle`` forever."""
    prefix, cycle = list(prefix), list(cycle)
    if not cycle:
        raise DomainError("a path needs a non-empty cycle")
    moves = prefix + cycle
    states = []
    for i, m in enumerate(moves):
        nxt = i + 1 if i + 1 < len(moves) else len(prefix)
        states.append(State(((m, nxt),)))
    return RegularTree(tuple(states), 0)


def constant_path(m: int) -> RegularTree:
    return path([], [m])


def bounded_length(k: int) -> RegularTree:
    """All sequences of length below ``k`` (a finite, unpruned tree)."""
    if k <= 0:
        return EMPTY_TREE
    states = [State((), (i + 1,), 0) for i in range(k - 1)] + [State()]
    return RegularTree(tuple(states), 0)


def finite_tree(nodes) -> RegularTree:
    """The tree whose nodes are exactly ``nodes`` (must be prefix closed)."""
    nodes = sorted({tuple(s) for s in nodes}, key=lambda s: (len(s), s))
    if not nodes:
        return EMPTY_TREE
    index = {s: i for i, s in enumerate(nodes)}
    if () not in index:
        raise DomainError("a non-empty tree must contain the empty sequence")
    edges: list[dict] = [dict() for _ in nodes]
    for s in nodes:
        if s:
            if s[:-1] not in index:
                raise DomainError("node set is not closed under prefixes", node=list(s))
            edges[index[s[:-1]]][s[-1]] = index[s]
    states = tuple(State(tuple(sorted(e.items()))) for e in edges)
    return RegularTree(states, index[()])


def _offset(t: RegularTree, off: int) -> list[State]:
    def sh(q):
        return None if q is None else q + off
    return [State(tuple((m, sh(q)) for m, q in s.explicit),
                  None if s.tail_period is None else tuple(sh(q) for q in s.tail_period),
                  s.tail_from) for s in t.states]


def graft(roots: Sequence[tuple[int, RegularTree]], chain: bool = False) -> RegularTree:
    """Put trees below new root states.

    Without ``chain`` one root state has move ``m`` into each listed tree.
    With ``chain`` the i-th listed tree hangs below ``0^i 1`` (its move is ignored).
    """
    states: list[State] = []
    entries: list[int | None] = []
    base = 1 if not chain else len(roots)
    for _, t in roots:
        if t.root is None:
            entries.append(None)
            continue
        off = base + len(states)
        states.extend(_offset(t, off))
        entries.append(t.root + off)
    if not chain:
        head = State(tuple(sorted((m, q) for (m, _), q in zip(roots, entries) if q is not None)))
        return prune(RegularTree((head,) + tuple(states), 0))
    heads = []
    for i, q in enumerate(entries):
        edges = []
        if i + 1 < len(entries):
            edges.append((0, i + 1))
        if q is not None:
            edges.append((1, q))
        heads.append(State(tuple(edges)))
    if not heads:
        return EMPTY_TREE
    return prune(RegularTree(tuple(heads) + tuple(states), 0))


def sum_tree(trees: Sequence[RegularTree]) -> RegularTree:
    """Closed set of the points <i> * x with x in tree i."""
    return graft(list(enumerate(trees)))


def zero_chain_tree(trees: Sequence[RegularTree]) -> RegularTree:
    """Closed set of the points 0^i 1 x with x in tree i."""
    return graft([(1, t) for t in trees], chain=True)


# ---------------------------------------------------------------- membership

def node_member_seq(t: RegularTree, seq: Sequence[int]) -> bool:
    return t.walk(seq) is not None


def node_member(t: RegularTree, code: int) -> bool:
    return node_member_seq(t, decode(code))


def point_member(t: RegularTree, prefix: Sequence[int], cycle: Sequence[int]) -> bool:
    """Whether the eventually periodic point ``prefix cycle cycle ...`` is admitted."""
    q = t.walk(prefix)
    seen = set()
    while q is not None:
        if q in seen:
            return True
        seen.add(q)
        q = _walk_from(t, q, cycle)
    return False


def _walk_from(t: RegularTree, q: int | None, seq: Sequence[int]) -> int | None:
    for n in seq:
        if q is None:
            return None
        q = t.states[q].target(n)
    return q


# ---------------------------------------------------------------- pruning

def live_states(t: RegularTree) -> set[int]:
    """States from which an infinite path starts (greatest fixpoint)."""
    live = set(range(len(t.states)))
    changed = True
    while changed:
        changed = False
        for q in list(live):
            if not (t.states[q].targets() & live):
                live.discard(q)
                changed = True
    return live


def _restrict(t: RegularTree, keep: set[int]) -> RegularTree:
    """Drop edges into states outside ``keep``, keep reachable part, renumber BFS."""

    def clean(s: State) -> State:
        explicit = tuple((m, q if q in keep else None) for m, q in s.explicit)
        period = s.tail_period
        if period is not None:
            period = tuple(q if q in keep else None for q in period)
            if all(q is None for q in period):
                period = None
        if period is None:
            explicit = tuple((m, q) for m, q in explicit if q is not None)
            return State(explicit)
        explicit = tuple((m, q) for m, q in explicit if q is not None or m >= s.tail_from)
        return State(explicit, period, s.tail_from)

    if t.root is None or t.root not in keep:
        return EMPTY_TREE
    cleaned = {q: clean(t.states[q]) for q in keep}
    order: dict[int, int] = {t.root: 0}
    queue = deque([t.root])
    while queue:
        q = queue.popleft()
        s = cleaned[q]
        succ = [x for _, x in s.explicit] + list(s.tail_period or ())
        for x in succ:
            if x is not None and x not in order:
                order[x] = len(order)
                queue.append(x)
    states = [None] * len(order)
    for q, i in order.items():
        s = cleaned[q]
        explicit = tuple((m, None if x is None else order[x]) for m, x in s.explicit)
        period = None if s.tail_period is None else tuple(None if x is None else order[x] for x in s.tail_period)
        states[i] = State(explicit, period, s.tail_from if period is not None else 0)
    return RegularTree(tuple(states), 0)


def prune(t: RegularTree) -> RegularTree:
    return _restrict(t, live_states(t))


def is_pruned(t: RegularTree) -> bool:
    return prune(t) == t


def is_fan(t: RegularTree) -> bool:
    t = prune(t)
    return all(not s.has_live_tail() for s in t.states)


def is_well_founded(t: RegularTree) -> bool:
    """No infinite path: the set denoted is empty."""
    return prune(t).root is None


# ---------------------------------------------------------------- products

def intersect(a: RegularTree, b: RegularTree) -> RegularTree:
    if a.root is None or b.root is None:
        return EMPTY_TREE
    index: dict[tuple[int, int], int] = {}
    built: list[State | None] = []
    queue = deque()

    def idx(x: int | None, y: int | None) -> int | None:
        if x is None or y is None:
            return None
        key = (x, y)
        if key not in index:
            index[key] = len(built)
            built.append(None)
            queue.append(key)
        return index[key]

    idx(a.root, b.root)
    while queue:
        x, y = queue.popleft()
        sx, sy = a.states[x], b.states[y]
        w = max(sx.window(), sy.window())
        explicit = tuple((m, idx(sx.target(m), sy.target(m))) for m in range(w))
        if sx.tail_period is not None and sy.tail_period is not None:
            c = lcm(len(sx.tail_period), len(sy.tail_period))
            period = tuple(idx(sx.target(m), sy.target(m)) for m in range(w, w + c))
            built[index[(x, y)]] = State(explicit, period, w)
        else:
            built[index[(x, y)]] = State(tuple(e for e in explicit if e[1] is not None))
    return prune(RegularTree(tuple(built), 0))


def intersect_all(trees: Sequence[RegularTree]) -> RegularTree:
    out = None
    for t in trees:
        out = t if out is None else intersect(out, t)
    if out is None:
        raise DomainError("intersection of no trees")
    return prune(out)


def union(a: RegularTree, b: RegularTree) -> RegularTree:
    """Union of two closed sets (product construction with optional sides)."""
    if a.root is None:
        return prune(b)
    if b.root is None:
        return prune(a)
    index: dict[tuple, int] = {}
    built: list = []
    queue = deque()

    def idx(x, y):
        if x is None and y is None:
            return None
        key = (x, y)
        if key not in index:
            index[key] = len(built)
            built.append(None)
            queue.append(key)
        return index[key]

    def tgt(tree, q, m):
        return None if q is None else tree.states[q].target(m)

    idx(a.root, b.root)
    while queue:
        x, y = queue.popleft()
        sx = a.states[x] if x is not None else State()
        sy = b.states[y] if y is not None else State()
        w = max(sx.window(), sy.window())
        explicit = tuple((m, idx(tgt(a, x, m), tgt(b, y, m))) for m in range(w))
        periods = [s.tail_period for s in (sx, sy) if s.tail_period is not None]
        if periods:
            c = lcm(*map(len, periods))
            period = tuple(idx(tgt(a, x, m), tgt(b, y, m)) for m in range(w, w + c))
            built[index[(x, y)]] = State(explicit, period, w)
        else:
            built[index[(x, y)]] = State(tuple(e for e in explicit if e[1] is not None))
    return prune(RegularTree(tuple(built), 0))


# ---------------------------------------------------------------- path analysis

def path_count(t: RegularTree) -> dict[int, int | str]:
    """Per state: 0 (no path), 1 (exactly one path) or "many"."""
    live = live_states(t)
    branching = set()
    for q in live:
        s = t.states[q]
        moves = [m for m, x in s.finite_moves() if x in live]
        tail_live = s.tail_period is not None and any(x in live for x in s.tail_period if x is not None)
        if len(moves) >= 2 or tail_live:
            branching.add(q)
    many = set(branching)
    changed = True
    while changed:
        changed = False
        for q in live - many:
            if t.states[q].targets() & many:
                many.add(q)
                changed = True
    return {q: ("many" if q in many else 1 if q in live else 0) for q in range(len(t.states))}


def derived(t: RegularTree) -> RegularTree:
    """Remove isolated points: keep the states from which two paths start."""
    t = prune(t)
    counts = path_count(t)
    return prune(_restrict(t, {q for q, c in counts.items() if c == "many"}))


@lru_cache(maxsize=None)
def der(sigma: st.Stump, t: RegularTree) -> RegularTree:
    t = prune(t)
    if sigma.is_empty:
        return t
    parts = [der(c, t) for c in sigma.children()]
    return derived(intersect_all(parts))


def subset_nodes(a: RegularTree, b: RegularTree) -> bool:
    """Every node of pruned ``a`` is a node of pruned ``b``."""
    return intersect(a, b) == prune(a)


def same_set(a: RegularTree, b: RegularTree) -> bool:
    return subset_nodes(a, b) and subset_nodes(b, a)


# ---------------------------------------------------------------- Cantor-Bendixson generators

FAMILIES = ("cb", "cbstar", "cbdagger")


class _Builder:
    def __init__(self):
        self.states: list[dict] = []

    def new(self) -> int:
        self.states.append({})
        return len(self.states) - 1

    def tree(self, root: int | None) -> RegularTree:
        if root is None:
            return EMPTY_TREE
        return prune(make([{"explicit": e} for e in self.states], root))


def _cycle_states(b: _Builder, sigma: st.Stump, inner) -> int:
    """States R_n: move 0 goes to R_{n+1}, move 1 enters the closure for child n."""
    p, c = len(sigma.prefix), len(sigma.cycle)
    rs = [b.new() for _ in range(p + c)]
    for n, q in enumerate(rs):
        b.states[q][0] = rs[n + 1] if n + 1 < p + c else rs[p]
        target = inner(sigma.child(n))
        if target is not None:
            b.states[q][1] = target
    return rs[0]


def closure_tree(family: str, sigma: st.Stump) -> RegularTree:
    if family not in FAMILIES:
        raise DomainError("unknown family", family=family)
    b = _Builder()
    memo: dict[int, int | None] = {}
    zero = []

    def z() -> int:
        if not zero:
            q = b.new()
            b.states[q][0] = q
            zero.append(q)
        return zero[0]

    def cb(s: st.Stump) -> int | None:
        if id(s) not in memo:
            memo[id(s)] = None if s.is_empty else _cycle_states(b, s, cb)
        return memo[id(s)]

    def cbstar(s: st.Stump) -> int:
        if id(s) not in memo:
            memo[id(s)] = z() if s.is_empty else _cycle_states(b, s, cbstar)
        return memo[id(s)]

    def cbdagger(s: st.Stump) -> int:
        if id(s) not in memo:
            a = b.new()
            memo[id(s)] = a
            b.states[a][0] = a
            b.states[a][1] = z() if s.is_empty else _cycle_states(b, s, cbdagger)
        return memo[id(s)]

    root = {"cb": cb, "cbstar": cbstar, "cbdagger": cbdagger}[family](sigma)
    return b.tree(root)


def block_point(blocks: Sequence[int]) -> tuple[int, ...]:
    """The finite part 0^b0 1 0^b1 1 ... of a point that then continues with 0s."""
    out: list[int] = []
    for k in blocks:
        out.extend([0] * k)
        out.append(1)
    return tuple(out)


def enumerate_family(family: str, sigma: st.Stump, index: int) -> tuple[int, ...] | None:
    """Prefix of the ``index``-th enumerated point (continued by 0 forever).

    Index ``i`` proposes the point built from the blocks ``decode(i)``; when
    that point is not in the set the enumeration falls back to the zero
    point.  Returns None when the set is empty.
    """
    closure = closure_tree(family, sigma)
    if closure.root is None:
        return None
    candidate = block_point(decode(index))
    if point_member(closure, candidate, (0,)):
        return candidate
    return ()


# ---------------------------------------------------------------- fan theorem and paths

def bar_extract_seqs(fan: RegularTree, in_bar: Callable[[tuple[int, ...]], bool],
                     depth_limit: int) -> list[tuple[int, ...]]:
    fan = prune(fan)
    if not is_fan(fan):
        raise DomainError("bar extraction needs a fan")
    if fan.root is None:
        return []
    found: list[tuple[int, ...]] = []
    frontier = [((), fan.root)]
    depth = 0
    while frontier:
        if depth > depth_limit:
            raise FuelExhausted("frontier not emptied within the depth limit",
                                depth_limit=depth_limit)
        nxt = []
        for s, q in frontier:
            if in_bar(s):
                found.append(s)
            else:
                nxt.extend((s + (m,), x) for m, x in fan.children(q))
        frontier = nxt
        depth += 1
    _verify_thin_bar(fan, found)
    return found


def _verify_thin_bar(fan: RegularTree, bar: list[tuple[int, ...]]) -> None:
    for i, s in enumerate(bar):
        for u in bar[i + 1:]:
            if not incompatible_seq(s, u):
                raise DomainError("extracted bar is not thin", first=list(s), second=list(u))
    depth = max((len(s) for s in bar), default=0)
    for node in fan_nodes(fan, depth):
        hits = sum(1 for s in bar if is_prefix_seq(s, node))
        if hits != 1:
            raise DomainError("extracted bar does not cover", node=list(node), hits=hits)


def fan_nodes(fan: RegularTree, depth: int) -> list[tuple[int, ...]]:
    """All nodes of the given length in a fan."""
    fan = prune(fan)
    if fan.root is None:
        return []
    layer = [((), fan.root)]
    for _ in range(depth):
        layer = [(s + (m,), x) for s, q in layer for m, x in fan.children(q)]
    return [s for s, _ in layer]


def least_live_move(t: RegularTree, q: int) -> tuple[int, int]:
    return next(iter(t.children(q)))


def find_infinite_path(t: RegularTree) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """The leftmost path as (prefix, cycle), or None for a well-founded tree."""
    t = prune(t)
    if t.root is None:
        return None
    moves: list[int] = []
    visited: dict[int, int] = {}
    q = t.root
    while q not in visited:
        visited[q] = len(moves)
        m, q = least_live_move(t, q)
        moves.append(m)
    start = visited[q]
    return tuple(moves[:start]), tuple(moves[start:])


def descending_chain(prefix: Sequence[int], cycle: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """n -> the first n values of the point: a strictly KB-descending sequence."""
    out: list[int] = []
    yield ()
    i = 0
    while True:
        out.append(prefix[i] if i < len(prefix) else cycle[(i - len(prefix)) % len(cycle)])
        yield tuple(out)
        i += 1


# ---------------------------------------------------------------- binary bars

@lru_cache(maxsize=None)
def bar01_seqs(n: int) -> tuple[tuple[int, ...], ...]:
    if n < 0:
        raise DomainError("bar01 needs a natural", n=n)
    if n == 0:
        return ((),)
    prev = bar01_seqs(n - 1)
    return (prev[0] + (0,), prev[0] + (1,)) + prev[1:]


def bar01(n: int) -> list[int]:
    return [encode(s) for s in bar01_seqs(n)]


# ---------------------------------------------------------------- JSON

def to_json(t: RegularTree) -> dict:
    states = []
    for i, s in enumerate(t.states):
        edges: dict = {"explicit": {str(m): q for m, q in s.explicit}}
        if s.tail_period is not None:
            edges["tail"] = {"period": list(s.tail_period), "from": s.tail_from}
        states.append({"id": i, "edges": edges})
    return {"root": t.root, "states": states}


def from_json(doc) -> RegularTree:
    if isinstance(doc, str):
        named = {"empty": empty, "baire": baire, "cantor": cantor}
        if doc in named:
            return named[doc]()
        raise ParseError("unknown tree name", name=doc)
    if not isinstance(doc, dict) or "states" not in doc:
        raise ParseError("tree must be an object with states and root")
    raw = doc["states"]
    ids = [s.get("id", i) for i, s in enumerate(raw)]
    pos = {sid: i for i, sid in enumerate(ids)}
    if len(pos) != len(ids):
        raise ParseError("duplicate state id")

    def ref(x):
        if x is None:
            return None
        if x not in pos:
            raise ParseError("edge target is not a state", target=x)
        return pos[x]

    states = []
    try:
        for s in raw:
            edges = s.get("edges", {})
            explicit = {int(m): ref(q) for m, q in edges.get("explicit", {}).items()}
            entry: dict = {"explicit": explicit}
            if edges.get("tail") is not None:
                tail = edges["tail"]
                entry["tail"] = {"period": [ref(q) for q in tail["period"]], "from": int(tail.get("from", 0))}
            states.append(entry)
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise ParseError("malformed tree document", detail=str(exc)) from exc
    root = doc.get("root")
    return make(states, None if root is None else ref(root))
