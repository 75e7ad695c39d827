"""Independent reference computations used to cross-check the package.

Nothing here calls the functions it is used to check.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from bairespace import stump as st


# ---------------------------------------------------------------- pairing by enumeration

@lru_cache(maxsize=None)
def diagonal_table(limit: int) -> tuple[dict, dict]:
    """Walk the diagonals m+n = 0, 1, 2, ... numbering pairs from 1."""
    fwd, back = {}, {}
    k = 1
    d = 0
    while k < limit:
        for n in range(d + 1):
            fwd[(d - n, n)] = k
            back[k] = (d - n, n)
            k += 1
        d += 1
    return fwd, back


TABLE = 10 ** 5 + 1


def ref_pair(m: int, n: int) -> int:
    """Pairs with code up to 10^5 only."""
    fwd, _ = diagonal_table(TABLE)
    return fwd[(m, n)]


def ref_encode(xs) -> int:
    xs = list(xs)
    return 0 if not xs else ref_pair(xs[0], ref_encode(xs[1:]))


def ref_decode(code: int) -> tuple:
    _, back = diagonal_table(TABLE)
    out = []
    while code:
        head, code = back[code]
        out.append(head)
    return tuple(out)


# ---------------------------------------------------------------- KB order via an end marker

def ref_kb(s, t) -> int:
    """-1, 0, 1 by lexicographic order after appending a marker above every natural."""
    end = float("inf")
    a, b = list(s) + [end], list(t) + [end]
    return (a > b) - (a < b)


# ---------------------------------------------------------------- stumps by brute force

def nodes_of(s: st.Stump, top: int = 6) -> list[tuple]:
    """Admitted nodes of a finite-branching stump with entries below ``top``."""
    out = []
    stack = [()]
    while stack:
        u = stack.pop()
        if st.code_at(s, u) != 0:
            continue
        out.append(u)
        stack.extend(u + (m,) for m in range(top))
    return out


def proper_prefix(u, v) -> bool:
    return len(u) < len(v) and tuple(v[: len(u)]) == tuple(u)


def brute_embeds(s: st.Stump, t: st.Stump, top: int = 6) -> bool:
    """Search every assignment of target nodes to source nodes, parents first."""
    source = sorted(nodes_of(s, top), key=len)
    target = nodes_of(t, top)
    if not source:
        return True

    def go(i: int, table: dict) -> bool:
        if i == len(source):
            return True
        u = source[i]
        for v in target:
            if u and not proper_prefix(table[u[:-1]], v):
                continue
            table[u] = v
            if go(i + 1, table):
                return True
        table.pop(u, None)
        return False

    return go(0, {})


def below_star(u, v) -> bool:
    return len(u) == len(v) and all(a <= b for a, b in zip(u, v))


def hull_law_holds(s: st.Stump, h: st.Stump, depth: int, top: int) -> bool:
    """h excludes t exactly when s excludes some u pointwise below t."""
    for k in range(depth + 1):
        for t in product(range(top + 1), repeat=k):
            below = any(st.code_at(s, u) == 1
                        for u in product(*(range(x + 1) for x in t)))
            if (st.code_at(h, t) == 1) != below:
                return False
    return True


# ---------------------------------------------------------------- trees by brute force

def tree_nodes(member, length: int, top: int = 2) -> list[tuple]:
    """All nodes of the given length with entries below ``top``, by exhaustive search."""
    return [s for s in product(range(top), repeat=length)
            if all(member(s[:k]) for k in range(length + 1))]
