"""Depth-bounded membership checks for the named subsets of Baire space.

Every check returns a ``Verdict`` with one of three outcomes.  ``holds`` and
``fails`` are backed by evidence (a witness, or a counterexample found at some
depth); ``fuel-exhausted`` means the bounded search ran out and says nothing
about membership.  ``exact`` marks verdicts that are decided outright rather
than up to the reported depth, which happens for eventually periodic points
and for codes that are characteristic functions of regular trees.

Codes of closed sets are read with the usual convention: ``a`` admits ``s``
when ``a`` is 0 at every initial part of ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from . import trees as tr
from .errors import DomainError, FuelExhausted
from .functional import EvPeriodic, Interleave, Merge, StreamSpec, TreeChar
from .seqcode import Order, incompatible_seq, is_prefix_seq, kb_compare_seq

HOLDS, FAILS, EXHAUSTED = "holds", "fails", "fuel-exhausted"


@dataclass
class Verdict:
    status: str
    depth: int | None = None
    exact: bool = False
    witness: object = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def exhausted(self) -> bool:
        return self.status == EXHAUSTED

    def to_json(self) -> dict:
        out = {"status": self.status, "exact": self.exact}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def _plain(x):
    if isinstance(x, StreamSpec):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return repr(x)


def holds(depth=None, exact=False, witness=None, note="") -> Verdict:
    return Verdict(HOLDS, depth, exact, witness, note)


def fails(depth=None, exact=False, witness=None, note="") -> Verdict:
    return Verdict(FAILS, depth, exact, witness, note)


def exhausted(depth=None, note="") -> Verdict:
    return Verdict(EXHAUSTED, depth, False, None, note)


# ---------------------------------------------------------------- shared helpers

def is_ev(a: StreamSpec) -> bool:
    return isinstance(a, EvPeriodic)


def ev_values(a: EvPeriodic) -> tuple[int, ...]:
    return a.pre + a.cycle


def first_nonzero(a: StreamSpec, start: int, stop: int) -> int | None:
    for n in range(start, stop):
        if a.at(n) != 0:
            return n
    return None


def first_forbidden(code: StreamSpec, point: StreamSpec, depth: int) -> int | None:
    """Least n <= depth with ``code`` non-zero at the first n values of ``point``."""
    seq: list[int] = []
    for n in range(depth + 1):
        if code.at_seq(tuple(seq)):
            return n
        if n < depth:
            seq.append(point.at(n))
    return None


def admits_seq(code: StreamSpec, s: Sequence[int]) -> bool:
    s = tuple(s)
    return all(code.at_seq(s[:k]) == 0 for k in range(len(s) + 1))


def admitted_layer(code: StreamSpec, length: int, moves: int,
                   start: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Admitted extensions of ``start`` of the given length, entries below ``moves``."""
    start = tuple(start)
    if not admits_seq(code, start):
        return
    stack = [start]
    while stack:
        s = stack.pop()
        if len(s) >= length:
            yield s
            continue
        for m in reversed(range(moves)):
            t = s + (m,)
            if code.at_seq(t) == 0:
                stack.append(t)


def _exact_path(code: StreamSpec, point: StreamSpec) -> bool | None:
    """Exact admission of a point by a tree code, when both are finitely presented."""
    if isinstance(code, TreeChar) and is_ev(point):
        return tr.point_member(code.tree, point.pre, point.cycle)
    return None


def admits_point(code: StreamSpec, point: StreamSpec, depth: int) -> Verdict:
    exact = _exact_path(code, point)
    if exact is not None:
        if exact:
            return holds(depth, True, point)
        return fails(first_forbidden(code, point, 10 * depth + 100), True)
    bad = first_forbidden(code, point, depth)
    if bad is None:
        return holds(depth, False, point)
    return fails(bad, True, note="forbidden initial part")


def ev_interleave(a: EvPeriodic, b: EvPeriodic) -> EvPeriodic:
    """The interleaving of two eventually periodic points, again eventually periodic."""
    from math import lcm
    p = max(len(a.pre), len(b.pre))
    c = lcm(len(a.cycle), len(b.cycle))
    pre = [v for i in range(p) for v in (a.at(i), b.at(i))]
    cyc = [v for i in range(p, p + c) for v in (a.at(i), b.at(i))]
    return EvPeriodic(pre, cyc)


def pair_point(a: StreamSpec, b: StreamSpec) -> StreamSpec:
    if is_ev(a) and is_ev(b):
        return ev_interleave(a, b)
    return Interleave(a, b)


def column(a: StreamSpec, m: int) -> StreamSpec:
    if isinstance(a, Merge):
        return a.column(m)
    from .functional import Subseq
    return Subseq(a, m)


def zero_to(a: StreamSpec, depth: int) -> tuple[bool, int | None, bool]:
    """(zero so far, first non-zero index, decided exactly)."""
    if is_ev(a):
        vals = ev_values(a)
        bad = next((i for i, v in enumerate(vals) if v), None)
        return bad is None, bad, True
    bad = first_nonzero(a, 0, depth)
    return bad is None, bad, bad is not None


# ---------------------------------------------------------------- point sets

def check_e1(a, fuel, witness=None, **_):
    if witness is not None:
        return holds(exact=True, witness=witness) if a.at(witness) == 0 else fails(witness, True)
    if is_ev(a):
        hit = next((i for i, v in enumerate(ev_values(a)) if v == 0), None)
        return holds(exact=True, witness=hit) if hit is not None else fails(exact=True)
    for n in range(fuel):
        if a.at(n) == 0:
            return holds(exact=True, witness=n)
    return exhausted(fuel, "no zero found")


def check_a1(a, fuel, **_):
    ok, bad, exact = zero_to(a, fuel)
    if ok:
        return holds(fuel, exact)
    return fails(bad, True, witness=bad)


def _column_zero(a, m, fuel):
    ok, bad, exact = zero_to(column(a, m), fuel)
    return ok, bad, exact


def check_e2(a, fuel, witness=None, columns=None, **_):
    cands = [witness] if witness is not None else range(columns or fuel)
    for m in cands:
        ok, _, exact = _column_zero(a, m, fuel)
        if ok:
            return holds(fuel, exact and witness is not None, witness=m)
    return exhausted(fuel, "no zero column found")


def _apart_from_zero(col, fuel, hint=None):
    if hint is not None and col.at(hint) != 0:
        return hint
    return first_nonzero(col, 0, fuel)


def check_a2(a, fuel, witness=None, columns=None, **_):
    """Every column has a non-zero value; ``witness`` maps a column to such a position."""
    for m in range(columns or min(fuel, 32)):
        hint = witness(m) if callable(witness) else None
        p = _apart_from_zero(column(a, m), fuel, hint)
        if p is None:
            ok, _, exact = _column_zero(a, m, fuel)
            if exact and ok:
                return fails(m, True, witness=m, note="a column is zero")
            return exhausted(fuel, f"column {m} not seen apart from 0")
    return holds(columns or min(fuel, 32))


def check_d2a1(a, fuel, witness=None, **_):
    for i in ([witness] if witness is not None else [0, 1]):
        ok, _, exact = _column_zero(a, i, fuel)
        if ok:
            return holds(fuel, exact, witness=i)
    p0 = first_nonzero(column(a, 0), 0, fuel)
    p1 = first_nonzero(column(a, 1), 0, fuel)
    if p0 is not None and p1 is not None:
        return fails(max(p0, p1), True, witness=(p0, p1))
    return exhausted(fuel)


def check_dbang(a, fuel, witness=None, **_):
    """Exactly one of the first two columns is zero, the other apart from zero."""
    options = [witness] if witness is not None else [(0, None), (1, None)]
    for i, hint in options:
        ok, _, exact = _column_zero(a, i, fuel)
        p = _apart_from_zero(column(a, 1 - i), fuel, hint)
        if ok and p is not None:
            return holds(fuel, exact, witness=(i, p))
    p0 = first_nonzero(column(a, 0), 0, fuel)
    p1 = first_nonzero(column(a, 1), 0, fuel)
    if p0 is not None and p1 is not None:
        return fails(max(p0, p1), True, note="both columns apart from zero")
    return exhausted(fuel)


def check_e2bang(a, fuel, witness=None, columns=None, counter=None, **_):
    """One zero column, every other column apart from zero (checked below ``columns``).

    ``witness`` is ``(n, apart)`` with ``apart(m)`` a position where column m
    is non-zero; ``counter`` is a pair of distinct columns both zero.
    """
    if counter is not None:
        m1, m2 = counter
        z1, _, e1 = _column_zero(a, m1, fuel)
        z2, _, e2 = _column_zero(a, m2, fuel)
        if m1 != m2 and z1 and z2:
            return fails(fuel, e1 and e2, witness=counter, note="two zero columns")
        return exhausted(fuel, "counterexample not confirmed")
    if witness is None:
        return exhausted(fuel, "no witness column given")
    n, apart = witness
    ok, _, exact = _column_zero(a, n, fuel)
    if not ok:
        return fails(fuel, True, note="witness column is not zero")
    for m in range(columns or min(fuel, 32)):
        if m == n:
            continue
        hint = apart(m) if callable(apart) else None
        if _apart_from_zero(column(a, m), fuel, hint) is None:
            return exhausted(fuel, f"column {m} not seen apart from 0")
    return holds(fuel, False, witness=n)


def check_fin(a, fuel, witness=None, **_):
    """Zero from some position on; ``witness`` is the bound m (zero after m)."""
    if is_ev(a):
        if any(a.cycle):
            return fails(exact=True, note="cycle has a non-zero value")
        m = witness if witness is not None else len(a.pre)
        bad = first_nonzero(a, m + 1, len(a.pre) + 1)
        if bad is not None:
            return fails(bad, True, note="bound too small")
        return holds(exact=True, witness=m)
    if witness is None:
        return exhausted(fuel, "no bound given")
    bad = first_nonzero(a, witness + 1, fuel)
    if bad is not None:
        return fails(bad, True, note="non-zero past the bound")
    return holds(fuel, False, witness=witness)


def check_inf(a, fuel, witness=None, counter=None, **_):
    """For every m some n > m has value 1."""
    if is_ev(a):
        if 1 in a.cycle:
            return holds(exact=True)
        return fails(exact=True, note="cycle has no 1")
    for m in range(min(fuel, 64)):
        hint = witness(m) if callable(witness) else None
        if hint is not None and hint > m and a.at(hint) == 1:
            continue
        if not any(a.at(n) == 1 for n in range(m + 1, m + 1 + fuel)):
            return exhausted(fuel, f"no 1 found after {m}")
    return holds(min(fuel, 64))


def check_almost_star_fin(a, fuel, witness=None, **_):
    """Every strictly increasing index sequence meets a 0.

    Decided exactly for eventually periodic binary points (the cycle must be
    all 0); otherwise a Fin bound is accepted as evidence.
    """
    if is_ev(a):
        if any(a.cycle):
            return fails(exact=True, note="the cycle gives an index sequence avoiding 0")
        return holds(exact=True)
    v = check_fin(a, fuel, witness)
    if v.holds:
        v.note = "Fin bound"
    return v if not v.fails else exhausted(fuel, "Fin bound refuted; no verdict")


# ---------------------------------------------------------------- codes of closed sets

def check_e11(code, fuel, witness=None, moves=None, complete=False, **_):
    """The code admits an infinite path; ``witness`` is such a path."""
    if witness is not None:
        v = admits_point(code, witness, fuel)
        if v.holds:
            v.witness = witness
            return v
        return exhausted(fuel, "offered path is forbidden") if not v.exact else \
            exhausted(v.depth, "offered path is forbidden")
    if isinstance(code, TreeChar):
        found = tr.find_infinite_path(code.tree)
        if found is None:
            return fails(exact=True, note="no infinite path")
        return holds(exact=True, witness=EvPeriodic(*found))
    layer = next(admitted_layer(code, fuel, moves or 3), None)
    if layer is not None:
        return holds(fuel, False, witness=layer)
    if complete:
        return fails(fuel, False, note="no admitted node at this depth")
    return exhausted(fuel, "no admitted node with small entries")


def check_a11(code, fuel, counter=None, moves=None, complete=False, **_):
    """Every path is forbidden; ``counter`` is an admitted path refuting this."""
    if counter is not None:
        v = admits_point(code, counter, fuel)
        if v.holds:
            return fails(fuel, v.exact, witness=counter, note="admitted path")
        return exhausted(fuel, "offered counterexample is forbidden")
    if isinstance(code, TreeChar):
        found = tr.find_infinite_path(code.tree)
        if found is None:
            return holds(exact=True)
        return fails(exact=True, witness=EvPeriodic(*found))
    if next(admitted_layer(code, fuel, moves or 3), None) is None:
        return holds(fuel, complete, note=f"no admitted node of length {fuel}")
    return exhausted(fuel, "admitted nodes at full depth")


def check_pif(code, fuel, witness=None, **_):
    """An infinite strictly KB-decreasing sequence of admitted nodes.

    ``witness`` is a path; its initial parts form the sequence.
    """
    if witness is None:
        v = check_e11(code, fuel)
        if not v.holds or not isinstance(v.witness, StreamSpec):
            return v
        witness = v.witness
    chain = [witness.prefix(n) for n in range(fuel + 1)]
    for a, b in zip(chain, chain[1:]):
        if kb_compare_seq(b, a) is not Order.LESS:
            return fails(len(a), True, note="not KB-decreasing")
    for s in chain:
        if not admits_seq(code, s):
            return exhausted(len(s), "chain member forbidden")
    return holds(fuel, False, witness=witness)


def check_share(code, fuel, witness=None, tree=None, **_):
    """The code admits a point of the closed set given by ``tree``."""
    tree = tr.cantor() if tree is None else tree
    if witness is None:
        if isinstance(code, TreeChar):
            found = tr.find_infinite_path(tr.intersect(code.tree, tree))
            if found is None:
                return fails(exact=True, note="no shared point")
            return holds(exact=True, witness=EvPeriodic(*found))
        return exhausted(fuel, "no witness offered")
    if is_ev(witness):
        if not tr.point_member(tree, witness.pre, witness.cycle):
            return exhausted(fuel, "witness outside the set")
        inside_exact = True
    else:
        if not tr.node_member_seq(tree, witness.prefix(fuel)):
            return exhausted(fuel, "witness outside the set")
        inside_exact = False
    v = admits_point(code, witness, fuel)
    if not v.holds:
        return exhausted(v.depth, "witness forbidden by the code")
    return holds(fuel, v.exact and inside_exact, witness=witness)


def check_member(point, fuel, tree=None, **_):
    """The point lies in the closed set given by ``tree``."""
    if is_ev(point):
        ok = tr.point_member(tree, point.pre, point.cycle)
        return holds(exact=True) if ok else fails(exact=True)
    s = point.prefix(fuel)
    for n in range(fuel + 1):
        if not tr.node_member_seq(tree, s[:n]):
            return fails(n, True)
    return holds(fuel)


def check_e11bang(code, fuel, witness=None, counter=None, moves=None, **_):
    """Exactly one admitted path.

    ``witness`` is the path; uniqueness is checked over admitted nodes with
    entries below ``moves``.  ``counter`` is two admitted paths that are apart.
    """
    if counter is not None:
        p, q = counter
        vp, vq = admits_point(code, p, fuel), admits_point(code, q, fuel)
        i = next((n for n in range(fuel) if p.at(n) != q.at(n)), None)
        if vp.holds and vq.holds and i is not None:
            return fails(fuel, vp.exact and vq.exact, witness=i, note="two admitted paths")
        return exhausted(fuel, "counterexample not confirmed")
    if witness is None:
        return exhausted(fuel, "no witness path")
    v = admits_point(code, witness, fuel)
    if not v.holds:
        return exhausted(v.depth, "witness forbidden")
    if isinstance(code, TreeChar):
        counts = tr.path_count(tr.prune(code.tree))
        root = tr.prune(code.tree).root
        if root is not None and counts.get(root) == 1:
            return holds(exact=True, witness=witness)
        return fails(exact=True, note="more than one path")
    target = witness.prefix(fuel)
    for s in admitted_layer(code, fuel, moves or 3):
        if s != target:
            return exhausted(fuel, "another admitted node at full depth")
    return holds(fuel, False, witness=witness)


def is_spread_to(code: StreamSpec, fuel: int, nodes: Sequence[Sequence[int]], moves: int) -> bool:
    """Each listed node (admitted) has an admitted child below ``moves``."""
    return all(any(code.at_seq(tuple(s) + (m,)) == 0 for m in range(moves)) for s in nodes)


def check_sink(code, fuel, inner="Fin", witness=None, counter=None, moves=2, **_):
    """Every admitted point lies in ``inner`` (Fin or AlmostStarFin).

    ``witness`` is a uniform certificate: for Fin the bound after which all
    admitted nodes are 0; for AlmostStarFin the same bound.  ``counter`` is
    an admitted point outside ``inner``.
    """
    if counter is not None:
        v = admits_point(code, counter, fuel)
        inner_check = CHECKERS[inner](counter, fuel)
        if v.holds and inner_check.fails:
            return fails(fuel, v.exact and inner_check.exact, witness=counter,
                         note=f"admitted point outside {inner}")
        return exhausted(fuel, "counterexample not confirmed")
    if witness is None:
        return exhausted(fuel, "no certificate")
    if code.at_seq(()) != 0:
        return exhausted(0, "not a spread law: root forbidden")
    layer = list(admitted_layer(code, fuel, moves))
    if not layer:
        return exhausted(fuel, "no admitted node at full depth")
    for s in layer:
        if any(s[witness + 1:]):
            return fails(fuel, False, witness=s, note="admitted node non-zero past the bound")
        if code.at_seq(s + (0,)) != 0:
            return exhausted(fuel, "not seen to be a spread law")
    return holds(fuel, False, witness=witness)


def check_unc(code, fuel, witness=None, **_):
    """A spread law admitting a perfect set.

    ``witness`` maps binary tuples to sequences: a perfect embedding; checked
    on all binary tuples of length at most ``fuel``.
    """
    if code.at_seq(()) != 0:
        return fails(0, True, note="root forbidden")
    if witness is None:
        return exhausted(fuel, "no perfect embedding offered")
    for d in range(fuel + 1):
        for c in product((0, 1), repeat=d):
            node = tuple(witness(c))
            if not admits_seq(code, node):
                return exhausted(d, "embedded node forbidden")
            if code.at_seq(node + (0,)) != 0 and d < fuel:
                return exhausted(d, "not seen to be a spread law")
            if d < fuel:
                a, b = tuple(witness(c + (0,))), tuple(witness(c + (1,)))
                if not (is_prefix_seq(node, a) and is_prefix_seq(node, b)
                        and len(a) > len(node) and len(b) > len(node)):
                    return exhausted(d, "embedding not monotone")
                if not incompatible_seq(a, b):
                    return exhausted(d, "children not incompatible")
    return holds(fuel, False, witness="perfect embedding")


# ---------------------------------------------------------------- projections

def check_analytic(point, fuel, code=None, witness=None, **_):
    """The point has a partner ``witness`` with the pair admitted by ``code``."""
    if witness is None:
        return exhausted(fuel, "no partner offered")
    v = admits_point(code, pair_point(point, witness), 2 * fuel)
    if v.holds:
        return holds(fuel, v.exact, witness=witness)
    return exhausted(v.depth, "partner rejected")


def check_coanalytic(point, fuel, code=None, counter=None, **_):
    """Every partner leaves the open set ``code``; ``counter`` is a partner staying out."""
    if counter is None:
        return exhausted(fuel, "universal claims need a counterexample or a proof")
    v = admits_point(code, pair_point(point, counter), 2 * fuel)
    if v.holds:
        return fails(fuel, v.exact, witness=counter, note="partner avoids the open set")
    return exhausted(v.depth, "counterexample rejected")


def check_equal(point, fuel, target=None, **_):
    """The point agrees with ``target`` (used for images and preimages)."""
    for n in range(fuel):
        if point.at(n) != target.at(n):
            return fails(n, True, witness=n)
    return holds(fuel)


CHECKERS: dict[str, Callable[..., Verdict]] = {
    "E1": check_e1,
    "A1": check_a1,
    "E2": check_e2,
    "A2": check_a2,
    "D2A1": check_d2a1,
    "DbangA1A1": check_dbang,
    "E2bang": check_e2bang,
    "E11": check_e11,
    "A11": check_a11,
    "PIF": check_pif,
    "WF": check_a11,
    "Share": check_share,
    "Sink": check_sink,
    "Fin": check_fin,
    "Inf": check_inf,
    "AlmostStarFin": check_almost_star_fin,
    "UNC": check_unc,
    "E11bang": check_e11bang,
    "Member": check_member,
    "Analytic": check_analytic,
    "Coanalytic": check_coanalytic,
    "Equal": check_equal,
}


def check_membership(name: str, point: StreamSpec, fuel: int, **params) -> Verdict:
    """Run the named checker; fuel exhaustion inside evaluation becomes a verdict."""
    if name not in CHECKERS:
        raise DomainError("unknown named set", name=name, known=sorted(CHECKERS))
    if fuel < 0:
        raise DomainError("fuel must be a natural", fuel=fuel)
    try:
        return CHECKERS[name](point, fuel, **params)
    except FuelExhausted as exc:
        return exhausted(fuel, exc.message)


def disjunction_counter(alpha: StreamSpec, m: int, n: int) -> int:
    """How many j < m have column j of ``alpha`` zero at every 0^i with i < n."""
    return sum(1 for j in range(m)
               if all(alpha.at_seq((j,) + (0,) * i) == 0 for i in range(n)))
