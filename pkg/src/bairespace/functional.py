"""Points of Baire space with finite descriptions, and coded functionals.

Every stream answers ``at(n)`` (value at a natural) and ``at_seq(s)`` (value
at the code of the sequence ``s``).  Streams used as codes of trees or
functionals are mostly queried through ``at_seq``, because codes of long
sequences are astronomically large.

A code ``g`` of a function from points to naturals fires at a point ``a``
when ``g`` is non-zero at some initial part of ``a``; the first non-zero value
``p + 1`` gives the result ``p``.  A code of a function from points to points
is read through its subsequences: output ``n`` uses the code ``g^n``.

``Functional`` is a code given by a rule: a Python function of an output
position and an oracle for the input.  Its value at ``<n> * u`` is ``v + 1``
when the rule returns ``v`` using only the values listed in ``u``, and 0
when it needs more.  Rules are registered by name so that functionals stay
serialisable.
"""
from __future__ import annotations

import os
import threading
from typing import Callable, Sequence

from . import trees as tr
from .errors import DomainError, FuelExhausted, ParseError
from .seqcode import decode, encode, pair, unpair

DEFAULT_FUEL = int(os.environ.get("BAIRESPACE_FUEL", "10000"))


class Undetermined(Exception):
    """A rule asked for a value beyond the known initial part of its input."""


def encode_below(s: Sequence[int], bound: int) -> int | None:
    """``encode(s)`` when it is below ``bound``, else None (never builds huge codes)."""
    code = 0
    for a in reversed(s):
        code = pair(a, code)
        if code >= bound:
            return None
    return code


class Position:
    """An output index, known as a natural, as a decoded sequence, or both."""

    __slots__ = ("_nat", "_seq")

    def __init__(self, nat: int | None = None, seq: Sequence[int] | None = None):
        if nat is None and seq is None:
            raise DomainError("a position needs a natural or a sequence")
        self._nat = nat
        self._seq = None if seq is None else tuple(seq)

    @property
    def nat(self) -> int:
        if self._nat is None:
            self._nat = encode(self._seq)
        return self._nat

    @property
    def seq(self) -> tuple[int, ...]:
        if self._seq is None:
            self._seq = decode(self._nat)
        return self._seq


# ---------------------------------------------------------------- oracles

class PrefixOracle:
    """Answers queries from a finite initial part; beyond it, Undetermined."""

    def __init__(self, known: Sequence[int]):
        self.known = tuple(known)

    def at(self, i: int) -> int:
        if i < len(self.known):
            return self.known[i]
        raise Undetermined(i)

    def at_seq(self, s: Sequence[int]) -> int:
        c = encode_below(s, len(self.known))
        if c is None:
            raise Undetermined(s)
        return self.known[c]

    def sub(self, m: int) -> "SubOracle":
        return SubOracle(self, m)


class StreamOracle:
    """Answers queries from a whole stream, counting distinct queries against fuel."""

    def __init__(self, stream: "StreamSpec", fuel: int):
        self.stream = stream
        self.fuel = fuel
        self.asked: set = set()

    def _charge(self, key) -> None:
        if key not in self.asked:
            self.asked.add(key)
            if len(self.asked) > self.fuel:
                raise FuelExhausted("query budget used up", fuel=self.fuel)

    def at(self, i: int) -> int:
        self._charge(("n", i))
        return self.stream.at(i)

    def at_seq(self, s: Sequence[int]) -> int:
        s = tuple(s)
        self._charge(("s", s))
        return self.stream.at_seq(s)

    def sub(self, m: int) -> "SubOracle":
        return SubOracle(self, m)


class SubOracle:
    """The m-th subsequence of an oracle, asked at sequences."""

    def __init__(self, base, m: int):
        self.base, self.m = base, m

    def at_seq(self, s: Sequence[int]) -> int:
        return self.base.at_seq((self.m,) + tuple(s))

    def at(self, i: int) -> int:
        return self.base.at(pair(self.m, i))


# ---------------------------------------------------------------- streams

class StreamSpec:
    """A total function from naturals to naturals with a finite description."""

    kind = "abstract"

    def at(self, n: int) -> int:
        return self.at_seq(decode(n))

    def at_seq(self, s: Sequence[int]) -> int:
        return self.at(encode(s))

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.at(i) for i in range(n))

    def to_json(self):
        raise NotImplementedError(type(self).__name__)

    def __eq__(self, other):
        return isinstance(other, StreamSpec) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()!r})"


class Memo:
    """Thread-safe value cache for streams whose values cost something."""

    def __init__(self):
        self._table: dict = {}
        self._lock = threading.Lock()

    def get(self, key, compute):
        with self._lock:
            if key in self._table:
                return self._table[key]
        value = compute()
        with self._lock:
            self._table.setdefault(key, value)
        return value


class EvPeriodic(StreamSpec):
    kind = "ev"

    def __init__(self, prefix: Sequence[int], cycle: Sequence[int]):
        self.pre = tuple(int(x) for x in prefix)
        self.cycle = tuple(int(x) for x in cycle)
        if not self.cycle:
            raise DomainError("an eventually periodic point needs a non-empty cycle")
        if any(x < 0 for x in self.pre + self.cycle):
            raise DomainError("values are naturals")

    def at(self, n: int) -> int:
        if n < len(self.pre):
            return self.pre[n]
        return self.cycle[(n - len(self.pre)) % len(self.cycle)]

    def at_seq(self, s: Sequence[int]) -> int:
        if len(self.cycle) == 1:
            c = encode_below(s, len(self.pre))
            return self.cycle[0] if c is None else self.pre[c]
        return self.at(encode(s))

    def to_json(self):
        return {"ev": {"prefix": list(self.pre), "cycle": list(self.cycle)}}


def zeros() -> EvPeriodic:
    return EvPeriodic((), (0,))


def constant(m: int) -> EvPeriodic:
    return EvPeriodic((), (m,))


class Const(StreamSpec):
    kind = "const"

    def __init__(self, m: int):
        if m < 0:
            raise DomainError("values are naturals")
        self.m = int(m)

    def at(self, n: int) -> int:
        return self.m

    def at_seq(self, s: Sequence[int]) -> int:
        return self.m

    def to_json(self):
        return {"const": self.m}


class TreeChar(StreamSpec):
    """0 at the nodes of a regular tree, 1 elsewhere."""

    kind = "treechar"

    def __init__(self, tree: tr.RegularTree):
        self.tree = tree

    def at_seq(self, s: Sequence[int]) -> int:
        return 0 if tr.node_member_seq(self.tree, s) else 1

    def to_json(self):
        return {"treechar": tr.to_json(self.tree)}


class Interleave(StreamSpec):
    kind = "interleave"

    def __init__(self, a: StreamSpec, b: StreamSpec):
        self.a, self.b = a, b

    def at(self, n: int) -> int:
        return (self.a if n % 2 == 0 else self.b).at(n // 2)

    def to_json(self):
        return {"interleave": {"a": self.a.to_json(), "b": self.b.to_json()}}


class Subseq(StreamSpec):
    kind = "subseq"

    def __init__(self, a: StreamSpec, m: int):
        self.a, self.m = a, int(m)

    def at(self, n: int) -> int:
        return self.a.at(pair(self.m, n))

    def at_seq(self, s: Sequence[int]) -> int:
        return self.a.at_seq((self.m,) + tuple(s))

    def to_json(self):
        return {"subseq": {"a": self.a.to_json(), "m": self.m}}


class PartI(StreamSpec):
    kind = "part_i"

    def __init__(self, a: StreamSpec):
        self.a = a

    def at(self, n: int) -> int:
        return self.a.at(2 * n)

    def to_json(self):
        return {"part_i": self.a.to_json()}


class PartII(StreamSpec):
    kind = "part_ii"

    def __init__(self, a: StreamSpec):
        self.a = a

    def at(self, n: int) -> int:
        return self.a.at(2 * n + 1)

    def to_json(self):
        return {"part_ii": self.a.to_json()}


class Localize(StreamSpec):
    """Value at ``s`` is the value of ``a`` at ``u * s``."""

    kind = "localize"

    def __init__(self, a: StreamSpec, u: Sequence[int]):
        self.a, self.u = a, tuple(u)

    def at_seq(self, s: Sequence[int]) -> int:
        return self.a.at_seq(self.u + tuple(s))

    def to_json(self):
        return {"localize": {"a": self.a.to_json(), "u": encode(self.u)}}


class Prefixed(StreamSpec):
    """The finite sequence ``items`` followed by the point ``a``."""

    kind = "prefixed"

    def __init__(self, items: Sequence[int], a: StreamSpec):
        self.items, self.a = tuple(int(x) for x in items), a

    def at(self, n: int) -> int:
        k = len(self.items)
        return self.items[n] if n < k else self.a.at(n - k)

    def to_json(self):
        return {"prefixed": {"items": list(self.items), "a": self.a.to_json()}}


class Shift(StreamSpec):
    """``a`` with its first ``k`` values dropped."""

    kind = "shift"

    def __init__(self, a: StreamSpec, k: int = 1):
        self.a, self.k = a, int(k)

    def at(self, n: int) -> int:
        return self.a.at(n + self.k)

    def to_json(self):
        return {"shift": {"a": self.a.to_json(), "k": self.k}}


class Family(StreamSpec):
    """Code of a sequence of codes: value at ``<n> * s`` is member n at ``s``.

    Members past the list use ``default``; the value at the empty sequence is 0.
    """

    kind = "family"

    def __init__(self, members: Sequence[StreamSpec], default: StreamSpec):
        self.members, self.default = tuple(members), default

    def member(self, n: int) -> StreamSpec:
        return self.members[n] if n < len(self.members) else self.default

    def at_seq(self, s: Sequence[int]) -> int:
        s = tuple(s)
        if not s:
            return 0
        return self.member(s[0]).at_seq(s[1:])

    def to_json(self):
        return {"family": {"members": [m.to_json() for m in self.members],
                           "default": self.default.to_json()}}


class Merge(StreamSpec):
    """The point whose m-th subsequence is column m (``default`` past the list).

    Position 0 is not a pair and holds ``head``.
    """

    kind = "merge"

    def __init__(self, columns: Sequence[StreamSpec], default: StreamSpec, head: int = 0):
        self.columns, self.default, self.head = tuple(columns), default, int(head)

    def column(self, m: int) -> StreamSpec:
        return self.columns[m] if m < len(self.columns) else self.default

    def at(self, n: int) -> int:
        if n == 0:
            return self.head
        m, k = unpair(n)
        return self.column(m).at(k)

    def to_json(self):
        return {"merge": {"columns": [c.to_json() for c in self.columns],
                          "default": self.default.to_json(), "head": self.head}}


class Lazy(StreamSpec):
    """A memoised point given by a Python function; printable but not re-parseable."""

    kind = "lazy"

    def __init__(self, fn: Callable[[int], int], label: str, seq_fn: Callable | None = None):
        self.fn, self.label, self.seq_fn = fn, label, seq_fn
        self._memo = Memo()

    def at(self, n: int) -> int:
        if self.seq_fn is not None:
            return self.at_seq(decode(n))
        return self._memo.get(("n", n), lambda: self.fn(n))

    def at_seq(self, s: Sequence[int]) -> int:
        if self.seq_fn is None:
            return self.at(encode(s))
        s = tuple(s)
        return self._memo.get(("s", s), lambda: self.seq_fn(s))

    def to_json(self):
        return {"lazy": self.label}


class Apply(StreamSpec):
    """The point ``code | arg``, evaluated lazily with a fuel bound per value."""

    kind = "apply"

    def __init__(self, code: StreamSpec, arg: StreamSpec, fuel: int | None = None):
        self.code, self.arg = code, arg
        self.fuel = DEFAULT_FUEL if fuel is None else fuel
        self._memo = Memo()

    def at(self, n: int) -> int:
        return self._memo.get(("n", n), lambda: self._value(Position(nat=n)))

    def at_seq(self, s: Sequence[int]) -> int:
        s = tuple(s)
        return self._memo.get(("s", s), lambda: self._value(Position(seq=s)))

    def _value(self, pos: Position) -> int:
        if isinstance(self.code, Functional):
            return self.code.run(pos, StreamOracle(self.arg, self.fuel), self.arg)
        return eval_at(Subseq(self.code, pos.nat), self.arg, self.fuel)

    def to_json(self):
        return {"apply": {"code": self.code.to_json(), "arg": self.arg.to_json()}}


# ---------------------------------------------------------------- rule-based codes

Rule = Callable[[Position, object], int]
RULES: dict[str, Callable[[dict], Rule]] = {}
DEFINED: dict[str, Callable[[dict], Callable[[tuple], int]]] = {}


def rule(name: str):
    """Register a factory ``params -> rule`` under a stable name."""

    def deco(factory):
        RULES[name] = factory
        return factory

    return deco


def defined(name: str):
    """Register a factory ``params -> (sequence -> value)`` for plain streams."""

    def deco(factory):
        DEFINED[name] = factory
        return factory

    return deco


class Functional(StreamSpec):
    kind = "rule"

    def __init__(self, name: str, params: dict | None = None):
        if name not in RULES:
            raise DomainError("unknown rule", name=name)
        self.name = name
        self.params = params or {}
        self.fn = RULES[name](self.params)
        self._memo = Memo()

    def run(self, pos: Position, oracle, arg: StreamSpec | None = None) -> int:
        try:
            return self.fn(pos, oracle)
        except Undetermined:
            raise FuelExhausted("rule left undetermined by a full stream")

    def at_seq(self, s: Sequence[int]) -> int:
        s = tuple(s)
        if not s:
            return 0
        return self._memo.get(s, lambda: self._value(s))

    def _value(self, s: tuple) -> int:
        try:
            return self.fn(Position(nat=s[0]), PrefixOracle(s[1:])) + 1
        except Undetermined:
            return 0

    def value_on(self, pos: Position, known: Sequence[int]) -> int | None:
        """Output at ``pos`` from a finite initial part, or None."""
        try:
            return self.fn(pos, PrefixOracle(known))
        except Undetermined:
            return None

    def to_json(self):
        return {"rule": {"name": self.name, "params": self.params}}


class Defined(StreamSpec):
    """A stream whose value at each sequence is computed by a registered function."""

    kind = "defined"

    def __init__(self, name: str, params: dict | None = None):
        if name not in DEFINED:
            raise DomainError("unknown stream definition", name=name)
        self.name = name
        self.params = params or {}
        self.fn = DEFINED[name](self.params)
        self._memo = Memo()

    def at_seq(self, s: Sequence[int]) -> int:
        s = tuple(s)
        return self._memo.get(s, lambda: self.fn(s))

    def to_json(self):
        return {"defined": {"name": self.name, "params": self.params}}


@rule("identity")
def _identity(params):
    """The identity-value code: output n is input n."""
    return lambda pos, o: o.at(pos.nat)


@rule("constant")
def _constant_rule(params):
    """Every output is ``value``, decided before reading anything."""
    v = int(params["value"])
    return lambda pos, o: v


@rule("prepend")
def _prepend(params):
    """Output is ``items`` followed by the input."""
    items = tuple(params["items"])

    def fn(pos, o):
        n = pos.nat
        return items[n] if n < len(items) else o.at(n - len(items))

    return fn


def identity_code() -> Functional:
    return Functional("identity")


# ---------------------------------------------------------------- evaluation

def eval_stream(a: StreamSpec, n: int) -> int:
    return a.at(n)


def eval_at(gamma: StreamSpec, alpha: StreamSpec, fuel: int) -> int:
    """The value of the coded function ``gamma`` at ``alpha``.

    For rule-based codes fuel bounds the number of distinct input values
    read; for other codes it bounds the length of the initial part tried.
    """
    if fuel < 1:
        raise DomainError("fuel must be at least 1", fuel=fuel)
    if isinstance(gamma, Subseq) and isinstance(gamma.a, Functional):
        return gamma.a.run(Position(nat=gamma.m), StreamOracle(alpha, fuel), alpha)
    known: list[int] = []
    for n in range(fuel + 1):
        v = gamma.at_seq(tuple(known))
        if v:
            return v - 1
        known.append(alpha.at(n))
    raise FuelExhausted("no initial part within the bound fires", fuel=fuel,
                        stuck_prefix=known[:fuel])


def modulus(gamma: StreamSpec, alpha: StreamSpec, fuel: int) -> int:
    """Least n with gamma non-zero at the first n values of alpha."""
    known: list[int] = []
    for n in range(fuel + 1):
        if gamma.at_seq(tuple(known)):
            return n
        known.append(alpha.at(n))
    raise FuelExhausted("no initial part within the bound fires", fuel=fuel)


def apply(gamma: StreamSpec, alpha: StreamSpec, fuel: int | None = None) -> Apply:
    return Apply(gamma, alpha, fuel)


def finite_apply_seq(gamma: StreamSpec, s: Sequence[int]) -> tuple[int, ...]:
    """The longest output determined by ``gamma`` on initial parts of ``s``."""
    s = tuple(s)
    out: list[int] = []
    for j in range(len(s)):
        v = _determined(gamma, j, s)
        if v is None:
            break
        out.append(v)
    return tuple(out)


def _determined(gamma: StreamSpec, j: int, s: tuple) -> int | None:
    if isinstance(gamma, Functional):
        return gamma.value_on(Position(nat=j), s)
    for k in range(len(s) + 1):
        v = gamma.at_seq((j,) + s[:k])
        if v:
            return v - 1
    return None


def finite_apply(gamma: StreamSpec, code: int) -> int:
    return encode(finite_apply_seq(gamma, decode(code)))


def apart(a: StreamSpec, b: StreamSpec, bound: int) -> int | None:
    for n in range(bound):
        if a.at(n) != b.at(n):
            return n
    return None


# ---------------------------------------------------------------- JSON

def from_json(doc) -> StreamSpec:
    if isinstance(doc, list):
        return EvPeriodic(doc, [0])
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ParseError("stream must be a one-key object")
    (tag, body), = doc.items()
    try:
        if tag == "ev":
            return EvPeriodic(body["prefix"], body["cycle"])
        if tag == "const":
            return Const(int(body))
        if tag == "treechar":
            return TreeChar(tr.from_json(body))
        if tag == "interleave":
            return Interleave(from_json(body["a"]), from_json(body["b"]))
        if tag == "subseq":
            return Subseq(from_json(body["a"]), int(body["m"]))
        if tag == "part_i":
            return PartI(from_json(body))
        if tag == "part_ii":
            return PartII(from_json(body))
        if tag == "localize":
            return Localize(from_json(body["a"]), decode(int(body["u"])))
        if tag == "apply":
            return Apply(from_json(body["code"]), from_json(body["arg"]))
        if tag == "prefixed":
            return Prefixed(body["items"], from_json(body["a"]))
        if tag == "shift":
            return Shift(from_json(body["a"]), int(body.get("k", 1)))
        if tag == "family":
            return Family([from_json(m) for m in body["members"]], from_json(body["default"]))
        if tag == "merge":
            return Merge([from_json(c) for c in body["columns"]], from_json(body["default"]),
                         int(body.get("head", 0)))
        if tag == "lazy":
            raise ParseError("lazy streams are not serialisable", label=body)
        if tag == "rule":
            return Functional(body["name"], body.get("params", {}))
        if tag == "defined":
            return Defined(body["name"], body.get("params", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed stream document", tag=tag, detail=str(exc)) from exc
    raise ParseError("unknown stream tag", tag=tag)
