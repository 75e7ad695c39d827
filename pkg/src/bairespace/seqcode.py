"""Coding of finite sequences of naturals by single naturals.

Pairs are coded by ``pair(m, n) = C(m, n) + 1`` where ``C`` is the Cantor
diagonal pairing, so every positive natural is a pair and 0 is left over for
the empty sequence.  A list ``[a, *rest]`` is coded as ``pair(a, code(rest))``.
Codes grow quickly with length; Python integers absorb that.
"""
from __future__ import annotations

from enum import Enum
from math import isqrt
from typing import Iterable, Sequence

from .errors import DomainError


def pair(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise DomainError("pair expects naturals", m=m, n=n)
    d = m + n
    return d * (d + 1) // 2 + n + 1


def unpair(c: int) -> tuple[int, int]:
    if c < 1:
        raise DomainError("0 codes the empty sequence, not a pair", code=c)
    z = c - 1
    w = (isqrt(8 * z + 1) - 1) // 2
    n = z - w * (w + 1) // 2
    return w - n, n


def encode(items: Iterable[int]) -> int:
    items = list(items)
    code = 0
    for a in reversed(items):
        code = pair(a, code)
    return code


def decode(code: int) -> tuple[int, ...]:
    if code < 0:
        raise DomainError("codes are naturals", code=code)
    out = []
    while code:
        head, code = unpair(code)
        out.append(head)
    return tuple(out)


def length(code: int) -> int:
    return len(decode(code))


def at(code: int, i: int) -> int:
    s = decode(code)
    if not 0 <= i < len(s):
        raise DomainError("position out of range", code=code, index=i)
    return s[i]


def initial(code: int, i: int) -> int:
    s = decode(code)
    if not 0 <= i <= len(s):
        raise DomainError("initial part longer than sequence", code=code, index=i)
    return encode(s[:i])


def concat(s: int, t: int) -> int:
    return encode(decode(s) + decode(t))


def prepend(n: int, s: int) -> int:
    return pair(n, s)


def is_prefix_seq(s: Sequence[int], t: Sequence[int]) -> bool:
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def is_prefix(s: int, t: int) -> bool:
    return is_prefix_seq(decode(s), decode(t))


def is_proper_prefix(s: int, t: int) -> bool:
    a, b = decode(s), decode(t)
    return len(a) < len(b) and is_prefix_seq(a, b)


def incompatible_seq(s: Sequence[int], t: Sequence[int]) -> bool:
    return any(x != y for x, y in zip(s, t))


def incompatible(s: int, t: int) -> bool:
    return incompatible_seq(decode(s), decode(t))


def is_binary(s: int) -> bool:
    return all(x < 2 for x in decode(s))


def seq_rel(s: int, t: int, i: int | None = None) -> dict:
    """All the basic relations between two codes, as one report."""
    a = decode(s)
    report = {
        "is_prefix": is_prefix_seq(a, decode(t)),
        "is_proper_prefix": is_proper_prefix(s, t),
        "incompatible": incompatible(s, t),
        "concat": concat(s, t),
        "length": len(a),
        "is_binary": all(x < 2 for x in a),
    }
    if i is not None:
        report["initial"] = initial(s, i)
        report["at"] = at(s, i)
    return report


class Order(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


def kb_compare_seq(s: Sequence[int], t: Sequence[int]) -> Order:
    for x, y in zip(s, t):
        if x != y:
            return Order.LESS if x < y else Order.GREATER
    if len(s) == len(t):
        return Order.EQUAL
    # the longer one is an extension, and extensions come first
    return Order.LESS if len(s) > len(t) else Order.GREATER


def kb_compare(s: int, t: int) -> Order:
    return kb_compare_seq(decode(s), decode(t))


def pointwise_le(s: int, t: int) -> bool:
    a, b = decode(s), decode(t)
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


def split_seq(s: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    s = tuple(s)
    return s[0::2], s[1::2]


def interleave_parts(code: int) -> tuple[int, int]:
    even, odd = split_seq(decode(code))
    return encode(even), encode(odd)
