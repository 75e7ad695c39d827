import pytest

from bairespace.errors import DomainError
from bairespace.seqcode import (
    Order, concat, decode, encode, incompatible, interleave_parts, is_prefix,
    is_proper_prefix, kb_compare, pair, pointwise_le, prepend, unpair,
)

from oracles import ref_decode, ref_encode, ref_pair


def test_pair_values():
    assert pair(0, 0) == 1
    assert pair(1, 0) == 2
    assert pair(0, 1) == 3
    assert unpair(5) == (1, 1)


def test_pair_matches_diagonal_walk():
    for m in range(40):
        for n in range(40):
            assert pair(m, n) == ref_pair(m, n)


def test_encode_decode_values():
    assert encode([]) == 0
    assert encode([0]) == 1
    assert encode([1]) == 2
    assert decode(3) == (0, 0)


def test_encode_matches_reference():
    for c in range(5000):
        assert decode(c) == ref_decode(c)
        assert encode(ref_decode(c)) == c
    assert encode([3, 1, 4]) == ref_encode([3, 1, 4])


def test_prefix_relations():
    assert is_proper_prefix(encode([0]), encode([0, 0]))
    assert not is_proper_prefix(encode([0]), encode([0]))
    assert is_prefix(encode([0]), encode([0]))
    assert incompatible(encode([0]), encode([1]))
    assert not incompatible(encode([0]), encode([0, 5]))
    assert concat(encode([0]), encode([1])) == encode([0, 1])
    assert prepend(7, encode([1, 2])) == encode([7, 1, 2])


def test_kb_examples():
    assert kb_compare(encode([0, 0]), encode([0])) is Order.LESS
    assert kb_compare(encode([0]), encode([1])) is Order.LESS
    for s in range(200):
        assert kb_compare(s, s) is Order.EQUAL


def test_pointwise_le_examples():
    assert pointwise_le(encode([0, 1]), encode([2, 1]))
    assert not pointwise_le(encode([0]), encode([0, 0]))
    assert not pointwise_le(encode([1]), encode([0]))


def test_interleave_parts_examples():
    assert interleave_parts(encode([])) == (encode([]), encode([]))
    assert interleave_parts(encode([5, 7])) == (encode([5]), encode([7]))
    assert interleave_parts(encode([5, 7, 9])) == (encode([5, 9]), encode([7]))


def test_domain_errors():
    with pytest.raises(DomainError):
        unpair(0)
    with pytest.raises(DomainError):
        pair(-1, 0)
    with pytest.raises(DomainError):
        decode(-3)
