import pytest

from bairespace import trees as tr
from bairespace.errors import DomainError, FuelExhausted, ParseError
from bairespace.functional import (
    Const, EvPeriodic, Functional, Interleave, Lazy, Subseq, TreeChar, apart, apply,
    eval_at, eval_stream, finite_apply, from_json, identity_code, modulus,
)
from bairespace.seqcode import encode, pair

ZERO = EvPeriodic([], [0])
ONE = EvPeriodic([], [1])


def test_stream_values():
    assert eval_stream(ZERO, 17) == 0
    s = Subseq(Interleave(Const(3), Const(4)), 2)
    for n in range(20):
        assert s.at(n) == (3 if pair(2, n) % 2 == 0 else 4)
    assert eval_stream(TreeChar(tr.cantor()), encode([0, 1, 0])) == 0
    assert eval_stream(TreeChar(tr.cantor()), encode([0, 2])) == 1


def test_eval_at_constant_code():
    assert eval_at(Const(5), ONE, 1) == 4
    assert modulus(Const(5), ONE, 1) == 0


def test_eval_at_identity_column():
    alpha = EvPeriodic([7, 8, 9], [0])
    assert eval_at(Subseq(identity_code(), 2), alpha, 5) == 9


def test_eval_at_never_fires():
    with pytest.raises(FuelExhausted):
        eval_at(TreeChar(tr.constant_path(0)), ZERO, 50)


def test_eval_at_rejects_zero_fuel():
    with pytest.raises(DomainError):
        eval_at(Const(1), ZERO, 0)


def test_apply_identity_and_constant():
    alpha = EvPeriodic([3, 1], [4, 1, 5])
    image = apply(identity_code(), alpha)
    assert image.prefix(30) == alpha.prefix(30)
    const = apply(Functional("constant", {"value": 6}), alpha)
    assert set(const.prefix(30)) == {6}


def test_apply_respects_columns():
    alpha = EvPeriodic([2, 7], [1, 0])
    image = apply(identity_code(), alpha)
    for m in range(3):
        for n in range(5):
            assert eval_at(Subseq(identity_code(), pair(m, n)), alpha, 100) == image.at(pair(m, n))


def test_finite_apply_examples():
    assert finite_apply(identity_code(), encode([4, 5])) == encode([4, 5])
    assert finite_apply(Const(3), 0) == 0
    late = Lazy(lambda n: 0, "late", seq_fn=lambda s: 1 if len(s) >= 11 else 0)
    assert finite_apply(late, encode([1, 2, 3])) == 0


def test_apart_examples():
    assert apart(ZERO, ONE, 1) == 0
    assert apart(ZERO, ZERO, 100) is None
    assert apart(EvPeriodic([0, 0, 3], [0]), ZERO, 10) == 2


def test_json_round_trip():
    docs = [
        {"ev": {"prefix": [1, 2], "cycle": [0, 3]}},
        {"const": 4},
        {"interleave": {"a": {"const": 1}, "b": {"ev": {"prefix": [], "cycle": [2]}}}},
        {"subseq": {"a": {"const": 1}, "m": 3}},
        {"rule": {"name": "identity", "params": {}}},
    ]
    for d in docs:
        assert from_json(d).to_json() == d
    assert from_json([5]).to_json() == {"ev": {"prefix": [5], "cycle": [0]}}


def test_json_errors():
    with pytest.raises(ParseError):
        from_json({"nope": 1})
    with pytest.raises(ParseError):
        from_json({"lazy": "x"})
    with pytest.raises(DomainError):
        EvPeriodic([1], [])
