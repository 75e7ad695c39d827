import random

import pytest

from bairespace import namedsets as ns
from bairespace import planted
from bairespace import reductions as R
from bairespace import trees as tr
from bairespace.errors import DomainError
from bairespace.functional import EvPeriodic, Lazy, TreeChar, apply

ZERO = EvPeriodic([], [0])


def test_membership_examples():
    assert ns.check_membership("Fin", EvPeriodic([1, 1], [0]), 50).holds
    assert ns.check_membership("Inf", EvPeriodic([], [0, 1]), 50).holds
    assert ns.check_membership("E11", TreeChar(tr.empty()), 50).fails
    assert ns.check_membership("E11", TreeChar(tr.cantor()), 50).holds


def test_unknown_set_and_bad_fuel():
    with pytest.raises(DomainError):
        ns.check_membership("Nope", ZERO, 10)
    with pytest.raises(DomainError):
        ns.check_membership("Fin", ZERO, -1)


def test_disjunction_counter():
    for m in range(5):
        for n in range(5):
            assert ns.disjunction_counter(ZERO, m, n) == m
    alpha = Lazy(lambda k: 0, "col0", seq_fn=lambda s: 1 if tuple(s) == (0, 0) else 0)
    assert ns.disjunction_counter(alpha, 1, 2) == 0
    rng = random.Random(2)
    for _ in range(30):
        a = planted.rand_ev(rng, 2)
        counts = [ns.disjunction_counter(a, 4, n) for n in range(6)]
        assert all(x >= y for x, y in zip(counts, counts[1:]))


def test_wrong_witnesses_are_not_accepted():
    rng = random.Random(9)
    t = planted.tree_with(rng, [EvPeriodic([0], [1])], 2)
    r = R.build("e11_to_share_inf", {})
    image = apply(r.forward, TreeChar(t))
    bad = EvPeriodic([], [2])
    v = ns.check_membership("Share", image, 64, witness=bad, tree=tr.baire())
    assert not v.holds


def test_sigma11_depth_verdicts_agree():
    rng = random.Random(6)
    for _ in range(40):
        point, planted_partner = planted.rand_ev(rng, 2), planted.rand_ev(rng, 2)
        code = TreeChar(planted.tree_with(rng, [ns.ev_interleave(point, planted_partner)], 3))
        r = R.build("sigma11_to_e11", {"code": code})
        image = apply(r.forward, point)
        for partner in (planted_partner, planted.rand_ev(rng, 2)):
            joined = ns.ev_interleave(point, partner)
            for d in range(13):
                assert ns.admits_seq(code, joined.prefix(d)) == ns.admits_seq(image, partner.prefix(d))
