import random

import pytest

from conftest import naive_fixed, naive_two_cycles
from selfpower.arith import DomainError, ModulusContext, PolySpec, self_power
from selfpower.counts import FixedClassKey, TwoCycleClassKey
from selfpower.oracle import (
    BUDGET_ENV,
    BudgetExceeded,
    RangeSpec,
    SolutionRecord,
    classify_fixed,
    classify_two_cycles,
    count_nonsingular_fixed,
    default_budget,
    enumerate_fixed_points,
    enumerate_two_cycles,
)
import selfpower.oracle as oracle


def ctx(p, e):
    return ModulusContext(p, e)


def xs(records):
    return [r.x for r in records]


def pairs(records):
    return [(r.x, r.y) for r in records]


def test_fixed_examples():
    assert xs(enumerate_fixed_points(ctx(3, 1), 1)) == [1, 4, 5]
    assert xs(enumerate_fixed_points(ctx(3, 2), 1)) == [1, 4, 7, 10, 13, 16, 17]
    assert xs(enumerate_fixed_points(ctx(2, 3), 1)) == [1, 3, 5, 7]


def test_records_carry_coordinates():
    r = enumerate_fixed_points(ctx(3, 2), 1)[-1]
    assert r == SolutionRecord(17, None, 1, 8)
    assert r.as_row() == {"x": 17, "x0": 1, "x1": 8}
    assert enumerate_fixed_points(ctx(2, 3), 1)[1].x0 is None


def test_two_cycle_examples():
    assert pairs(enumerate_two_cycles(ctx(3, 1), 1)) == [(1, 1), (1, 4), (4, 1), (4, 4), (5, 5)]
    assert pairs(enumerate_two_cycles(ctx(2, 2), 1)) == [(1, 1), (3, 3)]
    recs = enumerate_two_cycles(ctx(3, 2), 1)
    assert len(recs) == 15
    assert classify_two_cycles(recs, ctx(3, 2)) == {TwoCycleClassKey(1, 1): 12, TwoCycleClassKey(2, 2): 3}


def test_classify_examples():
    assert classify_fixed(enumerate_fixed_points(ctx(3, 2), 1), ctx(3, 2)) == {
        FixedClassKey(1): 6,
        FixedClassKey(2): 1,
    }
    assert classify_fixed(enumerate_fixed_points(ctx(2, 4), 1), ctx(2, 4)) == {
        FixedClassKey(1): 4,
        FixedClassKey(3): 2,
    }
    assert classify_two_cycles(enumerate_two_cycles(ctx(3, 1), 1), ctx(3, 1)) == {
        TwoCycleClassKey(1, 1): 4,
        TwoCycleClassKey(2, 2): 1,
    }
    assert classify_two_cycles(enumerate_two_cycles(ctx(2, 2), 1), ctx(2, 2)) == {
        TwoCycleClassKey(1, 1): 1,
        TwoCycleClassKey(3, 3): 1,
    }
    assert classify_fixed([], ctx(3, 2)) == {}
    assert classify_two_cycles([], ctx(3, 2)) == {}


@pytest.mark.parametrize("p,e_max", [(2, 7), (3, 3), (5, 2), (7, 1)])
def test_agrees_with_exact_tower(p, e_max):
    for e in range(1, e_max + 1):
        for n in range(1, 5):
            assert xs(enumerate_fixed_points(ctx(p, e), n)) == naive_fixed(p, e, n)
            if p**e * (p - 1) <= 300:
                assert sorted(pairs(enumerate_two_cycles(ctx(p, e), n))) == naive_two_cycles(p, e, n)


def test_reduced_range_is_a_subset():
    for p, e in [(3, 2), (5, 2), (7, 1)]:
        c = ctx(p, e)
        full = xs(enumerate_fixed_points(c, 1))
        reduced = xs(enumerate_fixed_points(c, 1, RangeSpec.REDUCED))
        assert reduced == [x for x in full if x <= p**e]
        full_pairs = pairs(enumerate_two_cycles(c, 1))
        reduced_pairs = pairs(enumerate_two_cycles(c, 1, "reduced"))
        assert reduced_pairs == [(x, y) for x, y in full_pairs if x <= p**e and y <= p**e]


def test_two_cycles_are_symmetric_and_contain_fixed_points():
    for p, e in [(2, 6), (3, 3), (5, 2), (7, 2)]:
        for n in (1, 2, 3):
            c = ctx(p, e)
            ps = set(pairs(enumerate_two_cycles(c, n)))
            assert ps == {(y, x) for x, y in ps}
            for x in xs(enumerate_fixed_points(c, n)):
                assert (x, x) in ps


def test_exponent_reduction_is_sound():
    rng = random.Random(1)
    for _ in range(2000):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        e = rng.randint(1, 6)
        m = p**e
        x = rng.randrange(1, 10**4)
        if x % p == 0:
            continue
        n = rng.randint(1, 4)
        if x**n > 2**64:
            continue
        assert pow(x, x**n, m) == self_power(x, n, ctx(p, e))


def test_general_polynomial_exponent():
    g = PolySpec((1, 1, 1))
    c = ctx(5, 2)
    m = 25
    expected = [x for x in range(1, m * 4 + 1) if x % 5 and pow(x, x * x + x + 1, m) == x % m]
    assert xs(enumerate_fixed_points(c, g)) == expected


def test_deterministic_across_workers(monkeypatch):
    monkeypatch.setattr(oracle, "CHUNK", 64)
    c = ctx(3, 4)
    single = enumerate_two_cycles(c, 2, workers=1)
    multi = enumerate_two_cycles(c, 2, workers=3)
    assert single == multi
    assert enumerate_fixed_points(c, 1, workers=1) == enumerate_fixed_points(c, 1, workers=4)


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enumerate_fixed_points(ctx(3, 3), 1, budget=10)
    with pytest.raises(BudgetExceeded):
        enumerate_two_cycles(ctx(3, 2), 1, budget=18)
    monkeypatch.setenv(BUDGET_ENV, "5")
    assert default_budget() == 5
    with pytest.raises(BudgetExceeded):
        enumerate_fixed_points(ctx(3, 2), 1)
    # an explicit budget wins over the environment
    assert len(enumerate_fixed_points(ctx(3, 2), 1, budget=100)) == 7
    monkeypatch.delenv(BUDGET_ENV)
    assert default_budget() == oracle.DEFAULT_BUDGET


def test_count_nonsingular_fixed():
    assert count_nonsingular_fixed(ctx(3, 2), PolySpec.power(1)) == 1
    assert count_nonsingular_fixed(ctx(5, 3), 1) == 4
    with pytest.raises(DomainError):
        count_nonsingular_fixed(ctx(2, 3), 1)
