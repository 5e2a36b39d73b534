import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stpricing import distributions as d
from stpricing.errors import (
    EmptyDistribution,
    IndexOutOfRange,
    InvalidParameter,
    NegativePayout,
    ProbabilityMassError,
)


def test_make_finite_two_point():
    dist = d.make_finite([(1, 0.5), (2, 0.5)])
    assert dist.size == 2
    assert d.expectation(dist) == 1.5


def test_make_finite_sorts():
    assert d.make_finite([(2, 0.5), (1, 0.5)]) == d.make_finite([(1, 0.5), (2, 0.5)])


def test_make_finite_merges_duplicates():
    dist = d.make_finite([(1, 0.3), (1, 0.2), (4, 0.5)])
    assert dist.outcomes == ((1.0, 0.5), (4.0, 0.5))


def test_make_finite_drops_zero_probability():
    dist = d.make_finite([(1, 1.0), (5, 0.0)])
    assert dist.outcomes == ((1.0, 1.0),)


@pytest.mark.parametrize(
    "outcomes, error",
    [
        ([], EmptyDistribution),
        ([(1, 0.5), (2, 0.4)], ProbabilityMassError),
        ([(1, 0.5), (2, 0.5 + 1e-11)], ProbabilityMassError),
        ([(-1, 0.5), (2, 0.5)], NegativePayout),
        ([(1, -0.5), (2, 1.5)], ProbabilityMassError),
        ([(float("nan"), 1.0)], InvalidParameter),
    ],
)
def test_make_finite_rejects(outcomes, error):
    with pytest.raises(error):
        d.make_finite(outcomes)


def test_mass_tolerance_accepts_decimal_input():
    dist = d.make_finite([(1, 0.1)] * 3 + [(2, 0.7)])
    assert dist.outcomes == ((1.0, math.fsum([0.1] * 3)), (2.0, 0.7))


def test_st_petersburg_outcomes():
    sp = d.st_petersburg()
    assert sp.outcome(1) == (2, 0.5)
    assert sp.outcome(28) == (268435456, 1 / 268435456)
    assert sp.is_infinite


def test_st_petersburg_tail_mass():
    sp = d.st_petersburg()
    assert d.tail_mass(sp, 5) == 0.03125
    assert d.tail_mass(sp, 28) == 2.0**-28
    assert d.tail_mass(sp, 0) == 1.0
    # geometric series oracle, exact in rationals
    assert Fraction(d.tail_mass(sp, 5)) == 1 - sum(Fraction(1, 2**i) for i in range(1, 6))


@pytest.mark.parametrize("k, lose, prize", [(1, 0.5, 2.0), (3, 7 / 8, 8.0), (28, 1 - 2.0**-28, 2.0**28)])
def test_lottery_game(k, lose, prize):
    game = d.lottery_game(k)
    assert game.outcome(1) == (0.0, lose)
    assert game.outcome(2) == (prize, 2.0**-k)
    assert d.expectation(game) == 1.0


@pytest.mark.parametrize("k", [0, -3, 1.5, True])
def test_lottery_game_rejects(k):
    with pytest.raises(InvalidParameter):
        d.lottery_game(k)


def test_expectation(die):
    assert d.expectation(d.st_petersburg()) == d.UNBOUNDED == math.inf
    assert d.expectation(die) == pytest.approx(3.5, rel=1e-15)


def test_tail_mass_die(die):
    assert d.tail_mass(die, 0) == 1.0
    assert d.tail_mass(die, 5) == 1 / 6
    assert d.tail_mass(die, 6) == 0.0
    with pytest.raises(IndexOutOfRange):
        d.tail_mass(die, 7)
    with pytest.raises(IndexOutOfRange):
        d.tail_mass(die, -1)


def test_lottery_expectation_exact_up_to_50():
    assert all(d.expectation(d.lottery_game(k)) == 1 for k in range(1, 51))


finite_outcomes = st.lists(
    st.tuples(st.floats(0, 1e6, allow_nan=False), st.integers(1, 1000)), min_size=1, max_size=15
).map(lambda pairs: [(x, w / sum(w for _, w in pairs)) for x, w in pairs])


@given(finite_outcomes)
def test_tail_mass_properties(outcomes):
    dist = d.make_finite(outcomes)
    tails = [dist.tail_mass(n) for n in range(dist.size + 1)]
    assert tails[0] == 1.0 and tails[-1] == 0.0
    assert all(a >= b for a, b in zip(tails, tails[1:]))
    for n in range(dist.size + 1):
        head = math.fsum(p for _, p in dist.outcomes[:n])
        assert abs(tails[n] + head - 1.0) <= 1e-12


@given(finite_outcomes)
def test_make_finite_idempotent(outcomes):
    dist = d.make_finite(outcomes)
    assert d.make_finite(dist.outcomes) == dist


@given(finite_outcomes)
def test_json_round_trip_bit_exact(outcomes):
    dist = d.make_finite(outcomes)
    again = d.loads(d.dumps(dist))
    assert again.outcomes == dist.outcomes
    assert d.dumps(again) == d.dumps(dist)


def test_json_analytic_kinds(tmp_path):
    for dist in (d.st_petersburg(), d.lottery_game(7)):
        path = tmp_path / "dist.json"
        d.save(dist, path)
        assert d.load(path) == dist
    assert json.loads(d.dumps(d.lottery_game(7))) == {"kind": "lottery", "k": 7}


def test_json_ignores_extra_fields_and_rejects_bad_kind():
    data = {"kind": "finite", "note": "x", "outcomes": [{"payout": 3, "probability": 1}]}
    assert d.from_dict(data).outcomes == ((3.0, 1.0),)
    with pytest.raises(InvalidParameter):
        d.from_dict({"kind": "binomial"})
    with pytest.raises(InvalidParameter):
        d.from_dict({"kind": "finite", "outcomes": [{"payout": 1}]})
