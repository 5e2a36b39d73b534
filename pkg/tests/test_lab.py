import math

import numpy as np
import pytest

from stpricing import lab
from stpricing.errors import InvalidParameter
from stpricing.lab import SimulationConfig


class ScriptedRng:
    """Stands in for a Generator: replays fixed coin tosses (1 = head)."""

    def __init__(self, tosses):
        self.tosses = iter(tosses)

    def integers(self, low, high):
        return next(self.tosses)


def test_simulate_play_scripted():
    assert lab.simulate_play(ScriptedRng([1])) == (2, 1)
    assert lab.simulate_play(ScriptedRng([0, 0, 1])) == (8, 3)
    assert lab.simulate_play(ScriptedRng([0] * 5), max_tosses=5) == (32, 6)


def test_simulate_play_frequency_of_payout_two():
    # binomial(2e5, 1/2) has sd ~0.0011
    rng = np.random.default_rng(11)
    hits = sum(lab.simulate_play(rng)[0] == 2 for _ in range(200_000))
    assert abs(hits / 200_000 - 0.5) < 0.005


def test_session_frequency_of_payout_two():
    heads = lab._first_heads(SimulationConfig(3, 1).rng(), 1_000_000)
    assert 0.498 <= np.mean(heads == 1) <= 0.502


def test_session_report_consistency():
    cfg = SimulationConfig(seed=7, num_plays=1024)
    report = lab.simulate_session(cfg)
    assert report.mean_payout == report.total_payout / 1024
    assert report == lab.simulate_session(cfg)
    assert report.generator == "numpy.random.PCG64" and report.seed == 7
    assert report.toss_cap_hits >= 0
    assert 2 <= report.max_single_payout <= 2**62
    assert report.max_single_payout & (report.max_single_payout - 1) == 0


def test_single_play_session():
    report = lab.simulate_session(SimulationConfig(seed=5, num_plays=1))
    assert report.mean_payout == report.total_payout == report.max_single_payout


def test_toss_cap_hits_counted():
    report = lab.simulate_session(SimulationConfig(seed=1, num_plays=10_000, max_tosses=1))
    # with a cap of one toss every tails-first play is a cap hit paying 2
    assert report.total_payout == 2 * 10_000
    assert 4_800 < report.toss_cap_hits < 5_200


def test_payouts_are_powers_of_two_in_range():
    cfg = SimulationConfig(seed=2, num_plays=5000, max_tosses=10)
    heads = lab._first_heads(cfg.rng(), cfg.num_plays)
    payouts = 2 ** np.minimum(heads, 10)
    assert payouts.min() >= 2 and payouts.max() <= 2**10


def test_sessions_independent_of_order():
    cfg = SimulationConfig(seed=9, num_plays=64)
    runs = lab.simulate_sessions(cfg, 5)
    assert runs[3] == lab.simulate_session(cfg, task=3)
    assert len({r.total_payout for r in runs}) > 1


@pytest.mark.parametrize("n, fee", [(1, 0.0), (1024, 10.0), (2048, 11.0)])
def test_feller_fair_fee(n, fee):
    assert lab.feller_fair_fee(n) == fee


def test_feller_median_ratio_large_sessions():
    check = lab.feller_check(SimulationConfig(seed=2024, num_plays=2**16), num_sessions=64)
    assert 0.7 <= check.median_ratio <= 1.3


def test_two_banker_demo():
    cfg1, cfg2 = SimulationConfig(1, 1024), SimulationConfig(2, 1024)
    report = lab.two_banker_demo(cfg1, cfg2)
    assert report.fee_at_per_banker_price == 20480
    assert report.fee_at_combined_price == 22528
    assert report.combined_fee_per_play == 11
    assert report == lab.two_banker_demo(cfg1, cfg2)
    assert report.empirical_total_payout == sum(report.empirical_payouts)


@pytest.mark.parametrize(
    "config",
    [dict(seed=-1, num_plays=1), dict(seed=0, num_plays=0), dict(seed=0, num_plays=1, max_tosses=63)],
)
def test_config_validation(config):
    with pytest.raises(InvalidParameter):
        SimulationConfig(**config)


def test_decomposition_small_case():
    prefix = (1,)
    assert lab.st_petersburg_payout(prefix) == 2
    assert [lab.lottery_payout(k, prefix) for k in (1, 2, 3)] == [2, 0, 0]
    assert [lab.lottery_payout(k, (0, 0, 1)) for k in (1, 2, 3, 4)] == [0, 0, 8, 0]


def test_lottery_payout_against_bit_enumeration():
    # every 6-bit string: brute-force the lottery definition literally
    for value in range(1, 64):
        bits = tuple(int(b) for b in format(value, "06b"))
        first = bits.index(1) + 1
        for k in range(1, 7):
            expected = 2**k if bits[:k] == (0,) * (k - 1) + (1,) else 0
            assert lab.lottery_payout(k, bits) == expected
        assert sum(lab.lottery_payout(k, bits) for k in range(1, 7)) == 2**first


@pytest.mark.parametrize("depth", [1, 3, 20, 50])
def test_verify_decomposition(depth):
    report = lab.verify_decomposition(depth)
    assert report.mismatches == 0
    assert report.sequences_checked == depth
    assert report.lottery_expectations == [1.0] * depth


@pytest.mark.parametrize("depth", [0, 51, 2.5])
def test_verify_decomposition_range(depth):
    with pytest.raises(InvalidParameter):
        lab.verify_decomposition(depth)


def test_report_serialises():
    d = lab.simulate_session(SimulationConfig(0, 4)).to_dict()
    assert set(d) == {
        "seed", "num_plays", "max_tosses", "total_payout", "mean_payout",
        "max_single_payout", "toss_cap_hits", "generator",
    }
    assert math.isfinite(d["mean_payout"])
