"""St. Petersburg experiments: simulation, Feller's fee, and the lottery decomposition.

Randomness comes from numpy's ``PCG64`` bit generator.  Session ``i`` of a
multi-session run is seeded from ``SeedSequence([seed, i])``, so sessions are
independent, order-free and can be farmed out to workers without changing
any result.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import asdict, dataclass, field

import numpy as np

from .distributions import expectation, lottery_game
from .errors import InvalidParameter

GENERATOR = "numpy.random.PCG64"
MAX_TOSSES = 62
MAX_DEPTH = 50


@dataclass(frozen=True)
class SimulationConfig:
    seed: int
    num_plays: int
    max_tosses: int = MAX_TOSSES

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InvalidParameter("seed must be a 64-bit unsigned integer")
        if self.num_plays < 1:
            raise InvalidParameter("num_plays must be >= 1")
        if not 1 <= self.max_tosses <= MAX_TOSSES:
            raise InvalidParameter(f"max_tosses must lie in 1..{MAX_TOSSES}")

    def rng(self, task: int | None = None) -> np.random.Generator:
        entropy = self.seed if task is None else [self.seed, task]
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class SessionReport:
    seed: int
    num_plays: int
    max_tosses: int
    total_payout: int
    mean_payout: float
    max_single_payout: int
    toss_cap_hits: int
    generator: str = GENERATOR

    def to_dict(self) -> dict:
        return asdict(self)


def simulate_play(rng: np.random.Generator, max_tosses: int = MAX_TOSSES) -> tuple[int, int]:
    """Toss a fair coin until heads; return ``(payout, tosses)``.

    The game is stopped after ``max_tosses`` tails-only tosses and pays
    ``2**max_tosses``; such a play reports ``tosses == max_tosses + 1``
    so callers can count cap hits.
    """
    for toss in range(1, max_tosses + 1):
        if rng.integers(0, 2) == 1:
            return 2**toss, toss
    return 2**max_tosses, max_tosses + 1


def _first_heads(rng: np.random.Generator, num_plays: int) -> np.ndarray:
    # index of the first head, i.e. a geometric variate with p = 1/2
    return rng.geometric(0.5, size=num_plays)


def _report(config: SimulationConfig, first_heads: np.ndarray) -> SessionReport:
    cap = config.max_tosses
    hits = int(np.count_nonzero(first_heads > cap))
    counts = np.bincount(np.minimum(first_heads, cap), minlength=cap + 1)
    # python ints: 2**62 payouts overflow int64 once summed
    total = sum(int(c) << int(n) for n, c in enumerate(counts) if c)
    top = int(np.max(np.minimum(first_heads, cap)))
    return SessionReport(
        seed=config.seed,
        num_plays=config.num_plays,
        max_tosses=cap,
        total_payout=total,
        mean_payout=total / config.num_plays,
        max_single_payout=1 << top,
        toss_cap_hits=hits,
    )


def simulate_session(config: SimulationConfig, task: int | None = None) -> SessionReport:
    """Play ``config.num_plays`` independent games and aggregate the payouts."""
    return _report(config, _first_heads(config.rng(task), config.num_plays))


def simulate_sessions(config: SimulationConfig, num_sessions: int) -> list[SessionReport]:
    """Independent sessions ``0..num_sessions-1`` derived from one seed."""
    if num_sessions < 1:
        raise InvalidParameter("num_sessions must be >= 1")
    return [simulate_session(config, task) for task in range(num_sessions)]


def feller_fair_fee(num_plays: int) -> float:
    """Feller's per-play fee ``log2(n)`` for a series of exactly ``n`` plays."""
    if num_plays < 1:
        raise InvalidParameter("num_plays must be >= 1")
    return math.log2(num_plays)


@dataclass(frozen=True)
class FellerCheck:
    seed: int
    num_plays: int
    num_sessions: int
    feller_fee: float
    median_mean_payout: float
    median_ratio: float
    generator: str = GENERATOR

    def to_dict(self) -> dict:
        return asdict(self)


def feller_check(config: SimulationConfig, num_sessions: int = 200) -> FellerCheck:
    """Median across sessions of the session mean payout, against ``log2(n)``.

    A single session mean is dominated by rare huge payouts; the median of
    many session means is a stable statistic.
    """
    sessions = simulate_sessions(config, num_sessions)
    median = statistics.median(s.mean_payout for s in sessions)
    fee = feller_fair_fee(config.num_plays)
    return FellerCheck(
        seed=config.seed,
        num_plays=config.num_plays,
        num_sessions=num_sessions,
        feller_fee=fee,
        median_mean_payout=median,
        median_ratio=median / fee if fee else math.inf,
    )


@dataclass(frozen=True)
class TwoBankerReport:
    plays: tuple[int, int]
    seeds: tuple[int, int]
    per_banker_fees: tuple[float, float]
    fee_at_per_banker_price: float
    combined_fee_per_play: float
    fee_at_combined_price: float
    empirical_payouts: tuple[int, int]
    empirical_total_payout: int
    generator: str = GENERATOR

    def to_dict(self) -> dict:
        return asdict(self)


def two_banker_demo(first: SimulationConfig, second: SimulationConfig) -> TwoBankerReport:
    """Play one series at each of two bankers and compare Feller fees.

    Each banker charges ``log2`` of the plays made with them; had the player
    made all plays with one banker, the fee per play would be higher.
    """
    fees = (feller_fair_fee(first.num_plays), feller_fair_fee(second.num_plays))
    total_plays = first.num_plays + second.num_plays
    combined = feller_fair_fee(total_plays)
    a, b = simulate_session(first), simulate_session(second)
    return TwoBankerReport(
        plays=(first.num_plays, second.num_plays),
        seeds=(first.seed, second.seed),
        per_banker_fees=fees,
        fee_at_per_banker_price=first.num_plays * fees[0] + second.num_plays * fees[1],
        combined_fee_per_play=combined,
        fee_at_combined_price=total_plays * combined,
        empirical_payouts=(a.total_payout, b.total_payout),
        empirical_total_payout=a.total_payout + b.total_payout,
    )


# -- lottery decomposition ---------------------------------------------------


def st_petersburg_payout(bits) -> int:
    """Payout ``2**n`` where bit ``n`` (1-based) is the first 1 (head)."""
    for n, bit in enumerate(bits, start=1):
        if bit:
            return 2**n
    raise InvalidParameter("no head within the given prefix")


def lottery_payout(k: int, bits) -> int:
    """Lottery Game ``k`` pays ``2**k`` iff the first ``k`` bits are ``0...01``."""
    for n, bit in enumerate(bits, start=1):
        if bit:
            # a 1 before position k, or exactly at k
            return 2**k if n == k else 0
        if n == k:
            return 0
    raise InvalidParameter(f"prefix too short to settle lottery {k}")


@dataclass(frozen=True)
class DecompositionReport:
    depth: int
    sequences_checked: int
    mismatches: int
    lottery_expectations: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def verify_decomposition(depth: int) -> DecompositionReport:
    """Check that one St. Petersburg play pays what the lottery set pays.

    The game only depends on the bits up to the first head, so the prefixes
    ``0**(n-1) 1`` for ``n = 1..depth`` cover every outcome up to ``depth``.
    All arithmetic is on python integers and therefore exact.
    """
    if isinstance(depth, bool) or int(depth) != depth or not 1 <= depth <= MAX_DEPTH:
        raise InvalidParameter(f"depth must lie in 1..{MAX_DEPTH}")
    mismatches = 0
    for n in range(1, depth + 1):
        prefix = (0,) * (n - 1) + (1,)
        payouts = [lottery_payout(k, prefix) for k in range(1, depth + 1)]
        fired = sum(1 for p in payouts if p)
        if fired != 1 or sum(payouts) != st_petersburg_payout(prefix):
            mismatches += 1
    expectations = [expectation(lottery_game(k)) for k in range(1, depth + 1)]
    mismatches += sum(1 for e in expectations if e != 1)
    return DecompositionReport(depth, depth, mismatches, expectations)
