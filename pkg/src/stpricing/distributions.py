"""Discrete payout distributions.

Three kinds are supported:

* ``finite``: an explicit list of ``(payout, probability)`` outcomes,
* ``st_petersburg``: the infinite family paying ``2**i`` with probability
  ``2**-i`` for ``i >= 1``,
* ``lottery``: Lottery Game ``K``, paying ``2**K`` with probability ``2**-K``
  and nothing otherwise.

Outcomes are always indexed from 1 in ascending payout order, so truncating
at index ``N`` discards the highest payouts.  The analytic kinds never
materialise their outcomes; tail masses are closed form and exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    EmptyDistribution,
    IndexOutOfRange,
    InvalidParameter,
    NegativePayout,
    ProbabilityMassError,
)

FINITE = "finite"
ST_PETERSBURG = "st_petersburg"
LOTTERY = "lottery"

#: Expectation of a game with no finite fair price.
UNBOUNDED = math.inf

MASS_TOLERANCE = 1e-12

# 2.0**k overflows past this index.
_MAX_LOTTERY = 1023


@dataclass(frozen=True)
class DiscretePayoutDistribution:
    kind: str
    outcomes: tuple[tuple[float, float], ...] = ()
    k: int | None = None

    @property
    def size(self) -> int | None:
        """Number of outcomes, or ``None`` for infinite support."""
        if self.kind == FINITE:
            return len(self.outcomes)
        if self.kind == LOTTERY:
            return 2
        return None

    @property
    def is_infinite(self) -> bool:
        return self.size is None

    def outcome(self, i: int) -> tuple[float, float]:
        """Return ``(payout, probability)`` of the ``i``-th outcome (1-based)."""
        if i < 1 or (self.size is not None and i > self.size):
            raise IndexOutOfRange(f"outcome index {i} outside support")
        if self.kind == FINITE:
            return self.outcomes[i - 1]
        if self.kind == LOTTERY:
            win = math.ldexp(1.0, -self.k)
            return (0.0, 1.0 - win) if i == 1 else (math.ldexp(1.0, self.k), win)
        # Payouts are python ints so that 2**i stays exact for any i.
        return 2**i, math.ldexp(1.0, -i)

    def tail_mass(self, n: int) -> float:
        """Probability of all outcomes beyond index ``n``."""
        if n < 0 or (self.size is not None and n > self.size):
            raise IndexOutOfRange(f"truncation index {n} outside 0..{self.size}")
        if n == 0:
            return 1.0
        if self.kind == ST_PETERSBURG:
            return math.ldexp(1.0, -n)
        if self.kind == LOTTERY:
            return math.ldexp(1.0, -self.k) if n == 1 else 0.0
        return math.fsum(p for _, p in self.outcomes[n:])

    def head_expectation(self, n: int) -> float:
        """Partial expectation over the first ``n`` outcomes."""
        if n < 0 or (self.size is not None and n > self.size):
            raise IndexOutOfRange(f"truncation index {n} outside 0..{self.size}")
        if self.kind == ST_PETERSBURG:
            # every term 2**i * 2**-i is exactly 1
            return float(n)
        return math.fsum(x * p for x, p in map(self.outcome, range(1, n + 1)))


def make_finite(outcomes: Iterable[Sequence[float]]) -> DiscretePayoutDistribution:
    """Build a canonical finite distribution.

    Outcomes are sorted by payout, duplicate payouts merged and
    zero-probability outcomes dropped.

    >>> make_finite([(2, 0.5), (1, 0.5)]).outcomes
    ((1.0, 0.5), (2.0, 0.5))
    """
    merged: dict[float, list[float]] = {}
    count = 0
    for payout, prob in outcomes:
        count += 1
        payout, prob = float(payout), float(prob)
        if not (math.isfinite(payout) and math.isfinite(prob)):
            raise InvalidParameter("payouts and probabilities must be finite")
        if payout < 0:
            raise NegativePayout(f"negative payout {payout!r}")
        if prob < 0 or prob > 1:
            raise ProbabilityMassError(f"probability {prob!r} outside [0, 1]")
        merged.setdefault(payout, []).append(prob)
    if count == 0:
        raise EmptyDistribution("a distribution needs at least one outcome")

    canonical = []
    for payout in sorted(merged):
        prob = math.fsum(merged[payout])
        if prob > 0:
            canonical.append((payout, prob))
    if not canonical:
        raise EmptyDistribution("all outcomes have zero probability")
    total = math.fsum(p for _, p in canonical)
    if abs(total - 1.0) > MASS_TOLERANCE:
        raise ProbabilityMassError(f"probabilities sum to {total!r}, not 1")
    return DiscretePayoutDistribution(FINITE, tuple(canonical))


def st_petersburg() -> DiscretePayoutDistribution:
    return DiscretePayoutDistribution(ST_PETERSBURG)


def lottery_game(k: int) -> DiscretePayoutDistribution:
    """Lottery Game ``k``: wins ``2**k`` when the first ``k`` bits are ``0...01``."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise InvalidParameter(f"lottery index must be a positive integer, got {k!r}")
    if k > _MAX_LOTTERY:
        raise InvalidParameter(f"lottery index {k} too large for double precision")
    return DiscretePayoutDistribution(LOTTERY, k=int(k))


def expectation(dist: DiscretePayoutDistribution) -> float:
    """Mean payout; ``UNBOUNDED`` (``math.inf``) when the series diverges."""
    if dist.kind == ST_PETERSBURG:
        return UNBOUNDED
    return dist.head_expectation(dist.size)


def tail_mass(dist: DiscretePayoutDistribution, n: int) -> float:
    return dist.tail_mass(n)


# -- JSON ------------------------------------------------------------------


def to_dict(dist: DiscretePayoutDistribution) -> dict:
    if dist.kind == FINITE:
        return {
            "kind": FINITE,
            "outcomes": [{"payout": x, "probability": p} for x, p in dist.outcomes],
        }
    if dist.kind == LOTTERY:
        return {"kind": LOTTERY, "k": dist.k}
    return {"kind": ST_PETERSBURG}


def from_dict(data: dict) -> DiscretePayoutDistribution:
    """Inverse of :func:`to_dict`. Unknown extra fields are ignored."""
    kind = data.get("kind")
    if kind == FINITE:
        try:
            pairs = [(o["payout"], o["probability"]) for o in data["outcomes"]]
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed finite outcomes: {exc}") from None
        return make_finite(pairs)
    if kind == LOTTERY:
        if "k" not in data:
            raise InvalidParameter("lottery distribution needs a 'k' field")
        return lottery_game(data["k"])
    if kind == ST_PETERSBURG:
        return st_petersburg()
    raise InvalidParameter(f"unknown distribution kind {kind!r}")


def dumps(dist: DiscretePayoutDistribution) -> str:
    # repr-based float output makes finite distributions round-trip bit-exactly
    return json.dumps(to_dict(dist), indent=2)


def loads(text: str) -> DiscretePayoutDistribution:
    return from_dict(json.loads(text))


def load(path: str | Path) -> DiscretePayoutDistribution:
    return loads(Path(path).read_text())


def save(dist: DiscretePayoutDistribution, path: str | Path) -> None:
    Path(path).write_text(dumps(dist) + "\n")
