"""Buyer and seller pricing rules built on truncated expectations.

A buyer ignores outcomes whose combined probability is at most ``epsilon``
(the hopeless probability) and is willing to pay up to ``k`` times the
expectation of what remains.  A seller who must honour the contract to the
end quotes the full expectation; a seller who can close out early quotes
``k`` times the truncated expectation, with ``k >= 1``.

Prices are plain floats; ``math.inf`` (exported as ``UNBOUNDED``) stands for
a game with no finite price.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .distributions import (
    ST_PETERSBURG,
    UNBOUNDED,
    DiscretePayoutDistribution,
    expectation,
)
from .errors import InvalidParameter, NoFiniteTruncation


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidParameter(f"epsilon must lie in [0, 1], got {epsilon!r}")
    return epsilon


@dataclass(frozen=True)
class BuyerProfile:
    """Hopeless probability ``epsilon`` and cost-effectiveness factor ``k``.

    ``k == 1`` seeks fair deals, ``k < 1`` only bargains, ``k > 1`` speculates.
    """

    epsilon: float
    k: float = 1.0

    def __post_init__(self):
        _check_epsilon(self.epsilon)
        if not (self.k > 0 and math.isfinite(self.k)):
            raise InvalidParameter(f"k must be positive and finite, got {self.k!r}")


@dataclass(frozen=True)
class TruncationResult:
    n_epsilon: int
    e_epsilon: float
    retained_mass: float

    def to_dict(self) -> dict:
        return asdict(self)


def find_n_epsilon(dist: DiscretePayoutDistribution, epsilon: float) -> int:
    """Smallest ``N >= 1`` whose tail mass beyond ``N`` is at most ``epsilon``.

    Raises :class:`NoFiniteTruncation` for ``epsilon == 0`` on infinite support.
    """
    epsilon = _check_epsilon(epsilon)
    if dist.kind == ST_PETERSBURG:
        if epsilon == 0.0:
            raise NoFiniteTruncation("epsilon = 0 keeps every outcome of an infinite game")
        # epsilon = m * 2**e with 0.5 <= m < 1, so 2**-N <= epsilon iff N >= 1 - e
        _, e = math.frexp(epsilon)
        return max(1, 1 - e)

    size = dist.size
    for n in range(1, size + 1):
        if dist.tail_mass(n) <= epsilon:
            return n
    raise AssertionError("tail mass at full support is zero")  # pragma: no cover


def truncated_expectation(dist: DiscretePayoutDistribution, epsilon: float) -> TruncationResult:
    n = find_n_epsilon(dist, epsilon)
    return TruncationResult(
        n_epsilon=n,
        e_epsilon=dist.head_expectation(n),
        retained_mass=1.0 - dist.tail_mass(n),
    )


def buyer_max_price(dist: DiscretePayoutDistribution, profile: BuyerProfile) -> float:
    """Highest price the buyer accepts: ``k * E_eps``, or ``UNBOUNDED``."""
    try:
        result = truncated_expectation(dist, profile.epsilon)
    except NoFiniteTruncation:
        return UNBOUNDED
    return profile.k * result.e_epsilon


def buyer_accepts(dist: DiscretePayoutDistribution, profile: BuyerProfile, mu: float) -> bool:
    if not mu >= 0:
        raise InvalidParameter(f"price must be nonnegative, got {mu!r}")
    return mu <= buyer_max_price(dist, profile)


def seller_min_price_committed(dist: DiscretePayoutDistribution) -> float:
    """Lowest quote for a seller bound to settle at expiry: the full expectation."""
    return expectation(dist)


def seller_quote_closeable(dist: DiscretePayoutDistribution, epsilon: float, k: float) -> float:
    """Quote ``k * E_eps`` for a seller able to close the position early.

    The seller bears the ignored tail, so ``k`` must exceed 1 whenever
    ``epsilon > 0``.  This presumes the exchange runs a margin system.
    """
    epsilon = _check_epsilon(epsilon)
    if not (k >= 1 and math.isfinite(k)):
        raise InvalidParameter(f"seller k must be >= 1, got {k!r}")
    if epsilon > 0 and k <= 1:
        raise InvalidParameter("a seller ignoring a tail (epsilon > 0) needs k > 1")
    try:
        result = truncated_expectation(dist, epsilon)
    except NoFiniteTruncation:
        return UNBOUNDED
    return k * result.e_epsilon
