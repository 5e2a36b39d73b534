"""European option prices under fat-tailed densities with truncated integrals.

Under a Cauchy terminal-price density the call payoff integral diverges
logarithmically.  Cutting the integration range at a hopeless-probability
quantile, or at fixed multiples of spot, gives a finite price:

    call = exp(-r T) * int_K^upper (x - K) p(x) dx
    put  = exp(-r T) * int_lower^K (K - x) p(x) dx

The density is used as given; spot only enters through
:class:`ExplicitMultiple` bounds.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .densities import ContinuousDensity
from .errors import DegenerateBoundsWarning, InvalidParameter
from .quadrature import integrate

CALL = "call"
PUT = "put"
PRICE_TOL = 1e-10


@dataclass(frozen=True)
class OptionSpec:
    spot: float
    strike: float
    rate: float = 0.0
    maturity: float = 0.0
    side: str = CALL

    def __post_init__(self):
        if not (self.spot > 0 and math.isfinite(self.spot)):
            raise InvalidParameter("spot must be positive")
        if not (self.strike >= 0 and math.isfinite(self.strike)):
            raise InvalidParameter("strike must be nonnegative")
        if not (self.maturity >= 0 and math.isfinite(self.maturity)):
            raise InvalidParameter("maturity must be nonnegative")
        if not math.isfinite(self.rate):
            raise InvalidParameter("rate must be finite")
        if self.side not in (CALL, PUT):
            raise InvalidParameter(f"side must be 'call' or 'put', got {self.side!r}")

    @property
    def discount(self) -> float:
        return math.exp(-self.rate * self.maturity)


@dataclass(frozen=True)
class EpsilonQuantile:
    """Cut each tail where its remaining probability equals ``epsilon``."""

    epsilon: float

    name = "epsilon"

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InvalidParameter("epsilon must lie strictly inside (0, 1)")

    def bounds(self, density: ContinuousDensity, spec: OptionSpec) -> tuple[float, float]:
        return float(density.ppf(self.epsilon)), float(density.isf(self.epsilon))


@dataclass(frozen=True)
class ExplicitMultiple:
    """Integrate between ``lower_mult * spot`` and ``upper_mult * spot``."""

    upper_mult: float = 100.0
    lower_mult: float = 0.01

    name = "multiple"

    def __post_init__(self):
        if not 0 < self.lower_mult < 1 < self.upper_mult:
            raise InvalidParameter("need 0 < lower_mult < 1 < upper_mult")

    def bounds(self, density: ContinuousDensity, spec: OptionSpec) -> tuple[float, float]:
        return self.lower_mult * spec.spot, self.upper_mult * spec.spot


@dataclass(frozen=True)
class ExplicitBounds:
    """Integrate between fixed absolute price levels."""

    lower: float
    upper: float

    name = "bounds"

    def __post_init__(self):
        if not self.lower < self.upper:
            raise InvalidParameter("need lower < upper")

    def bounds(self, density: ContinuousDensity, spec: OptionSpec) -> tuple[float, float]:
        return float(self.lower), float(self.upper)


BoundMode = EpsilonQuantile | ExplicitMultiple | ExplicitBounds


@dataclass(frozen=True)
class OptionQuote:
    price: float
    side: str
    mode: str
    bounds: tuple[float, float]
    quadrature_error: float
    subdivisions: int
    degenerate: bool = False

    def __float__(self) -> float:
        return self.price

    def to_dict(self) -> dict:
        return {
            "price": self.price,
            "side": self.side,
            "mode": self.mode,
            "bounds": list(self.bounds),
            "quadrature_error": self.quadrature_error,
            "degenerate": self.degenerate,
        }


def quantile_upper(density: ContinuousDensity, epsilon: float) -> float:
    """Price level ``U`` above which the density leaves exactly ``epsilon``."""
    if not 0 < epsilon < 1:
        raise InvalidParameter("epsilon must lie strictly inside (0, 1)")
    return float(density.isf(epsilon))


def _breakpoints(density: ContinuousDensity, lo: float, hi: float) -> list[float]:
    # centre +- scale * 10**j, so the bulk gets its own panels on wide ranges
    centre, scale = density.ppf(0.5), density.isf(0.25) - density.ppf(0.5)
    points = [centre]
    step = scale
    while centre - step > lo or centre + step < hi:
        points += [centre - step, centre + step]
        step *= 10.0
    return [float(p) for p in points if lo < p < hi]


def payoff_integral(density: ContinuousDensity, strike: float, lo: float, hi: float, side: str = CALL):
    """Undiscounted ``int_lo^hi payoff(x) p(x) dx``; the interval must sit on one side of the strike."""
    if side == CALL:
        def integrand(x):
            return (x - strike) * density.pdf(x)
    else:
        def integrand(x):
            return (strike - x) * density.pdf(x)
    return integrate(integrand, lo, hi, tol=PRICE_TOL, points=_breakpoints(density, lo, hi))


def truncated_price(density: ContinuousDensity, spec: OptionSpec, mode: BoundMode) -> OptionQuote:
    """Discounted truncated payoff expectation.

    When the truncation bound does not bracket the strike the option has no
    payoff inside the retained range: the price is 0, ``degenerate`` is set
    and a :class:`DegenerateBoundsWarning` is issued.
    """
    lower, upper = mode.bounds(density, spec)
    if spec.side == CALL:
        lo, hi = spec.strike, upper
    else:
        lo, hi = lower, spec.strike
    if not lo < hi:
        warnings.warn(
            f"{spec.side} bounds [{lo:.6g}, {hi:.6g}] do not bracket the strike; price set to 0",
            DegenerateBoundsWarning,
            stacklevel=2,
        )
        return OptionQuote(0.0, spec.side, mode.name, (lower, upper), 0.0, 0, degenerate=True)

    result = payoff_integral(density, spec.strike, lo, hi, spec.side)
    discount = spec.discount
    return OptionQuote(
        price=max(0.0, discount * result.value),
        side=spec.side,
        mode=mode.name,
        bounds=(lower, upper),
        quadrature_error=discount * result.error_estimate,
        subdivisions=result.subdivisions,
    )


def divergence_table(
    density: ContinuousDensity, strike: float, uppers: Sequence[float]
) -> list[tuple[float, float]]:
    """Untruncated call integrals ``int_K^M (x - K) p(x) dx`` for growing ``M``.

    For the Cauchy the entries grow like ``ln(M) / pi`` without bound; for
    the Gaussian they settle almost immediately.
    """
    uppers = [float(m) for m in uppers]
    if any(b <= a for a, b in zip(uppers, uppers[1:])):
        raise InvalidParameter("uppers must be strictly increasing")
    if uppers and uppers[0] < strike:
        raise InvalidParameter("uppers must not lie below the strike")
    rows = []
    for m in uppers:
        value = 0.0 if m == strike else payoff_integral(density, strike, strike, m).value
        rows.append((m, value))
    return rows
