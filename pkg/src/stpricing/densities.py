"""Continuous densities with analytic survival functions.

Both densities are location-scale families and evaluate on scalars or numpy
arrays.  The Cauchy tail formulas switch branches so that small tail
probabilities keep full relative precision; ``1 - cdf`` would not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import InvalidParameter


def _check_scale(scale: float) -> None:
    if not (scale > 0 and math.isfinite(scale)):
        raise InvalidParameter(f"scale must be positive and finite, got {scale!r}")


@dataclass(frozen=True)
class Cauchy:
    location: float = 0.0
    scale: float = 1.0

    name = "cauchy"

    def __post_init__(self):
        _check_scale(self.scale)

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.location) / self.scale
        return 1.0 / (math.pi * self.scale * (z * z + 1.0))

    def sf(self, u):
        """P(X > u)."""
        z = (np.asarray(u, dtype=float) - self.location) / self.scale
        with np.errstate(divide="ignore", over="ignore"):
            inv = 1.0 / z
        out = np.where(
            z > 1.0,
            np.arctan(inv) / math.pi,
            np.where(z < -1.0, 1.0 + np.arctan(inv) / math.pi, 0.5 - np.arctan(z) / math.pi),
        )
        return out[()] if out.ndim == 0 else out

    def cdf(self, x):
        return self.sf(2.0 * self.location - np.asarray(x, dtype=float))

    def isf(self, eps):
        """Inverse survival: the ``u`` with ``sf(u) == eps``."""
        e = np.asarray(eps, dtype=float)
        with np.errstate(divide="ignore"):
            z = np.where(
                e < 0.25,
                1.0 / np.tan(math.pi * e),
                np.where(e > 0.75, -1.0 / np.tan(math.pi * (1.0 - e)), np.tan(math.pi * (0.5 - e))),
            )
        out = self.location + self.scale * z
        return out[()] if out.ndim == 0 else out

    def ppf(self, q):
        return 2.0 * self.location - self.isf(q)


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    stddev: float = 1.0

    name = "gaussian"

    def __post_init__(self):
        _check_scale(self.stddev)

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.stddev
        return np.exp(-0.5 * z * z) / (self.stddev * math.sqrt(2.0 * math.pi))

    def sf(self, u):
        return special.ndtr((self.mean - np.asarray(u, dtype=float)) / self.stddev)

    def cdf(self, x):
        return special.ndtr((np.asarray(x, dtype=float) - self.mean) / self.stddev)

    def isf(self, eps):
        return self.mean - self.stddev * special.ndtri(eps)

    def ppf(self, q):
        return self.mean + self.stddev * special.ndtri(q)


ContinuousDensity = Cauchy | Gaussian

DENSITIES = {"cauchy": Cauchy, "gaussian": Gaussian}


def make_density(name: str, location: float = 0.0, scale: float = 1.0) -> ContinuousDensity:
    try:
        cls = DENSITIES[name]
    except KeyError:
        raise InvalidParameter(f"unknown density {name!r}; expected one of {sorted(DENSITIES)}") from None
    return cls(location, scale)
