"""
Option prices under a Cauchy density
====================================

With a Cauchy terminal density the call payoff integral grows like
``ln(M) / pi`` as the upper limit ``M`` grows, so the untruncated price is
infinite.  Truncating at a quantile or at a multiple of spot fixes that.
"""

from stpricing import (
    Cauchy,
    EpsilonQuantile,
    ExplicitMultiple,
    Gaussian,
    OptionSpec,
    divergence_table,
    quantile_upper,
    truncated_price,
)

for name, density in (("cauchy", Cauchy()), ("gaussian", Gaussian())):
    print(name)
    for m, value in divergence_table(density, 0.0, [1e1, 1e3, 1e6, 1e9]):
        print(f"  M={m:8.0e}  partial call value={value:.6f}")

###############################################################################
# Truncate where only ``eps`` of the probability lies above.

for eps in (0.1, 0.01, 1e-4):
    quote = truncated_price(Cauchy(), OptionSpec(spot=1.0, strike=1.0), EpsilonQuantile(eps))
    print(f"eps={eps:g}: U={quantile_upper(Cauchy(), eps):10.3f}  call={quote.price:.6f}")

###############################################################################
# Or use fixed multiples of spot: calls integrate up to 100 * spot and puts
# down to 0.01 * spot.

spec = OptionSpec(spot=1.0, strike=1.0, rate=0.03, maturity=1.0)
print(truncated_price(Cauchy(), spec, ExplicitMultiple()).to_dict())
put = OptionSpec(spot=1.0, strike=1.0, rate=0.03, maturity=1.0, side="put")
print(truncated_price(Cauchy(), put, ExplicitMultiple()).to_dict())
