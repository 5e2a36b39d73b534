"""
Pricing a game nobody can quote
===============================

The St. Petersburg game pays ``2**n`` when the first head shows on toss
``n``.  Its expectation diverges, so a seller bound to pay out can never
quote it.  A buyer who ignores a tiny tail of outcomes still arrives at a
finite price.
"""

from stpricing import (
    BuyerProfile,
    buyer_accepts,
    buyer_max_price,
    expectation,
    make_finite,
    seller_min_price_committed,
    seller_quote_closeable,
    st_petersburg,
    truncated_expectation,
)

game = st_petersburg()
print("full expectation:", expectation(game))
print("seller price if the contract must run to the end:", seller_min_price_committed(game))

###############################################################################
# Ignore every outcome rarer than one in 2**28 (close to the jackpot odds of
# a large national lottery).  Only the first 28 outcomes survive, and each
# contributes exactly one ducat.

eps = 2.0**-28
result = truncated_expectation(game, eps)
print(result)

###############################################################################
# The cost-effectiveness factor ``k`` scales what the buyer will pay.  Someone
# who finds the game a poor deal might use ``k = 0.5``.

for k in (1.0, 0.5):
    profile = BuyerProfile(eps, k)
    print(f"k={k}: pays at most {buyer_max_price(game, profile)}, accepts 20? {buyer_accepts(game, profile, 20)}")

###############################################################################
# A seller able to close the position early quotes a markup over the
# truncated expectation.

print("closeable seller quote, k=1.5:", seller_quote_closeable(game, eps, 1.5))

###############################################################################
# On a bounded game, ignoring nothing recovers the textbook fair price.

die = make_finite([(i, 1 / 6) for i in range(1, 7)])
print("fair die, eps=0, k=1:", buyer_max_price(die, BuyerProfile(0.0, 1.0)))
