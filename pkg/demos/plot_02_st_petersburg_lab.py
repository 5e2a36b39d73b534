"""
Simulating the St. Petersburg game
==================================

Feller's argument sets a per-play fee of ``log2(n)`` for ``n`` plays.  The
median of many simulated session means tracks that fee, while the
two-banker split shows the fee depends on how the plays are grouped.
"""

from stpricing import SimulationConfig, feller_check, feller_fair_fee, two_banker_demo, verify_decomposition
from stpricing.lab import simulate_session

config = SimulationConfig(seed=7, num_plays=1024)
print(simulate_session(config))

###############################################################################
# Single-session means are dominated by rare jackpots, so compare the median
# of 200 session means with the fee.

for n in (2**10, 2**13, 2**16):
    check = feller_check(SimulationConfig(seed=1, num_plays=n), num_sessions=200)
    print(f"n={n:>6}  fee={check.feller_fee:5.1f}  median mean payout={check.median_mean_payout:7.3f}")

###############################################################################
# 1024 plays at each of two bankers cost 20480 ducats at per-banker fees,
# but 2048 plays at one banker would cost 2048 * 11 = 22528.

report = two_banker_demo(SimulationConfig(1, 1024), SimulationConfig(2, 1024))
print(report.fee_at_per_banker_price, report.fee_at_combined_price, report.empirical_total_payout)
print("fee for 2048 plays:", feller_fair_fee(2048))

###############################################################################
# One play of the game pays exactly what the whole family of Lottery Games
# 1, 2, 3, ... pays on the same coin sequence, and each lottery is worth one
# ducat.  Checked exhaustively up to depth 50 with exact integers.

print(verify_decomposition(50).mismatches, "mismatches")
