"""
Checking everything against brute force
=======================================

For small n every standard deal can be played.  The counts collected this
way must equal the recurrence tables exactly, and the extreme game lengths
n and 2n - 1 must both occur.
"""
from memorygame import exhaustive_stats, longest_deal, play, shortest_deal
from memorygame.verify import verify_all, verify_oracle

for n in range(1, 8):
    s = exhaustive_stats(n)
    report = verify_oracle(n)
    dist = dict(sorted(s.length_distribution.items()))
    print(f"n={n}: {s.deal_count:>6} deals, mean {s.exact_mean_length} -> {report.summary()}")
    print(f"      lengths {dist}")

print()
for n in (4, 8, 16):
    print(f"n={n}: shortest deal {play(shortest_deal(n)).moves} moves, longest deal {play(longest_deal(n)).moves} moves")

###############################################################################
# Identities, bounds and shape properties of the exact rows up to n = 60.

report = verify_all(60)
print("\n" + report.summary())
