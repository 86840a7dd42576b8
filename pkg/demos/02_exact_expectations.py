"""
Exact expectations and the asymptotic formula
=============================================

The expected game length is an exact rational for every n.  Here it is
compared with (3 - 2 ln 2) n + 7/8 - 2 ln 2 for a range of n, along with the
expected number of lucky moves (tending to ln 2) and the expected position of
the first match (growing like sqrt(pi n)).
"""
import math

from memorygame import exact_tables
from memorygame.exact import (
    asymptotic_length,
    decimal_str,
    epsilon,
    epsilon_bound,
    expected_first_match,
    expected_length_exact,
    expected_lucky_exact,
)

shown = {1, 2, 3, 5, 10, 20, 50, 100, 200, 500}
print(f"{'n':>4} {'E[length]':>18} {'asymptote':>18} {'epsilon':>12} {'bound':>10} {'E[lucky]':>10} {'E[first]/sqrt(pi n)':>20}")
for t in exact_tables(max(shown)):
    if t.n not in shown:
        continue
    n = t.n
    length = expected_length_exact(n, t)
    ratio = float(expected_first_match(n)) / math.sqrt(math.pi * n)
    print(
        f"{n:>4} {decimal_str(length, 12):>18} {asymptotic_length(n):>18.10f} {epsilon(n, t):>12.3e} "
        f"{epsilon_bound(n):>10.3e} {float(expected_lucky_exact(n, t)):>10.6f} {ratio:>20.6f}"
    )
print(f"\nln 2 = {math.log(2):.6f}")

###############################################################################
# Reference values at n = 100: 160.8589 exactly and 160.8593
# from the asymptotic formula.

print(f"n=100: exact {float(expected_length_exact(100)):.4f}, asymptotic {asymptotic_length(100):.4f}")
