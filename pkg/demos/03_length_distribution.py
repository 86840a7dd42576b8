"""
Distribution of game lengths for n = 100
========================================

There is no recurrence for the full distribution, so it is estimated by
simulation: one million uniformly shuffled deals, played with the same
strategy as ``memorygame.play``.  The histogram is written as plot-ready CSV;
if matplotlib is installed a log-scale plot is saved next to it.
"""
import sys
from pathlib import Path

from memorygame import compare_to_exact, simulate

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 10**6
hist = simulate(100, trials, seed=42, workers=4)
print(f"mean length {hist.mean:.4f} (se {hist.standard_error():.4f})")
print(f"fraction of games with length in [157, 165]: {hist.fraction_between(157, 165):.4f}")
print(f"observed range: {min(hist.bins)}..{max(hist.bins)}")

cmp = compare_to_exact(hist)
print(f"z-scores vs exact: length {cmp.z_length:+.2f}, lucky {cmp.z_lucky:+.2f}, first match {cmp.z_first_match:+.2f}")

out = Path("length_distribution_n100.csv")
out.write_text(hist.to_csv())
print(f"wrote {out}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

xs = sorted(hist.bins)
fig, ax = plt.subplots(figsize=(6, 3.5))
ax.bar(xs, [hist.bins[x] / hist.trials for x in xs], width=1.0)
ax.set_yscale("log")
ax.set_xlabel("game length (moves)")
ax.set_ylabel("fraction of games")
fig.tight_layout()
fig.savefig("length_distribution_n100.png", dpi=120)
print("wrote length_distribution_n100.png")
