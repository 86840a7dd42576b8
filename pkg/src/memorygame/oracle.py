"""Exhaustive ground truth: play every standard deal for small ``n``."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .deals import BudgetExceededError, count_standard_deals, enumerate_slot
from .game import length_from_blocks, play

DEFAULT_MAX_N = 7


@dataclass
class ExhaustiveStats:
    n: int
    deal_count: int = 0
    length_distribution: Counter = field(default_factory=Counter)
    a_counts: Counter = field(default_factory=Counter)
    b_counts: Counter = field(default_factory=Counter)
    l_counts: Counter = field(default_factory=Counter)
    total_lucky: int = 0
    total_first_match: int = 0
    formula_mismatches: int = 0

    def add(self, trace) -> None:
        self.deal_count += 1
        self.length_distribution[trace.moves] += 1
        self.a_counts[trace.first_match_position] += 1
        for b, lucky in zip(trace.blocks.lengths, trace.blocks.lucky):
            self.b_counts[b] += 1
            if lucky:
                self.l_counts[b] += 1
        self.total_lucky += trace.lucky_moves
        self.total_first_match += trace.first_match_position
        if length_from_blocks(trace.blocks) != trace.moves:
            self.formula_mismatches += 1

    def merge(self, other: ExhaustiveStats) -> ExhaustiveStats:
        if other.n != self.n:
            raise ValueError("cannot merge statistics for different n")
        self.deal_count += other.deal_count
        self.length_distribution.update(other.length_distribution)
        self.a_counts.update(other.a_counts)
        self.b_counts.update(other.b_counts)
        self.l_counts.update(other.l_counts)
        self.total_lucky += other.total_lucky
        self.total_first_match += other.total_first_match
        self.formula_mismatches += other.formula_mismatches
        return self

    @property
    def exact_mean_length(self) -> Fraction:
        return Fraction(sum(k * c for k, c in self.length_distribution.items()), self.deal_count)

    @property
    def exact_mean_lucky(self) -> Fraction:
        return Fraction(self.total_lucky, self.deal_count)

    @property
    def exact_mean_first_match(self) -> Fraction:
        return Fraction(self.total_first_match, self.deal_count)

    def to_dict(self) -> dict:
        def table(c):
            return {str(k): c[k] for k in sorted(c)}

        mean = self.exact_mean_length
        return {
            "n": self.n,
            "deal_count": self.deal_count,
            "length_distribution": table(self.length_distribution),
            "a_counts": table(self.a_counts),
            "b_counts": table(self.b_counts),
            "l_counts": table(self.l_counts),
            "total_lucky": self.total_lucky,
            "exact_mean_length": f"{mean.numerator}/{mean.denominator}",
            "mean_length": float(mean),
        }


def _slot_stats(n: int, slot: int) -> ExhaustiveStats:
    stats = ExhaustiveStats(n)
    for deal in enumerate_slot(n, slot, budget=float("inf")):
        stats.add(play(deal))
    return stats


def exhaustive_stats(n: int, max_n: int = DEFAULT_MAX_N, workers: int = 1) -> ExhaustiveStats:
    """Aggregate exact counts over all ``(2n-1)!!`` standard deals.

    The work splits into ``2n - 1`` independent parts by where the first copy
    of ``n`` sits; ``workers > 1`` runs them in separate processes.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > max_n:
        raise BudgetExceededError(
            f"exhaustive enumeration of n={n} ({count_standard_deals(n)} deals) exceeds max_n={max_n}"
        )
    slots = range(2 * n - 1)
    total = ExhaustiveStats(n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_slot_stats, [n] * len(slots), slots):
                total.merge(part)
    else:
        for slot in slots:
            total.merge(_slot_stats(n, slot))
    return total
