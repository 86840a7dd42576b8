"""Deals of the memory game and their pairing structure.

A deal is a row of ``2n`` face-down cards in which every label occurs exactly
twice.  Two deals that differ only by a relabelling of the pairs lead to the
same game, so each class is represented by its *standard* member: the deal
whose pairs are completed (second occurrences appear) in the order 1, 2, ..., n.

Positions and labels are 1-based throughout.
"""
from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from math import prod

import numpy as np

#: Refuse to enumerate more standard deals than this unless overridden.
DEFAULT_ENUMERATION_BUDGET = 10**8


class InvalidDealError(ValueError):
    pass


class BudgetExceededError(ValueError):
    """Raised when an exhaustive computation would exceed its budget."""


@dataclass(frozen=True)
class Deal:
    cards: tuple[int, ...]

    def __post_init__(self):
        cards = tuple(int(c) for c in self.cards)
        object.__setattr__(self, "cards", cards)
        if not cards or len(cards) % 2:
            raise InvalidDealError(f"a deal needs a positive even number of cards, got {len(cards)}")
        counts = Counter(cards)
        bad = sorted(label for label, k in counts.items() if k != 2)
        if bad:
            raise InvalidDealError(f"labels {bad} do not occur exactly twice")
        if min(cards) < 1:
            raise InvalidDealError("labels must be positive integers")

    @property
    def n(self) -> int:
        return len(self.cards) // 2

    def __len__(self) -> int:
        return len(self.cards)

    def __iter__(self):
        return iter(self.cards)

    def __str__(self) -> str:
        return " ".join(map(str, self.cards))


@dataclass(frozen=True)
class StandardDeal(Deal):
    def __post_init__(self):
        super().__post_init__()
        if not is_standard(self):
            raise InvalidDealError(f"deal {self} is not standard")


@dataclass(frozen=True)
class PairingNetwork:
    """Fixed-point-free involution on positions ``1..2n``.

    ``mate[p - 1]`` is the position connected to position ``p``.
    """

    mate: tuple[int, ...]

    def __post_init__(self):
        mate = tuple(int(q) for q in self.mate)
        object.__setattr__(self, "mate", mate)
        size = len(mate)
        if size == 0 or size % 2:
            raise InvalidDealError("a pairing network needs a positive even number of points")
        for p, q in enumerate(mate, start=1):
            if not 1 <= q <= size or q == p or mate[q - 1] != p:
                raise InvalidDealError(f"position {p} is not properly paired (mate {q})")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]]) -> PairingNetwork:
        mate = [0] * (2 * len(pairs))
        for p, q in pairs:
            if not (1 <= p <= len(mate) and 1 <= q <= len(mate)):
                raise InvalidDealError(f"pair {(p, q)} out of range")
            mate[p - 1], mate[q - 1] = q, p
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate) // 2

    def pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q in enumerate(self.mate, start=1) if p < q]


def parse_deal(text: str) -> Deal:
    """Parse ``"1 2 1 2"`` or a JSON array such as ``"[1, 2, 1, 2]"``."""
    text = text.strip()
    if text.startswith("["):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidDealError(f"malformed JSON deal: {exc}") from None
    else:
        values = text.replace(",", " ").split()
    try:
        cards = tuple(int(v) for v in values)
    except (TypeError, ValueError):
        raise InvalidDealError(f"deal {text!r} contains non-integer labels") from None
    return Deal(cards)


def _as_deal(d) -> Deal:
    return d if isinstance(d, Deal) else Deal(tuple(d))


def double_factorial_odd(n: int) -> int:
    """Return ``1 * 3 * 5 * ... * (2n - 1)``; the empty product for ``n = 0``."""
    return prod(range(1, 2 * n, 2))


def count_standard_deals(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return double_factorial_odd(n)


def is_standard(d) -> bool:
    cards = _as_deal(d).cards
    n = len(cards) // 2
    seen = set()
    expected = 1
    for c in cards:
        if c in seen:
            if c != expected:
                return False
            expected += 1
        else:
            seen.add(c)
    return expected == n + 1


def standardize(d) -> StandardDeal:
    """Relabel pairs by the order in which their second card appears."""
    cards = _as_deal(d).cards
    seen = set()
    relabel = {}
    for c in cards:
        if c in seen:
            relabel[c] = len(relabel) + 1
        else:
            seen.add(c)
    return StandardDeal(tuple(relabel[c] for c in cards))


def to_network(d) -> PairingNetwork:
    cards = _as_deal(d).cards
    first = {}
    mate = [0] * len(cards)
    for p, c in enumerate(cards, start=1):
        if c in first:
            q = first.pop(c)
            mate[p - 1], mate[q - 1] = q, p
        else:
            first[c] = p
    return PairingNetwork(tuple(mate))


def from_network(net: PairingNetwork) -> StandardDeal:
    cards = [0] * len(net.mate)
    label = 0
    for p, q in enumerate(net.mate, start=1):
        if q < p:
            label += 1
            cards[p - 1] = cards[q - 1] = label
    return StandardDeal(tuple(cards))


def _insertions(n: int) -> Iterator[list[int]]:
    # outermost loop is the slot of the first copy of n
    if n == 1:
        yield [1, 1]
        return
    for slot in range(2 * n - 1):
        for base in _insertions(n - 1):
            yield base[:slot] + [n] + base[slot:] + [n]


def enumerate_standard_deals(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[StandardDeal]:
    """Yield every standard deal with ``n`` pairs exactly once.

    Deals are built by inserting the first copy of ``n`` into one of the
    ``2n - 1`` slots of a smaller standard deal and appending the second
    copy; the order is lexicographic in the insertion slots, largest label
    first.
    """
    total = count_standard_deals(n)
    if total > budget:
        raise BudgetExceededError(
            f"n={n} has {total} standard deals, above the enumeration budget of {budget}"
        )
    for cards in _insertions(n):
        # already standard by construction; skip re-validation for speed
        deal = object.__new__(StandardDeal)
        object.__setattr__(deal, "cards", tuple(cards))
        yield deal


def enumerate_slot(n: int, slot: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[StandardDeal]:
    """Standard deals whose first copy of ``n`` sits at 0-based index ``slot``.

    The ``2n - 1`` slots partition the full enumeration.
    """
    if not 0 <= slot < 2 * n - 1:
        raise ValueError(f"slot must be in [0, {2 * n - 2}], got {slot}")
    total = count_standard_deals(n)
    if total > budget:
        raise BudgetExceededError(
            f"n={n} has {total} standard deals, above the enumeration budget of {budget}"
        )
    bases = _insertions(n - 1) if n > 1 else iter([[]])
    for base in bases:
        deal = object.__new__(StandardDeal)
        object.__setattr__(deal, "cards", tuple(base[:slot] + [n] + base[slot:] + [n]))
        yield deal


def make_rng(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def shuffled_deal(n: int, rng=None) -> Deal:
    """Uniformly shuffled labelled deck ``1 1 2 2 ... n n``."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    rng = make_rng(rng)
    cards = np.repeat(np.arange(1, n + 1), 2)
    rng.shuffle(cards)
    return Deal(tuple(cards.tolist()))


def random_standard_deal(n: int, rng=None) -> StandardDeal:
    """Uniform sample from the standard deals with ``n`` pairs.

    Every standard deal has exactly ``n!`` labelled preimages, so
    standardizing a uniform shuffle is uniform.
    """
    return standardize(shuffled_deal(n, rng))


def shortest_deal(n: int) -> StandardDeal:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return StandardDeal(tuple(c for i in range(1, n + 1) for c in (i, i)))


def longest_pattern(n: int) -> tuple[int, ...]:
    """Candidate deal ``1 2 3 1 4 2 ... k k-2 ... n n-2 n-1 n``."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n == 1:
        return (1, 1)
    cards = [1, 2]
    for k in range(3, n + 1):
        cards += [k, k - 2]
    cards += [n - 1, n]
    return tuple(cards)


def longest_deal(n: int) -> StandardDeal:
    """A standard deal whose optimal game takes ``2n - 1`` moves.

    The pattern is checked by actually playing it.
    """
    from .game import play

    deal = StandardDeal(longest_pattern(n))
    moves = play(deal).moves
    if moves != 2 * n - 1:
        raise RuntimeError(f"longest-deal pattern failed for n={n}: {moves} moves")
    return deal


def longest_deal_bruteforce(n: int, max_n: int = 6) -> tuple[int, list[StandardDeal]]:
    """Maximum game length over all standard deals and the deals attaining it."""
    from .game import play

    if n > max_n:
        raise BudgetExceededError(f"brute-force search is limited to n <= {max_n}, got n={n}")
    best, winners = 0, []
    for deal in enumerate_standard_deals(n):
        moves = play(deal).moves
        if moves > best:
            best, winners = moves, [deal]
        elif moves == best:
            winners.append(deal)
    return best, winners
