"""Optimal solitaire play with perfect memory.

The player repeatedly:

1. removes a pair whose two positions are both known, if there is one;
2. otherwise flips the leftmost never-flipped card, and
   a. if its mate's position is known, flips the mate and removes both;
   b. otherwise flips the next never-flipped card (removing the pair when
      the two happen to match, a *lucky* move).

Flipping unknown cards left to right makes the game a deterministic function
of the deal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .deals import Deal, InvalidDealError, _as_deal, is_standard


@dataclass(frozen=True)
class BlockProfile:
    """Lengths of the blocks ending at each second occurrence, with lucky flags."""

    lengths: tuple[int, ...]
    lucky: tuple[bool, ...]

    def __post_init__(self):
        n = len(self.lengths)
        if n == 0 or len(self.lucky) != n:
            raise ValueError("block profile needs one lucky flag per block")
        if sum(self.lengths) != 2 * n:
            raise ValueError(f"block lengths sum to {sum(self.lengths)}, expected {2 * n}")
        for b, flag in zip(self.lengths, self.lucky):
            if not 1 <= b <= n + 1:
                raise ValueError(f"block length {b} outside [1, {n + 1}]")
            if flag and b < 2:
                raise ValueError("a lucky block has length at least 2")

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def e(self) -> int:
        """Number of even-length blocks."""
        return sum(1 for b in self.lengths if b % 2 == 0)

    @property
    def l(self) -> int:  # noqa: E743
        """Number of even-length lucky blocks."""
        return sum(1 for b, f in zip(self.lengths, self.lucky) if f and b % 2 == 0)


@dataclass(frozen=True)
class GameTrace:
    n: int
    moves: int
    flips: int
    lucky_moves: int
    first_match_position: int
    removed_order: tuple[int, ...]
    block_moves: tuple[int, ...]
    blocks: BlockProfile
    flip_counts: tuple[int, ...] = field(repr=False)
    log: tuple[str, ...] = field(default=(), repr=False)

    def to_dict(self, verbose: bool = False) -> dict:
        out = {
            "n": self.n,
            "moves": self.moves,
            "flips": self.flips,
            "lucky_moves": self.lucky_moves,
            "first_match_position": self.first_match_position,
            "removed_order": list(self.removed_order),
            "blocks": {
                "lengths": list(self.blocks.lengths),
                "lucky": list(self.blocks.lucky),
                "e": self.blocks.e,
                "l": self.blocks.l,
            },
        }
        if verbose:
            out["log"] = list(self.log)
        return out


def block_profile(d) -> BlockProfile:
    """Block profile of any deal; labels do not matter."""
    cards = _as_deal(d).cards
    seen = set()
    lengths, lucky = [], []
    start = 0
    for p, c in enumerate(cards):
        if c in seen:
            b = p - start + 1
            lengths.append(b)
            lucky.append(b >= 2 and cards[p - 1] == c)
            start = p + 1
        else:
            seen.add(c)
    return BlockProfile(tuple(lengths), tuple(lucky))


def blocks(d) -> BlockProfile:
    """Block profile of a standard deal; block ``i`` ends at the second ``i``."""
    d = _as_deal(d)
    if not is_standard(d):
        raise InvalidDealError(f"deal {d} is not standard; standardize it first")
    return block_profile(d)


def block_move_cost(length: int, lucky: bool) -> int:
    """Moves spent flipping one block and removing its pair."""
    if length % 2:
        return (length + 1) // 2
    return length // 2 if lucky else length // 2 + 1


def length_from_blocks(p: BlockProfile) -> int:
    """Game length ``3n/2 + e/2 - l``."""
    twice = 3 * p.n + p.e - 2 * p.l
    if twice % 2:
        raise ValueError(f"corrupted block profile: 3n + e is odd (n={p.n}, e={p.e})")
    return twice // 2


def first_match_position(d) -> int:
    seen = set()
    for p, c in enumerate(_as_deal(d).cards, start=1):
        if c in seen:
            return p
        seen.add(c)
    raise AssertionError("unreachable for a valid deal")


def play(d, verbose: bool = False) -> GameTrace:
    d = d if isinstance(d, Deal) else Deal(tuple(d))
    cards = d.cards
    size = len(cards)
    n = size // 2
    flip_counts = [0] * size
    known = {}  # label -> position of its flipped, unremoved card
    pending = None  # (p, q) of a pair whose both positions are known
    nxt = 0
    moves = lucky = first_match = 0
    removed = []
    block_moves = []
    moves_at_removal = 0
    log = []

    def remove(label):
        nonlocal moves_at_removal
        removed.append(label)
        block_moves.append(moves - moves_at_removal)
        moves_at_removal = moves

    while len(removed) < n:
        moves += 1
        if pending is not None:
            p, q = pending
            pending = None
            flip_counts[p] += 1
            flip_counts[q] += 1
            remove(cards[p])
            if verbose:
                log.append(f"move {moves}: flip known pair at {p + 1},{q + 1} ({cards[p]}), remove")
            continue
        p = nxt
        nxt += 1
        c = cards[p]
        flip_counts[p] += 1
        if c in known:
            m = known.pop(c)
            first_match = first_match or p + 1
            flip_counts[m] += 1
            remove(c)
            if verbose:
                log.append(f"move {moves}: flip {p + 1} ({c}), mate known at {m + 1}, remove")
            continue
        q = nxt
        nxt += 1
        c2 = cards[q]
        flip_counts[q] += 1
        if c2 == c:
            first_match = first_match or q + 1
            lucky += 1
            remove(c)
            if verbose:
                log.append(f"move {moves}: flip {p + 1},{q + 1} ({c},{c2}), lucky match, remove")
            continue
        known[c] = p
        if c2 in known:
            first_match = first_match or q + 1
            pending = (known.pop(c2), q)
        else:
            known[c2] = q
        if verbose:
            log.append(f"move {moves}: flip {p + 1},{q + 1} ({c},{c2}), no match")

    return GameTrace(
        n=n,
        moves=moves,
        flips=sum(flip_counts),
        lucky_moves=lucky,
        first_match_position=first_match,
        removed_order=tuple(removed),
        block_moves=tuple(block_moves),
        blocks=block_profile(d),
        flip_counts=tuple(flip_counts),
        log=tuple(log),
    )


__all__ = [
    "BlockProfile",
    "GameTrace",
    "block_move_cost",
    "block_profile",
    "blocks",
    "first_match_position",
    "length_from_blocks",
    "play",
]
