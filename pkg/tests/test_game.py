import numpy as np
import pytest
from hypothesis import given

from memorygame.deals import InvalidDealError, enumerate_standard_deals, shuffled_deal, standardize
from memorygame.game import (
    BlockProfile,
    block_move_cost,
    block_profile,
    blocks,
    first_match_position,
    length_from_blocks,
    play,
)

from test_deals import SAMPLE_DEAL, deals


def check_trace_invariants(d, t):
    n = d.n
    assert n <= t.moves <= 2 * n - 1
    assert 2 * n <= t.flips <= 4 * n
    assert t.flips == 2 * t.moves
    assert all(1 <= c <= 2 for c in t.flip_counts)
    # the last card uncovered is never flipped twice
    assert t.flip_counts[-1] == 1
    assert 2 <= t.first_match_position <= n + 1
    assert sorted(t.removed_order) == sorted(set(d.cards))
    assert t.moves == length_from_blocks(t.blocks)
    assert t.lucky_moves == t.blocks.l
    for b, lucky, cost in zip(t.blocks.lengths, t.blocks.lucky, t.block_moves):
        assert cost == block_move_cost(b, lucky)


class TestPlay:
    def test_example_1(self):
        t = play(SAMPLE_DEAL)
        assert (t.moves, t.lucky_moves, t.first_match_position) == (9, 1, 3)
        assert t.removed_order == (1, 2, 3, 4, 5, 6)

    @pytest.mark.parametrize("n", [1, 2, 5, 30])
    def test_shortest_pattern(self, n):
        t = play([c for i in range(1, n + 1) for c in (i, i)])
        assert t.moves == n and t.lucky_moves == n

    def test_hand_traced(self):
        assert play((1, 2, 1, 3, 2, 3)).moves == 5

    def test_verbose_log(self):
        t = play(SAMPLE_DEAL, verbose=True)
        assert len(t.log) == 9
        assert "lucky" in t.log[4]
        assert "log" in t.to_dict(verbose=True)
        assert t.to_dict()["blocks"]["lengths"] == [3, 2, 2, 3, 1, 1]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_exhaustive_invariants(self, n):
        for d in enumerate_standard_deals(n):
            t = play(d)
            check_trace_invariants(d, t)
            assert t.removed_order == tuple(range(1, n + 1))

    def test_random_invariants(self):
        rng = np.random.default_rng(3)
        for n in range(8, 65, 8):
            for _ in range(300):
                d = shuffled_deal(n, rng)
                check_trace_invariants(d, play(d))

    @given(deals(max_n=12))
    def test_label_invariance(self, d):
        a, b = play(d), play(standardize(d))
        assert (a.moves, a.flips, a.lucky_moves, a.first_match_position) == (
            b.moves, b.flips, b.lucky_moves, b.first_match_position)
        check_trace_invariants(d, a)


class TestBlocks:
    def test_example_1(self):
        p = blocks(SAMPLE_DEAL)
        assert p.lengths == (3, 2, 2, 3, 1, 1)
        assert p.lucky == (False, False, True, True, False, False)
        assert (p.e, p.l) == (2, 1)

    def test_all_lucky(self):
        p = blocks((1, 1, 2, 2))
        assert p.lengths == (2, 2) and p.lucky == (True, True) and (p.e, p.l) == (2, 2)

    def test_odd_lucky_block(self):
        p = blocks((2, 1, 1, 2))
        assert p.lengths == (3, 1) and p.lucky == (True, False) and (p.e, p.l) == (0, 0)

    def test_requires_standard(self):
        with pytest.raises(InvalidDealError):
            blocks((1, 2, 2, 1))
        assert block_profile((1, 2, 2, 1)) == blocks((2, 1, 1, 2))

    @pytest.mark.parametrize(
        "lengths, lucky",
        [((3, 2), (False, False)), ((1, 3), (True, False)), ((4, 0, 2), (False,) * 3), ((2,), (True, True))],
    )
    def test_profile_validation(self, lengths, lucky):
        with pytest.raises(ValueError):
            BlockProfile(lengths, lucky)


class TestLengthFormula:
    def test_example_1(self):
        assert length_from_blocks(blocks(SAMPLE_DEAL)) == 9

    def test_small(self):
        assert length_from_blocks(BlockProfile((2, 2), (True, True))) == 2 == play((1, 1, 2, 2)).moves
        assert length_from_blocks(BlockProfile((3, 1), (False, False))) == 3 == play((1, 2, 1, 2)).moves

    def test_corrupted(self):
        # bypass validation to build an inconsistent profile
        p = object.__new__(BlockProfile)
        object.__setattr__(p, "lengths", (2, 1))
        object.__setattr__(p, "lucky", (False, False))
        with pytest.raises(ValueError, match="corrupted"):
            length_from_blocks(p)


class TestFirstMatch:
    @pytest.mark.parametrize("cards, pos", [((1, 1, 2, 2), 2), (SAMPLE_DEAL, 3), ((1, 2, 3, 4, 1, 2, 3, 4), 5)])
    def test_values(self, cards, pos):
        assert first_match_position(cards) == pos

    @given(deals())
    def test_equals_first_block(self, d):
        assert first_match_position(d) == blocks(standardize(d)).lengths[0] == play(d).first_match_position
