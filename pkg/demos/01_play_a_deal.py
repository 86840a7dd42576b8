"""
Playing one deal
================

Optimal play with perfect memory is deterministic once unknown cards are
flipped left to right, so a deal fully determines the game.  This script
plays a 12-card deal, prints the move log, and shows that the move count can
be read off the deal's block structure without playing at all.
"""
from memorygame import blocks, length_from_blocks, parse_deal, play, standardize

deal = parse_deal("1 2 1 6 2 3 3 5 4 4 5 6")
trace = play(deal, verbose=True)
for line in trace.log:
    print(line)
print(f"\n{trace.moves} moves, {trace.lucky_moves} lucky, first match at position {trace.first_match_position}")

###############################################################################
# Blocks end at each second occurrence.  Odd blocks cost (b+1)/2 moves, even
# lucky blocks b/2, other even blocks b/2 + 1, which adds up to 3n/2 + e/2 - l.

profile = blocks(deal)
print("block lengths:", profile.lengths)
print("lucky blocks: ", [i for i, f in enumerate(profile.lucky, 1) if f])
print("e =", profile.e, " l =", profile.l, " -> length", length_from_blocks(profile))

###############################################################################
# Relabelling the pairs changes nothing: both deals below share one pairing
# network and therefore one standard representative.

twin = parse_deal("3 5 3 1 5 4 4 6 2 2 6 1")
print("\nsame standard form:", standardize(twin) == standardize(deal))
print("same game length:  ", play(twin).moves == trace.moves)
