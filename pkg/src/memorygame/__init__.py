"""Exact and Monte Carlo analysis of solitaire memory played with perfect recall."""
from .deals import (
    BudgetExceededError,
    Deal,
    InvalidDealError,
    PairingNetwork,
    StandardDeal,
    count_standard_deals,
    enumerate_standard_deals,
    from_network,
    is_standard,
    longest_deal,
    parse_deal,
    random_standard_deal,
    shortest_deal,
    standardize,
    to_network,
)
from .exact import (
    ExactSummary,
    ExactTable,
    FirstMatchTable,
    asymptotic_length,
    db_even_sum,
    dl_even_sum,
    epsilon,
    exact_summary,
    exact_table,
    exact_tables,
    expected_first_match,
    expected_length_exact,
    expected_lucky_exact,
    first_match_table,
)
from .game import BlockProfile, GameTrace, blocks, first_match_position, length_from_blocks, play
from .oracle import ExhaustiveStats, exhaustive_stats
from .simulation import Histogram, compare_to_exact, simulate
from .verify import verify_bounds_and_shape, verify_identities

__version__ = "0.1.0"
