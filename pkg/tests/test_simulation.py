from fractions import Fraction

import numpy as np
import pytest

from memorygame.exact import expected_lucky_exact
from memorygame.simulation import (
    GENERATOR,
    Histogram,
    compare_to_exact,
    deals_from_swaps,
    draw_swaps,
    play_batch,
    simulate,
)


def test_n1_all_mass_at_one():
    h = simulate(1, 500, seed=3)
    assert dict(h.bins) == {1: 500}
    assert h.variance == 0 and h.lucky_mean == 1 and h.first_match_mean == 2


@pytest.mark.parametrize("n", [1, 2, 7, 33])
def test_kernel_matches_reference_play(n):
    swaps = draw_swaps(n, 3000, np.random.default_rng(n))
    fast = play_batch(n, swaps)
    slow = play_batch(n, swaps, engine="python")
    for a, b in zip(fast, slow):
        assert np.array_equal(a, b)


def test_swaps_shuffle_uniformly():
    # every labelled arrangement of 1 1 2 2 has the same probability: 1122 appears 4/24 of the time
    swaps = draw_swaps(2, 120_000, np.random.default_rng(0))
    deals = deals_from_swaps(2, swaps)
    frac = sum(d.cards == (1, 1, 2, 2) for d in deals) / len(deals)
    assert abs(frac - 4 / 24) < 0.005


def test_reproducible():
    a = simulate(12, 20_000, seed=99, workers=3)
    b = simulate(12, 20_000, seed=99, workers=3)
    assert a.to_dict() == b.to_dict()
    assert a.to_csv() == b.to_csv()
    c = simulate(12, 20_000, seed=100, workers=3)
    assert a.bins != c.bins


def test_invariants():
    h = simulate(30, 50_000, seed=5, workers=2)
    assert sum(h.bins.values()) == h.trials == 50_000
    assert min(h.bins) >= 30 and max(h.bins) <= 59
    assert h.generator == GENERATOR and h.workers == 2 and h.seed == 5


def test_n2_mean_and_bins():
    h = simulate(2, 10**6, seed=2)
    assert abs(h.mean - 8 / 3) < 0.005
    assert set(h.bins) == {2, 3}
    assert abs(h.bins[2] / h.trials - 1 / 3) < 0.005
    assert abs(h.bins[3] / h.trials - 2 / 3) < 0.005


def test_lucky_mean_n20():
    h = simulate(20, 200_000, seed=8)
    assert abs(h.lucky_mean - float(expected_lucky_exact(20))) <= 3 * h.standard_error("lucky")
    cmp = compare_to_exact(h)
    assert cmp.max_abs_z() < 4


def test_merge_is_commutative():
    a = simulate(5, 1000, seed=1)
    b = simulate(5, 2000, seed=2)
    ab = Histogram(5).merge(a).merge(b)
    ba = Histogram(5).merge(b).merge(a)
    assert ab.bins == ba.bins and ab.length_sums == ba.length_sums and ab.trials == 3000
    with pytest.raises(ValueError):
        ab.merge(Histogram(6))


def test_exact_moments():
    h = Histogram(3)
    h.add_batch(np.array([3, 4, 5]), np.array([0, 1, 0]), np.array([2, 3, 4]))
    assert h.mean == 4 and h.variance == 1
    assert Fraction(h.lucky_mean).limit_denominator() == Fraction(1, 3)


def test_exports():
    h = simulate(4, 1000, seed=0)
    lines = h.to_csv().splitlines()
    assert lines[0] == "length,count"
    assert sum(int(l.split(",")[1]) for l in lines[1:]) == 1000
    assert '"generator"' in h.to_json()


@pytest.mark.parametrize("kwargs", [dict(n=0, trials=1), dict(n=2, trials=0), dict(n=2, trials=5, workers=0)])
def test_rejects_bad_input(kwargs):
    with pytest.raises(ValueError):
        simulate(**kwargs)


def test_refuses_oversized_run():
    with pytest.raises(ValueError, match="exceeds the limit"):
        simulate(5, 10**11)
