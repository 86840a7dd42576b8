import pytest

from memorygame.deals import BudgetExceededError
from memorygame.exact import expected_length_exact
from memorygame.oracle import exhaustive_stats
from memorygame.verify import verify_oracle


def test_n2():
    s = exhaustive_stats(2)
    assert s.deal_count == 3
    assert dict(s.length_distribution) == {2: 1, 3: 2}
    assert dict(s.a_counts) == {2: 1, 3: 2}
    assert dict(s.b_counts) == {1: 2, 2: 2, 3: 2}
    assert dict(s.l_counts) == {2: 2, 3: 1}


def test_n1():
    s = exhaustive_stats(1)
    assert s.deal_count == 1 and dict(s.length_distribution) == {1: 1}


def test_n6_mean():
    assert exhaustive_stats(6).exact_mean_length == expected_length_exact(6)


@pytest.mark.parametrize("n", range(1, 7))
def test_against_recurrences(n):
    r = verify_oracle(n)
    assert r.passed, [str(c) for c in r.failures]


def test_parallel_merge_matches_serial():
    a = exhaustive_stats(5)
    b = exhaustive_stats(5, workers=2)
    assert a.to_dict() == b.to_dict()


def test_budget():
    with pytest.raises(BudgetExceededError, match="max_n=7"):
        exhaustive_stats(8)
    with pytest.raises(ValueError):
        exhaustive_stats(0)


def test_merge_rejects_other_n():
    with pytest.raises(ValueError):
        exhaustive_stats(2).merge(exhaustive_stats(3))


def test_export_shape():
    s = exhaustive_stats(3)
    d = s.to_dict()
    m = expected_length_exact(3)
    assert d["exact_mean_length"] == f"{m.numerator}/{m.denominator}"
    assert sum(d["length_distribution"].values()) == 15
