"""Checks of the identities, bounds and shape properties of the exact rows.

Each check is exact wherever the quantity is rational.  Infinite sums over
``j`` are folded into closed form with the telescoping tails

    sum_{j >= K} 2/(j(j+1)(j+2)) = 1/(K(K+1)),    sum_{j >= K} 1/(j(j-1)) = 1/(K-1),

so e.g. ``sum_{j>=2} db(n, j) = 1/2`` is verified as an equality of rationals.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    ExactTable,
    db_recurrence_rows,
    dl_recurrence_rows,
    exact_table,
    exact_tables,
    first_match_tables,
)
from .deals import double_factorial_odd


@dataclass(frozen=True)
class Check:
    name: str
    n: int
    passed: bool
    detail: str = ""
    j: int | None = None

    def __str__(self) -> str:
        where = f"n={self.n}" + (f", j={self.j}" if self.j is not None else "")
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({where}){': ' + self.detail if self.detail else ''}"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name, n, passed, detail="", j=None):
        self.checks.append(Check(name, n, bool(passed), detail, j))

    def extend(self, other: Report) -> Report:
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        return f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"


def db_sum_from_2(t: ExactTable) -> Fraction:
    """``sum_{j >= 2} db(n, j)`` with the tail past ``n+2`` in closed form."""
    J = t.max_j
    finite = sum((t.db[j] for j in range(2, J + 1)), Fraction(0))
    return finite - Fraction(2 * t.n + 1, (J + 1) * (J + 2))


def dl_sum_from_2(t: ExactTable) -> Fraction:
    J = t.max_j
    finite = sum((t.dl[j] for j in range(2, J + 1)), Fraction(0))
    return finite - Fraction(1, J)


def verify_identities(n: int, table: ExactTable | None = None) -> Report:
    t = table or exact_table(n)
    n = t.n
    r = Report()
    m = 2 * n - 1
    db1 = t.db[1]
    r.add("db(n,1) = -1", n, db1 == -1, f"got {db1}")
    db2 = t.db[2]
    r.add("db(n,2) = 3/(4(2n-1))", n, db2 == Fraction(3, 4 * m), f"got {db2}")
    if n >= 2:
        r.add("db(n,3) = 2 db(n,2)", n, t.db[3] == 2 * db2, f"got {t.db[3]}")
        target = Fraction(1, 2 * m)
        r.add("dl(n,2) = 1/(2(2n-1))", n, t.dl[2] == target, f"got {t.dl[2]}")
        r.add("dl(n,3) = 1/(2(2n-1))", n, t.dl[3] == target, f"got {t.dl[3]}")
    s = db_sum_from_2(t)
    r.add("sum_{j>=2} db(n,j) = 1/2", n, s == Fraction(1, 2), f"got {s}")
    s = dl_sum_from_2(t)
    r.add("sum_{j>=2} dl(n,j) = 0", n, s == 0, f"got {s}")
    r.add("sum_j el(n,j) = 1", n, sum(t.l) == t.total, f"got {Fraction(sum(t.l), t.total)}")
    r.add("sum_j eb(n,j) = n", n, sum(t.b) == n * t.total, f"got {Fraction(sum(t.b), t.total)}")
    r.add("sum_j a(n,j) = (2n-1)!!", n, sum(t.a) == t.total)
    r.add("sum_j j a(n,j) = 2^n n!", n, sum(j * c for j, c in enumerate(t.a)) == 2**n * math.factorial(n))
    return r


def wallis_ratio(n: int) -> Fraction:
    """``(2*4*...*(2n-2)) / (3*5*...*(2n-1))``, 1 for ``n = 1``."""
    return Fraction(2 ** (n - 1) * math.factorial(n - 1), double_factorial_odd(n))


def monotone_shape(seq: Sequence, pattern: str) -> int | tuple[int, int] | None:
    """Smallest witnesses for an up-down-up (``"udu"``) or down-up (``"du"``) shape.

    ``seq`` maps offsets ``0..len-1`` to the values at ``j = 2, 3, ...``;
    the returned witnesses are in ``j`` units.  ``None`` when no witness
    within the sequence works.
    """
    k = len(seq)
    up = [seq[i] <= seq[i + 1] for i in range(k - 1)]
    down = [seq[i] >= seq[i + 1] for i in range(k - 1)]
    # prefix_up[i]: up holds on steps 0..i-1; suffix_up[i]: up holds on steps i..k-2
    prefix_up = [True]
    prefix_down = [True]
    for u, d in zip(up, down):
        prefix_up.append(prefix_up[-1] and u)
        prefix_down.append(prefix_down[-1] and d)
    suffix_up = [True] * k
    for i in range(k - 2, -1, -1):
        suffix_up[i] = suffix_up[i + 1] and up[i]
    down_count = [0]
    for d in down:
        down_count.append(down_count[-1] + (not d))
    if pattern == "du":
        for p in range(k):
            if prefix_down[p] and suffix_up[p]:
                return p + 2
        return None
    if pattern == "udu":
        for a in range(k):
            if not prefix_up[a]:
                break
            for b in range(a + 1, k):
                if down_count[b] - down_count[a] == 0 and suffix_up[b]:
                    return a + 2, b + 2
        return None
    raise ValueError(f"unknown pattern {pattern!r}")


def shape_witnesses(t: ExactTable) -> tuple[tuple[int, int] | None, int | None]:
    """``(k_n, l_n)`` for the ``db`` row and ``p_n`` for the ``dl`` row.

    Rows are inspected for ``j = 2..n+3``; past ``n+2`` both rows are
    negative tails increasing to 0, so that range settles the shape.
    """
    J = t.max_j + 1
    db = [t.db_at(j) for j in range(2, J + 1)]
    dl = [t.dl_at(j) for j in range(2, J + 1)]
    kl = monotone_shape(db, "udu")
    if kl is not None and kl[1] > t.n + 2:
        kl = None
    p = monotone_shape(dl, "du")
    if p is not None and p > t.n + 2:
        p = None
    return kl, p


def verify_bounds_and_shape(n: int, table: ExactTable | None = None) -> Report:
    t = table or exact_table(n)
    n = t.n
    r = Report()
    W = Fraction(3, 4) * wallis_ratio(n)
    wallis = 0.75 * math.sqrt(math.pi / (2 * (2 * n - 1)))
    dl_cap = Fraction(1, 2 * (2 * n - 1))
    # past n+3 both deviations are pure tails of decreasing magnitude
    bad_df = bad_wallis = bad_dl = 0
    worst = Fraction(0)
    for j in range(2, t.max_j + 2):
        v = abs(t.db_at(j))
        worst = max(worst, v)
        if v > W:
            bad_df += 1
            r.add("|db| <= (3/4) (2*4*..*(2n-2))/(3*5*..*(2n-1))", n, False, f"|db|={float(v)} > {float(W)}", j)
        if float(v) > wallis:
            bad_wallis += 1
            r.add("|db| <= (3/4) sqrt(pi/(2(2n-1)))", n, False, f"|db|={float(v)} > {wallis}", j)
        w = abs(t.dl_at(j))
        if w > dl_cap:
            bad_dl += 1
            r.add("|dl| <= 1/(2(2n-1))", n, False, f"|dl|={float(w)} > {float(dl_cap)}", j)
    if not bad_df:
        r.add("db double-factorial bound", n, True, f"max |db|={float(worst):.6g} <= {float(W):.6g}")
    if not bad_wallis:
        r.add("db Wallis bound", n, True, f"<= {wallis:.6g}")
    if not bad_dl:
        r.add("dl bound", n, True, f"<= {float(dl_cap):.6g}")
    kl, p = shape_witnesses(t)
    r.add("db row up-down-up (k_n, l_n)", n, kl is not None, f"witness {kl}")
    r.add("dl row down-up (p_n)", n, p is not None, f"witness {p}")
    return r


def verify_dual_route(max_n: int, max_j: int | None = None) -> Report:
    """Both ``db`` and ``dl`` from their own recurrences agree with the count tables."""
    r = Report()
    max_j = max_j or max_n + 2
    rows = zip(exact_tables(max_n), db_recurrence_rows(max_n, max_j), dl_recurrence_rows(max_n, max_j))
    for t, db_row, dl_row in rows:
        bad = [j for j in range(1, max_j + 1) if db_row[j] != t.db_at(j)]
        r.add("db direct recurrence = eb - profile", t.n, not bad, f"mismatch at j={bad[:5]}" if bad else "")
        bad = [j for j in range(2, max_j + 1) if dl_row[j] != t.dl_at(j)]
        r.add("dl direct recurrence = el - profile", t.n, not bad, f"mismatch at j={bad[:5]}" if bad else "")
    return r


def verify_first_match(max_n: int) -> Report:
    r = Report()
    for t in first_match_tables(max_n):
        n = t.n
        total = double_factorial_odd(n)
        r.add("sum_j a(n,j) = (2n-1)!!", n, t.total == total)
        r.add("sum_j j a(n,j) = 2^n n!", n, t.weighted_sum == 2**n * math.factorial(n))
        closed = Fraction(4**n, math.comb(2 * n, n))
        r.add("E[first match] = 4^n / C(2n,n)", n, Fraction(t.weighted_sum, total) == closed)
    return r


def verify_all(max_n: int) -> Report:
    r = Report()
    for t in exact_tables(max_n):
        r.extend(verify_identities(t.n, t))
        r.extend(verify_bounds_and_shape(t.n, t))
    r.extend(verify_dual_route(max_n))
    r.extend(verify_first_match(max_n))
    return r


def verify_oracle(n: int, max_n: int = 7) -> Report:
    """Exhaustive enumeration against the recurrence tables, exactly."""
    from .exact import expected_length_exact, expected_lucky_exact
    from .oracle import exhaustive_stats

    s = exhaustive_stats(n, max_n=max_n)
    t = exact_table(n)
    r = Report()
    r.add("deal count = (2n-1)!!", n, s.deal_count == t.total)
    r.add("a(n,j) recurrence = enumeration", n, all(s.a_counts[j] == t.a[j] for j in range(t.max_j + 1)))
    r.add("b(n,j) recurrence = enumeration", n, all(s.b_counts[j] == t.b[j] for j in range(t.max_j + 1)))
    r.add("l(n,j) recurrence = enumeration", n, all(s.l_counts[j] == t.l[j] for j in range(2, t.max_j + 1)))
    r.add("mean length recurrence = enumeration", n, s.exact_mean_length == expected_length_exact(n, t))
    r.add("mean lucky recurrence = enumeration", n, s.exact_mean_lucky == expected_lucky_exact(n, t))
    r.add("play length = 3n/2 + e/2 - l for every deal", n, s.formula_mismatches == 0, f"{s.formula_mismatches} mismatches")
    lengths = s.length_distribution
    r.add("lengths attain n and 2n-1 and stay within", n, min(lengths) == n and max(lengths) == 2 * n - 1)
    return r
