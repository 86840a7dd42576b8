"""Exact expectations for optimally played solitaire memory.

Everything here is computed over the uniform distribution on standard deals
with ``n`` pairs (there are ``(2n-1)!!`` of them).  For a block length ``j``:

* ``a(n, j)``: deals whose first match is at position ``j``;
* ``b(n, j)``: blocks of length ``j``, summed over all deals;
* ``l(n, j)``: lucky blocks of length ``j`` (``j >= 2``), summed over all deals;
* ``eb = b / (2n-1)!!`` and ``el = l / (2n-1)!!`` are the expected counts;
* ``db(n, j) = eb(n, j) - 2(2n+1)/(j(j+1)(j+2))`` and
  ``dl(n, j) = el(n, j) - 1/(j(j-1))`` are the deviations from the limiting
  profiles.

The integer counts are advanced row by row with the insertion recurrences.
Keeping ``eb``/``el`` as numerators over the shared denominator ``(2n-1)!!``
is the same recurrence with no gcd work per step, which is what makes
``n = 1000`` sweeps cheap.
"""
from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .deals import double_factorial_odd

DECIMAL_PREC = 60
FLOAT_TOL = 1e-9


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _ln2(prec: int = DECIMAL_PREC) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(2).ln()


def _to_decimal(x: Fraction, prec: int = DECIMAL_PREC) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(x.numerator) / Decimal(x.denominator)


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def decimal_str(x, digits: int = 15) -> str:
    """Render an exact or real value with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        x = _to_decimal(x, prec=digits + 10)
    return format(Decimal(x) if not isinstance(x, Decimal) else x, f".{digits}g")


def block_profile_limit(n: int, j: int) -> Fraction:
    """Limiting expected number of blocks of length ``j``."""
    return Fraction(2 * (2 * n + 1), j * (j + 1) * (j + 2))


def lucky_profile_limit(j: int) -> Fraction:
    """Limiting expected number of lucky blocks of length ``j`` (``j >= 2``)."""
    return Fraction(1, j * (j - 1))


# ---------------------------------------------------------------------------
# first match


@dataclass(frozen=True)
class FirstMatchTable:
    n: int
    a: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.a.values())

    @property
    def weighted_sum(self) -> int:
        return sum(j * c for j, c in self.a.items())


def _first_match_rows(max_n: int) -> Iterator[list[int]]:
    row = [0, 0, 1]  # index j
    yield row
    for n in range(2, max_n + 1):
        prev = row + [0]
        row = [0, 0] + [(2 * n - 1 - j) * prev[j] + (j - 1) * prev[j - 1] for j in range(2, n + 2)]
        yield row


def first_match_tables(max_n: int) -> Iterator[FirstMatchTable]:
    _check_n(max_n)
    for n, row in enumerate(_first_match_rows(max_n), start=1):
        yield FirstMatchTable(n, {j: row[j] for j in range(2, n + 2)})


def first_match_table(n: int) -> FirstMatchTable:
    n = _check_n(n)
    for table in first_match_tables(n):
        pass
    return table


def expected_first_match(n: int, route: str = "closed") -> Fraction:
    """Expected position of the first card that matches an earlier one.

    ``route="closed"`` uses ``4^n / C(2n, n)``; ``route="table"`` averages
    over the first-match counts.
    """
    n = _check_n(n)
    if route == "closed":
        return Fraction(4**n, math.comb(2 * n, n))
    if route == "table":
        t = first_match_table(n)
        return Fraction(t.weighted_sum, double_factorial_odd(n))
    raise ValueError(f"unknown route {route!r}")


def expected_first_match_float(n: int) -> float:
    """Float evaluation of ``4^n / C(2n, n)`` through log-gamma; fine for huge ``n``."""
    n = _check_n(n)
    return math.exp(2 * n * math.log(2) + 2 * math.lgamma(n + 1) - math.lgamma(2 * n + 1))


# ---------------------------------------------------------------------------
# block and lucky-block tables


@dataclass
class ExactTable:
    """Exact per-length rows for one ``n``.

    ``a``, ``b`` and ``l`` are integer count lists indexed by ``j`` in
    ``0..n+2``; ``total`` is ``(2n-1)!!``.  The rational rows ``eb``, ``el``,
    ``db``, ``dl`` are dicts over ``j <= n+2`` (``j >= 2`` for the lucky ones);
    beyond that the ``*_at`` accessors use the tail formulas.
    """

    n: int
    total: int
    a: list[int] = field(repr=False)
    b: list[int] = field(repr=False)
    l: list[int] = field(repr=False)  # noqa: E741

    @property
    def max_j(self) -> int:
        return self.n + 2

    def eb_at(self, j: int) -> Fraction:
        return Fraction(self.b[j], self.total) if j <= self.max_j else Fraction(0)

    def el_at(self, j: int) -> Fraction:
        if j < 2:
            raise KeyError("lucky blocks have length at least 2")
        return Fraction(self.l[j], self.total) if j <= self.max_j else Fraction(0)

    def db_at(self, j: int) -> Fraction:
        return self.eb_at(j) - block_profile_limit(self.n, j)

    def dl_at(self, j: int) -> Fraction:
        return self.el_at(j) - lucky_profile_limit(j)

    @cached_property
    def eb(self) -> dict[int, Fraction]:
        return {j: self.eb_at(j) for j in range(1, self.max_j + 1)}

    @cached_property
    def el(self) -> dict[int, Fraction]:
        return {j: self.el_at(j) for j in range(2, self.max_j + 1)}

    @cached_property
    def db(self) -> dict[int, Fraction]:
        return {j: v - block_profile_limit(self.n, j) for j, v in self.eb.items()}

    @cached_property
    def dl(self) -> dict[int, Fraction]:
        return {j: v - lucky_profile_limit(j) for j, v in self.el.items()}

    # sums over even lengths, exact because the rows vanish past n+1
    @property
    def even_eb_sum(self) -> Fraction:
        return Fraction(sum(self.b[2::2]), self.total)

    @property
    def even_el_sum(self) -> Fraction:
        return Fraction(sum(self.l[2::2]), self.total)

    def rows(self) -> list[dict]:
        out = []
        for j in range(1, self.max_j + 1):
            row = {"j": j, "eb": self.eb[j], "db": self.db[j]}
            row["el"] = self.el.get(j)
            row["dl"] = self.dl.get(j)
            out.append(row)
        return out


def _count_rows(max_n: int) -> Iterator[tuple[int, int, list[int], list[int], list[int]]]:
    a = [0, 0, 1, 0]
    b = [0, 0, 1, 0]
    l = [0, 0, 1, 0]  # noqa: E741
    total = 1
    yield 1, total, a, b, l
    for n in range(2, max_n + 1):
        size = n + 3
        pa, pb, pl = a + [0], b + [0], l + [0]
        m = 2 * n - 1
        a = [0, 0] + [(m - j) * pa[j] + (j - 1) * pa[j - 1] for j in range(2, n + 2)] + [0]
        b = [0, (2 * n - 2) * (pb[1] + total), pb[1] + (2 * n - 3) * pb[2] + total]
        b += [(j - 1) * pb[j - 1] + (m - j) * pb[j] for j in range(3, n + 2)] + [0]
        l = [0, 0, (2 * n - 3) * pl[2] + total]  # noqa: E741
        l += [(j - 2) * pl[j - 1] + (m - j) * pl[j] for j in range(3, n + 2)] + [0]
        total *= m
        assert len(a) == len(b) == len(l) == size
        yield n, total, a, b, l


def exact_tables(max_n: int) -> Iterator[ExactTable]:
    """Yield the tables for ``n = 1, 2, ..., max_n`` in one recurrence pass."""
    _check_n(max_n)
    for n, total, a, b, l in _count_rows(max_n):
        yield ExactTable(n, total, a, b, l)


@lru_cache(maxsize=32)
def exact_table(n: int) -> ExactTable:
    n = _check_n(n)
    for table in exact_tables(n):
        pass
    return table


def db_recurrence_rows(max_n: int, max_j: int | None = None) -> Iterator[dict[int, Fraction]]:
    """``db`` rows computed directly from their own recurrences.

    Independent of the count tables: row 1 comes from its closed form and
    every later row from the previous one, for ``j = 1..max_j``.
    """
    _check_n(max_n)
    max_j = max_j or max_n + 2
    row = {j: (Fraction(3, 4) if j == 2 else Fraction(-6, j * (j + 1) * (j + 2))) for j in range(1, max_j + 1)}
    yield row
    for n in range(2, max_n + 1):
        m = 2 * n - 1
        prev = row
        row = {
            1: ((2 * n - 2) * prev[1] - 1) / m,
            2: (prev[1] + (2 * n - 3) * prev[2] + 1) / m,
        }
        for j in range(3, max_j + 1):
            row[j] = ((j - 1) * prev[j - 1] + (m - j) * prev[j]) / m
        yield row


def dl_recurrence_rows(max_n: int, max_j: int | None = None) -> Iterator[dict[int, Fraction]]:
    """``dl`` rows from their own recurrences, ``j = 2..max_j``."""
    _check_n(max_n)
    max_j = max_j or max_n + 2
    row = {j: (Fraction(1, 2) if j == 2 else -lucky_profile_limit(j)) for j in range(2, max_j + 1)}
    yield row
    for n in range(2, max_n + 1):
        m = 2 * n - 1
        prev = row
        row = {2: (2 * n - 3) * prev[2] / m}
        for j in range(3, max_j + 1):
            row[j] = ((j - 2) * prev[j - 1] + (m - j) * prev[j]) / m
        yield row


def eb_row_float(n: int) -> np.ndarray:
    """Float64 ``eb(n, j)`` for ``j = 0..n+2`` (index 0 unused).

    Every step is a positive-weight average plus a constant, so rounding
    errors grow at most linearly in ``n``.
    """
    n = _check_n(n)
    row = np.zeros(n + 3)
    row[2] = 1.0
    j = np.arange(n + 3, dtype=float)
    for k in range(2, n + 1):
        m = 2 * k - 1
        prev = row
        row = np.zeros(n + 3)
        row[1] = (2 * k - 2) * (prev[1] + 1) / m
        row[2] = (prev[1] + (2 * k - 3) * prev[2] + 1) / m
        hi = k + 2
        row[3:hi] = ((j[3:hi] - 1) * prev[2:hi - 1] + (m - j[3:hi]) * prev[3:hi]) / m
    return row


# ---------------------------------------------------------------------------
# expectations and asymptotics


def expected_length_exact(n: int, table: ExactTable | None = None) -> Fraction:
    """Expected number of moves, ``3n/2 + E[e]/2 - E[l]``."""
    t = table or exact_table(_check_n(n))
    return Fraction(3 * t.n, 2) + t.even_eb_sum / 2 - t.even_el_sum


def expected_lucky_exact(n: int, table: ExactTable | None = None) -> Fraction:
    t = table or exact_table(_check_n(n))
    return t.even_el_sum


SLOPE = 3 - 2 * math.log(2)
INTERCEPT = 7 / 8 - 2 * math.log(2)


def asymptotic_length(n) -> float:
    """``(3 - 2 ln 2) n + 7/8 - 2 ln 2``; ``n = 0`` gives the constant term."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return SLOPE * n + INTERCEPT


def _asymptotic_decimal(n: int, prec: int = DECIMAL_PREC) -> Decimal:
    ln2 = _ln2(prec)
    with localcontext() as ctx:
        ctx.prec = prec
        return (3 - 2 * ln2) * n + Decimal(7) / 8 - 2 * ln2


def epsilon(n: int, table: ExactTable | None = None) -> float:
    """Exact expected length minus the asymptotic formula."""
    t = table or exact_table(_check_n(n))
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PREC
        return float(_to_decimal(expected_length_exact(t.n, t)) - _asymptotic_decimal(t.n))


def epsilon_bound(n: int) -> float:
    """Envelope for ``|epsilon(n)|`` from the even-sum bounds."""
    return 9 / 8 * math.sqrt(math.pi / (2 * (2 * n - 1))) + 1 / (2 * n - 1)


@dataclass(frozen=True)
class CertifiedValue:
    """A real number known to lie within ``error`` of ``value``."""

    value: float
    error: float
    finite_part: Fraction | None = None

    def contains(self, lo: float, hi: float) -> bool:
        return lo <= self.value - self.error and self.value + self.error <= hi


def _check_tol(tol, achievable):
    if tol is not None and tol < achievable:
        raise ValueError(f"tolerance {tol:g} unachievable; best available error bound is {achievable:g}")


def db_even_sum(n: int, table: ExactTable | None = None, method: str = "auto", tol: float | None = None) -> CertifiedValue:
    """Sum of ``db(n, j)`` over even ``j``.

    Equals the exact finite sum of ``eb`` over even lengths minus
    ``(2n+1)(3/2 - 2 ln 2)``, the closed form of the limiting profile's even
    part.  ``method="exact"`` evaluates the finite part in rationals and the
    constant to 60 digits; ``method="float"`` runs the float64 recurrence
    (for ``n`` far beyond what exact rows allow).
    """
    n = _check_n(table.n if table is not None else n)
    if method == "auto":
        method = "exact" if (table is not None or n <= 2000) else "float"
    if method == "exact":
        t = table or exact_table(n)
        finite = t.even_eb_sum
        ln2 = _ln2()
        with localcontext() as ctx:
            ctx.prec = DECIMAL_PREC
            value = _to_decimal(finite) - (2 * n + 1) * (Decimal(3) / 2 - 2 * ln2)
        err = float(Decimal(10) ** (-(DECIMAL_PREC - 10)) * (2 * n + 1))
        _check_tol(tol, err)
        return CertifiedValue(float(value), err, finite)
    if method == "float":
        row = eb_row_float(n)
        finite = float(row[2::2].sum())
        err = 4 * n * n * np.finfo(float).eps + 1e-15 * (2 * n + 1)
        _check_tol(tol, err)
        value = finite - (2 * n + 1) * (1.5 - 2 * math.log(2))
        return CertifiedValue(value, err)
    raise ValueError(f"unknown method {method!r}")


def dl_even_sum(n: int, table: ExactTable | None = None, tol: float | None = None) -> CertifiedValue:
    """Sum of ``dl(n, j)`` over even ``j``: the finite even ``el`` sum minus ``ln 2``."""
    t = table or exact_table(_check_n(n))
    finite = t.even_el_sum
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PREC
        value = _to_decimal(finite) - _ln2()
    err = float(Decimal(10) ** (-(DECIMAL_PREC - 10)))
    _check_tol(tol, err)
    return CertifiedValue(float(value), err, finite)


def db_even_bound(n: int) -> float:
    return 9 / 4 * math.sqrt(math.pi / (2 * (2 * n - 1)))


@dataclass(frozen=True)
class ExactSummary:
    n: int
    expected_length: Fraction
    expected_lucky: Fraction
    expected_first_match: Fraction
    db_even_sum: CertifiedValue
    dl_even_sum: CertifiedValue
    asymptotic_length: float
    epsilon: float

    def to_dict(self) -> dict:
        def both(x: Fraction) -> dict:
            return {"fraction": fraction_str(x), "decimal": decimal_str(x)}

        return {
            "n": self.n,
            "expected_length": both(self.expected_length),
            "expected_lucky": both(self.expected_lucky),
            "expected_first_match": both(self.expected_first_match),
            "db_even_sum": {"value": self.db_even_sum.value, "error": self.db_even_sum.error},
            "dl_even_sum": {"value": self.dl_even_sum.value, "error": self.dl_even_sum.error},
            "asymptotic_length": self.asymptotic_length,
            "epsilon": self.epsilon,
        }


def exact_summary(n: int, table: ExactTable | None = None) -> ExactSummary:
    t = table or exact_table(_check_n(n))
    return ExactSummary(
        n=t.n,
        expected_length=expected_length_exact(t.n, t),
        expected_lucky=expected_lucky_exact(t.n, t),
        expected_first_match=expected_first_match(t.n),
        db_even_sum=db_even_sum(t.n, t),
        dl_even_sum=dl_even_sum(t.n, t),
        asymptotic_length=asymptotic_length(t.n),
        epsilon=epsilon(t.n, t),
    )
