"""Seeded Monte Carlo estimates of the game-length distribution.

Trials are split across ``workers`` substreams spawned from one
:class:`numpy.random.SeedSequence`, so a fixed ``(n, trials, seed, workers)``
always reproduces the same histogram.  Each substream draws Fisher-Yates swap
indices with PCG64; a compiled kernel shuffles the labelled deck and plays it
with the same strategy as :func:`memorygame.game.play`.  Shuffled deals are
played as is: play does not depend on labels.

All per-trial statistics are integers, so moments are kept as exact integer
power sums and merging partial histograms is exact and order-free.
"""
from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .deals import Deal
from .game import play

GENERATOR = "numpy.PCG64 via SeedSequence(seed).spawn(workers)"
MAX_TRIALS = 10**10
_CHUNK_CELLS = 1 << 22


@njit(nogil=True, cache=True)
def _play_batch(n, swaps, moves, lucky, first):  # pragma: no cover - compiled
    size = 2 * n
    cards = np.empty(size, np.int64)
    known = np.empty(n + 1, np.int64)
    for t in range(swaps.shape[0]):
        for i in range(size):
            cards[i] = i // 2 + 1
        for k in range(size - 1):
            i = size - 1 - k
            j = swaps[t, k]
            c = cards[i]
            cards[i] = cards[j]
            cards[j] = c
        for i in range(n + 1):
            known[i] = -1
        pending = False
        nxt = 0
        removed = 0
        mv = 0
        lk = 0
        fm = 0
        while removed < n:
            mv += 1
            if pending:
                pending = False
                removed += 1
                continue
            c = cards[nxt]
            nxt += 1
            if known[c] >= 0:
                known[c] = -1
                if fm == 0:
                    fm = nxt
                removed += 1
                continue
            c2 = cards[nxt]
            nxt += 1
            if c2 == c:
                if fm == 0:
                    fm = nxt
                lk += 1
                removed += 1
                continue
            known[c] = nxt - 2
            if known[c2] >= 0:
                if fm == 0:
                    fm = nxt
                known[c2] = -1
                pending = True
            else:
                known[c2] = nxt - 1
        moves[t] = mv
        lucky[t] = lk
        first[t] = fm


def draw_swaps(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Fisher-Yates swap targets: column ``k`` swaps index ``2n-1-k`` with a uniform index in ``[0, 2n-1-k]``."""
    size = 2 * n
    highs = np.arange(size, 1, -1, dtype=np.int64)
    if size == 2:
        return rng.integers(0, highs, size=(count, 1), dtype=np.int64)
    return rng.integers(0, highs, size=(count, size - 1), dtype=np.int64)


def deals_from_swaps(n: int, swaps: np.ndarray) -> list[Deal]:
    """Python rendition of the kernel's shuffle, for cross-checking."""
    size = 2 * n
    out = []
    for row in swaps:
        cards = [i // 2 + 1 for i in range(size)]
        for k, j in enumerate(row):
            i = size - 1 - k
            cards[i], cards[j] = cards[j], cards[i]
        out.append(Deal(tuple(cards)))
    return out


def play_batch(n: int, swaps: np.ndarray, engine: str = "compiled") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Moves, lucky moves and first-match positions for a batch of shuffles."""
    count = swaps.shape[0]
    if engine == "compiled":
        moves = np.empty(count, np.int64)
        lucky = np.empty(count, np.int64)
        first = np.empty(count, np.int64)
        _play_batch(n, np.ascontiguousarray(swaps), moves, lucky, first)
        return moves, lucky, first
    if engine == "python":
        traces = [play(d) for d in deals_from_swaps(n, swaps)]
        return (
            np.array([t.moves for t in traces], np.int64),
            np.array([t.lucky_moves for t in traces], np.int64),
            np.array([t.first_match_position for t in traces], np.int64),
        )
    raise ValueError(f"unknown engine {engine!r}")


def _power_sums(x: np.ndarray) -> tuple[int, int]:
    return int(x.sum()), int((x * x).sum())


@dataclass
class Histogram:
    n: int
    trials: int = 0
    bins: Counter = field(default_factory=Counter)
    length_sums: tuple[int, int] = (0, 0)
    lucky_sums: tuple[int, int] = (0, 0)
    first_match_sums: tuple[int, int] = (0, 0)
    seed: int | None = None
    workers: int = 1
    generator: str = GENERATOR

    def add_batch(self, moves, lucky, first) -> None:
        self.trials += len(moves)
        values, counts = np.unique(moves, return_counts=True)
        self.bins.update(dict(zip(values.tolist(), counts.tolist())))
        self.length_sums = _add(self.length_sums, _power_sums(moves))
        self.lucky_sums = _add(self.lucky_sums, _power_sums(lucky))
        self.first_match_sums = _add(self.first_match_sums, _power_sums(first))

    def merge(self, other: Histogram) -> Histogram:
        if other.n != self.n:
            raise ValueError("cannot merge histograms for different n")
        self.trials += other.trials
        self.bins.update(other.bins)
        self.length_sums = _add(self.length_sums, other.length_sums)
        self.lucky_sums = _add(self.lucky_sums, other.lucky_sums)
        self.first_match_sums = _add(self.first_match_sums, other.first_match_sums)
        return self

    @staticmethod
    def _mean(sums, trials):
        return sums[0] / trials

    @staticmethod
    def _var(sums, trials):
        if trials < 2:
            return 0.0
        s, q = sums
        # exact integer numerator avoids cancellation
        return (q * trials - s * s) / (trials * (trials - 1))

    @property
    def mean(self) -> float:
        return self._mean(self.length_sums, self.trials)

    @property
    def variance(self) -> float:
        return self._var(self.length_sums, self.trials)

    @property
    def lucky_mean(self) -> float:
        return self._mean(self.lucky_sums, self.trials)

    @property
    def lucky_variance(self) -> float:
        return self._var(self.lucky_sums, self.trials)

    @property
    def first_match_mean(self) -> float:
        return self._mean(self.first_match_sums, self.trials)

    @property
    def first_match_variance(self) -> float:
        return self._var(self.first_match_sums, self.trials)

    def standard_error(self, which: str = "length") -> float:
        var = {"length": self.variance, "lucky": self.lucky_variance, "first_match": self.first_match_variance}[which]
        return math.sqrt(var / self.trials)

    def fraction_between(self, lo: int, hi: int) -> float:
        return sum(c for k, c in self.bins.items() if lo <= k <= hi) / self.trials

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "workers": self.workers,
            "generator": self.generator,
            "bins": {str(k): self.bins[k] for k in sorted(self.bins)},
            "mean": self.mean,
            "variance": self.variance,
            "lucky_mean": self.lucky_mean,
            "first_match_mean": self.first_match_mean,
            "standard_error": self.standard_error(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "count"])
        for k in sorted(self.bins):
            w.writerow([k, self.bins[k]])
        return buf.getvalue()


def _add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _split(trials: int, workers: int) -> list[int]:
    q, r = divmod(trials, workers)
    return [q + (w < r) for w in range(workers)]


def _run_stream(n: int, trials: int, seq: np.random.SeedSequence, engine: str) -> Histogram:
    rng = np.random.Generator(np.random.PCG64(seq))
    hist = Histogram(n)
    chunk = max(1, _CHUNK_CELLS // (2 * n))
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        hist.add_batch(*play_batch(n, draw_swaps(n, count, rng), engine))
        done += count
    return hist


def simulate(n: int, trials: int, seed: int = 0, workers: int = 1, engine: str = "compiled") -> Histogram:
    """Play ``trials`` uniformly random deals and histogram the game lengths."""
    if n < 1 or trials < 1 or workers < 1:
        raise ValueError("n, trials and workers must all be positive")
    if trials > MAX_TRIALS:
        raise ValueError(f"trials={trials} exceeds the limit of {MAX_TRIALS}; split the run and merge histograms")
    streams = np.random.SeedSequence(seed).spawn(workers)
    shares = _split(trials, workers)
    if workers == 1:
        parts = [_run_stream(n, shares[0], streams[0], engine)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda args: _run_stream(n, *args, engine), zip(shares, streams)))
    hist = Histogram(n, seed=seed, workers=workers)
    for part in parts:
        hist.merge(part)
    return hist


@dataclass(frozen=True)
class Comparison:
    n: int
    z_length: float
    z_lucky: float
    z_first_match: float
    exact_length: float
    exact_lucky: float
    exact_first_match: float

    def max_abs_z(self) -> float:
        return max(abs(self.z_length), abs(self.z_lucky), abs(self.z_first_match))


def _z(est, exact, se):
    if se == 0:
        return 0.0 if est == exact else math.copysign(math.inf, est - exact)
    return (est - exact) / se


def compare_to_exact(h: Histogram) -> Comparison:
    from .exact import expected_first_match, expected_length_exact, expected_lucky_exact

    length = float(expected_length_exact(h.n))
    lucky = float(expected_lucky_exact(h.n))
    first = float(expected_first_match(h.n))
    return Comparison(
        n=h.n,
        z_length=_z(h.mean, length, h.standard_error("length")),
        z_lucky=_z(h.lucky_mean, lucky, h.standard_error("lucky")),
        z_first_match=_z(h.first_match_mean, first, h.standard_error("first_match")),
        exact_length=length,
        exact_lucky=lucky,
        exact_first_match=first,
    )
