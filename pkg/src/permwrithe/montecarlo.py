"""Monte Carlo for the writhe of uniform random permutations.

Samples permutations of S_{2n+1} uniformly (unbiased bounded integers,
no modulo bias), evaluates the normalized writhe w/n with the
O(N log N) algorithm in batches, and aggregates histograms, sample
moments, and diagnostics against the exact finite-n moments and the
limit law.

Parallelism is by independent sample streams: the budget is split
across worker streams (stream ids offset from the caller's), each
worker is reproducible on its own, and merging is a commutative
monoid, so results do not depend on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import limit
from .fast import writhe_fast_rows
from .moments import limit_moment
from .permutation import Permutation, writhe_rows
from .streams import SampleStream

__all__ = [
    "Histogram",
    "make_bin_edges",
    "random_permutation",
    "MomentEstimate",
    "SimulationResult",
    "LimitComparison",
    "simulate_writhe",
    "empirical_distribution",
    "empirical_moments",
    "compare_to_limit",
]

DEFAULT_RANGE = (-4.0, 4.0)
DEFAULT_BINS = 161


def make_bin_edges(bins: int = DEFAULT_BINS, lo: float = DEFAULT_RANGE[0], hi: float = DEFAULT_RANGE[1]) -> np.ndarray:
    if bins < 1 or not lo < hi:
        raise ValueError("need at least one bin and lo < hi")
    return np.linspace(lo, hi, bins + 1)


@dataclass
class Histogram:
    """Binned counts with explicit under/overflow; merge with ``+``."""

    bin_edges: np.ndarray
    counts: np.ndarray = field(default=None)  # type: ignore[assignment]
    underflow: int = 0
    overflow: int = 0

    def __post_init__(self):
        self.bin_edges = np.asarray(self.bin_edges, dtype=float)
        if self.bin_edges.ndim != 1 or self.bin_edges.size < 2:
            raise ValueError("need at least two bin edges")
        if np.any(np.diff(self.bin_edges) <= 0):
            raise ValueError("bin edges must be strictly increasing")
        if self.counts is None:
            self.counts = np.zeros(self.bin_edges.size - 1, dtype=np.int64)
        else:
            self.counts = np.asarray(self.counts, dtype=np.int64)
            if self.counts.size != self.bin_edges.size - 1:
                raise ValueError("counts do not match bin edges")

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.underflow + self.overflow

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def densities(self) -> np.ndarray:
        widths = np.diff(self.bin_edges)
        total = self.total
        if total == 0:
            return np.zeros_like(widths)
        return self.counts / (total * widths)

    def add_values(self, values: np.ndarray) -> "Histogram":
        values = np.asarray(values, dtype=float)
        self.underflow += int(np.count_nonzero(values < self.bin_edges[0]))
        self.overflow += int(np.count_nonzero(values >= self.bin_edges[-1]))
        self.counts += np.histogram(values, self.bin_edges)[0]
        # np.histogram closes the last bin on the right; reclassify exact hits
        exact_top = int(np.count_nonzero(values == self.bin_edges[-1]))
        if exact_top:
            self.counts[-1] -= exact_top
        return self

    def __add__(self, other: "Histogram") -> "Histogram":
        if not np.array_equal(self.bin_edges, other.bin_edges):
            raise ValueError("histograms have different binning")
        return Histogram(
            self.bin_edges,
            self.counts + other.counts,
            self.underflow + other.underflow,
            self.overflow + other.overflow,
        )

    def cumulative_at_edges(self) -> np.ndarray:
        """Empirical CDF evaluated exactly at every bin edge."""
        total = self.total
        if total == 0:
            raise ValueError("empty histogram")
        return (self.underflow + np.concatenate([[0], np.cumsum(self.counts)])) / total


def random_permutation(n_size: int, stream: SampleStream) -> Permutation:
    """A uniform random permutation of S_N, exactly uniform.

    numpy's generator draws bounded integers by rejection, so every
    permutation has probability exactly 1/N!.
    """
    if n_size < 1:
        raise ValueError("size must be positive")
    return Permutation(stream.generator.permutation(n_size))


@dataclass(frozen=True)
class MomentEstimate:
    order: int
    value: float
    std_error: float


@dataclass
class LimitComparison:
    """Histogram vs the limit law: KS-style distance and moment gaps."""

    ks_statistic: float
    variance_estimate: float
    variance_gap: float
    fourth_moment_estimate: float
    fourth_moment_gap: float


@dataclass
class SimulationResult:
    n: int
    num_samples: int
    seed: int
    stream_id: int
    workers: int
    algorithm: str
    histogram: Histogram
    moments: tuple[MomentEstimate, ...]

    @property
    def variance(self) -> float:
        # second sample moment; the first moment is 0 by symmetry
        return next(m.value for m in self.moments if m.order == 2)


def _worker_counts(num_samples: int, workers: int) -> list[int]:
    base, extra = divmod(num_samples, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _simulate_one_stream(n, samples, stream, edges, max_power, use_naive):
    size = 2 * n + 1
    hist = Histogram(edges)
    power_sums = np.zeros(max_power + 1)
    chunk = max(1, 4_194_304 // size)
    template = np.tile(np.arange(size, dtype=np.int32), (chunk, 1))
    rng = stream.generator
    done = 0
    while done < samples:
        take = min(chunk, samples - done)
        mat = rng.permuted(template[:take], axis=1)
        w = writhe_rows(mat) if use_naive else writhe_fast_rows(mat)
        norm = w / n
        hist.add_values(norm)
        powers = np.ones_like(norm)
        power_sums[0] += take
        for k in range(1, max_power + 1):
            powers = powers * norm
            power_sums[k] += powers.sum()
        done += take
    return hist, power_sums


def simulate_writhe(
    n: int,
    num_samples: int,
    stream: SampleStream,
    bins: int = DEFAULT_BINS,
    hist_range: tuple[float, float] = DEFAULT_RANGE,
    k_max: int = 4,
    use_naive: bool = False,
    workers: int = 1,
    threads: int = 1,
) -> SimulationResult:
    """Histogram and sample moments of the normalized writhe w/n.

    ``workers`` splits the sample budget across that many substreams of
    ``stream``; ``threads`` controls how many run concurrently.  The
    result is identical for any thread count.
    """
    if n < 1 or num_samples < 1:
        raise ValueError("n and num_samples must be positive")
    if k_max < 1 or k_max > 8 or k_max % 2:
        raise ValueError("k_max must be even, between 2 and 8")
    if workers < 1 or threads < 1:
        raise ValueError("workers and threads must be positive")
    edges = make_bin_edges(bins, *hist_range)
    max_power = 2 * k_max
    counts = _worker_counts(num_samples, workers)
    jobs = [
        (n, cnt, stream.substream(i).reset(), edges, max_power, use_naive)
        for i, cnt in enumerate(counts)
        if cnt > 0
    ]
    if threads == 1 or len(jobs) == 1:
        parts = [_simulate_one_stream(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: _simulate_one_stream(*j), jobs))
    hist = parts[0][0]
    power_sums = parts[0][1]
    for h, p in parts[1:]:
        hist = hist + h
        power_sums = power_sums + p
    m = power_sums[0]
    moments = []
    for k in range(1, k_max + 1):
        mk = power_sums[k] / m
        var_k = max(power_sums[2 * k] / m - mk**2, 0.0)
        moments.append(MomentEstimate(k, float(mk), float(np.sqrt(var_k / m))))
    return SimulationResult(
        n=n,
        num_samples=num_samples,
        seed=stream.seed,
        stream_id=stream.stream_id,
        workers=workers,
        algorithm="naive" if use_naive else "fast",
        histogram=hist,
        moments=tuple(moments),
    )


def empirical_distribution(
    n: int,
    num_samples: int,
    stream: SampleStream,
    bins: int = DEFAULT_BINS,
    hist_range: tuple[float, float] = DEFAULT_RANGE,
    use_naive: bool = False,
    workers: int = 1,
    threads: int = 1,
) -> Histogram:
    """Histogram of w/n over independent uniform permutations of S_{2n+1}."""
    return simulate_writhe(
        n, num_samples, stream, bins, hist_range, 2, use_naive, workers, threads
    ).histogram


def empirical_moments(
    n: int,
    num_samples: int,
    stream: SampleStream,
    k_max: int = 4,
    use_naive: bool = False,
) -> tuple[MomentEstimate, ...]:
    """Sample moments of w/n for k = 1..k_max, with standard errors."""
    return simulate_writhe(n, num_samples, stream, k_max=k_max, use_naive=use_naive).moments


def compare_to_limit(hist: Histogram) -> LimitComparison:
    """KS-style distance of a normalized-writhe histogram to the limit law.

    The empirical CDF is exact at bin edges (underflow included); the
    moment estimates use bin centers and are approximate, for
    diagnostics only.
    """
    edges = hist.bin_edges
    emp = hist.cumulative_at_edges()
    ks = float(np.max(np.abs(emp - limit.limit_cdf(edges))))
    total = hist.total
    centers = hist.centers
    var = float(np.sum(hist.counts * centers**2) / total)
    m4 = float(np.sum(hist.counts * centers**4) / total)
    return LimitComparison(
        ks_statistic=ks,
        variance_estimate=var,
        variance_gap=var - limit.limit_variance(),
        fourth_moment_estimate=m4,
        fourth_moment_gap=m4 - float(limit_moment(4)),
    )
