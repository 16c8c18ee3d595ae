"""Nonparametric rank correlation for circular (toroidal) data.

Given paired angles, only their circular orderings matter: replace
them by circular ranks r_i, s_i in Z_N and form the pairwise statistic

    R(f, g) = sum_{i<j} f((r_j - r_i)/N) * g((s_j - s_i)/N)

for odd kernels f, g of period 1.  Rank differences are reduced to the
symmetric representative in (-N/2, N/2) before dividing by N, so the
kernels are only ever evaluated inside (-1/2, 1/2).  Choices of kernel
recover familiar statistics:

- sign(t) paired with the tent kernel sign(t)(1 - 2|t|) gives exactly
  the writhe of the permutation relating the two rank tuples (odd N);
- the tent kernel with itself is Fisher and Lee's Delta;
- sin(2 pi t) with itself is the Mardia/Fisher-Lee Pi statistic.

The writhe identity is an exact integer statement, so the sign/tent
pair is accumulated in exact rational arithmetic; trigonometric
kernels use ordinary floating point.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .permutation import Permutation, SizeParityError, writhe_naive

__all__ = [
    "RankPairs",
    "PeriodicKernel",
    "kernel_alpha",
    "kernel_beta",
    "kernel_gamma",
    "rank_correlation",
    "fisher_lee_delta",
    "mardia_pi",
    "writhe_averaged_form",
    "circular_ranks",
]


def circular_ranks(values: Sequence[float]) -> np.ndarray:
    """Circular ranks 0..N-1 in the same cyclic order as the values.

    Ties are broken by input order, with a warning: rank methods here
    assume continuously distributed angles.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("need a nonempty 1-d array of angles")
    if np.unique(arr).size < arr.size:
        warnings.warn("ties in angular data; breaking by input order", stacklevel=2)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=np.int64)
    ranks[order] = np.arange(arr.size)
    return ranks


@dataclass(frozen=True)
class RankPairs:
    """Two tuples of circular ranks over the same index set."""

    r: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        r = Permutation(self.r)  # validates bijection
        s = Permutation(self.s)
        if r.size != s.size:
            raise ValueError("rank tuples differ in length")
        object.__setattr__(self, "r", r.map)
        object.__setattr__(self, "s", s.map)

    @property
    def size(self) -> int:
        return int(self.r.size)

    @classmethod
    def from_angles(cls, theta: Sequence[float], phi: Sequence[float]) -> "RankPairs":
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        if theta.shape != phi.shape:
            raise ValueError("theta and phi differ in length")
        return cls(circular_ranks(theta), circular_ranks(phi))

    @classmethod
    def from_permutation(cls, p: Permutation) -> "RankPairs":
        """Ranks r_i = i, s_i = p(i): the writhe configuration."""
        return cls(np.arange(p.size), p.map)


@dataclass(frozen=True)
class PeriodicKernel:
    """Odd period-1 kernel, evaluated on t in (-1/2, 1/2).

    ``exact`` (optional) evaluates the kernel exactly at rational
    arguments d/N; ``defined_at_half`` records whether t = 1/2 (which
    arises for even N only) is a legal argument.
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    exact: Callable[[int, int], Fraction] | None = None
    defined_at_half: bool = True

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return self.fn(t)


def kernel_alpha() -> PeriodicKernel:
    """sign(t): which way around the circle is closer."""
    return PeriodicKernel(
        name="alpha",
        fn=np.sign,
        exact=lambda d, n: Fraction(int(np.sign(d))),
        defined_at_half=False,
    )


def kernel_beta() -> PeriodicKernel:
    """sign(t) * (1 - 2|t|): linear weight favoring close pairs."""
    return PeriodicKernel(
        name="beta",
        fn=lambda t: np.sign(t) * (1.0 - 2.0 * np.abs(t)),
        exact=lambda d, n: Fraction(int(np.sign(d)) * (n - 2 * abs(d)), n),
    )


def kernel_gamma() -> PeriodicKernel:
    """sin(2 pi t)."""
    return PeriodicKernel(name="gamma", fn=lambda t: np.sin(2.0 * np.pi * t))


def _symmetric_differences(values: np.ndarray) -> np.ndarray:
    """Pairwise (v_j - v_i) mod N for i<j, reduced into (-N/2, N/2]."""
    n = values.size
    i, j = np.triu_indices(n, k=1)
    d = (values[j] - values[i]) % n
    d = np.where(d > n / 2, d - n, d)
    return d.astype(np.int64)


def rank_correlation(
    data: RankPairs,
    f: PeriodicKernel,
    g: PeriodicKernel,
    exact: bool | None = None,
) -> float:
    """The pairwise circular rank correlation sum_{i<j} f(dr/N) g(ds/N).

    ``exact=None`` picks rational accumulation automatically whenever a
    discontinuous kernel (alpha) is involved and both kernels support
    it; pass True/False to force.  Kernels undefined at t = 1/2 reject
    even N where the half-turn difference N/2 can occur.
    """
    n = data.size
    if n == 1:
        return 0.0
    dr = _symmetric_differences(data.r)
    ds = _symmetric_differences(data.s)
    for kern, diffs in ((f, dr), (g, ds)):
        if not kern.defined_at_half and n % 2 == 0 and np.any(2 * np.abs(diffs) == n):
            raise ValueError(
                f"kernel {kern.name!r} is undefined at t = 1/2 "
                f"(half-turn rank difference with even N = {n})"
            )
    if exact is None:
        exact = (
            f.exact is not None
            and g.exact is not None
            and (not f.defined_at_half or not g.defined_at_half)
        )
    if exact:
        if f.exact is None or g.exact is None:
            raise ValueError("exact accumulation needs exact kernels on both sides")
        total = sum(
            (f.exact(int(a), n) * g.exact(int(b), n) for a, b in zip(dr, ds)),
            Fraction(0),
        )
        return float(total)
    return float(np.sum(f(dr / n) * g(ds / n)))


def fisher_lee_delta(data: RankPairs) -> float:
    """Fisher and Lee's circular correlation: tent kernel both sides."""
    b = kernel_beta()
    return rank_correlation(data, b, b)


def mardia_pi(data: RankPairs) -> float:
    """The sine-kernel circular correlation of Mardia and Fisher-Lee."""
    g = kernel_gamma()
    return rank_correlation(data, g, g)


def writhe_averaged_form(p: Permutation) -> int:
    """Writhe as a distance-weighted pair sum, exact integer arithmetic.

    Averaging the writhe over value rotations gives

        w(p) = sum_{x<y} side(y-x) * tent(p(y)-p(x))

    where side(d) is +-1 by which arc is shorter and tent(d) is
    +-(1 - 2|d|/N) with the symmetric representative of d.  Evaluated
    over a common denominator N; a non-integer total would mean a
    broken implementation and trips an assertion.
    """
    n = p.size
    if n % 2 == 0:
        raise SizeParityError(f"writhe requires odd size, got {n}")
    if n == 1:
        return 0
    dx = _symmetric_differences(np.arange(n))
    dv = _symmetric_differences(p.map)
    side = np.sign(dx)
    tent_scaled = np.sign(dv) * (n - 2 * np.abs(dv))  # N * tent
    total = int(np.sum(side * tent_scaled, dtype=np.int64))
    assert total % n == 0, "weighted writhe sum must be divisible by N"
    return total // n
