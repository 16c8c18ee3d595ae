"""Exact moment machinery for the writhe of a uniform random permutation.

Everything in this module is integer or rational arithmetic; no
floating point appears anywhere.  The cast of characters:

- Bernoulli numbers, Euler zigzag numbers (counts of alternating
  permutations), and Eulerian numbers (descent counts).
- The *average sign* A(G) of a directed graph: the expectation over a
  uniform ordering of the product of edge comparisons.  Closed forms
  exist for oriented paths and cycles; everything else is brute force
  over at most 10 vertices.
- *Breaking sums* B(G): the signed sum of average signs over all ways
  of splitting degree-two vertices of a 2-regular graph into pairs of
  endpoints.  For an oriented m-cycle, B equals -2^m B_m / m!.
- The per-cycle-length weight lambda_m = 8^m (2^m - 1) B_m^2 / (2 m!^2)
  and the limiting moments of the normalized writhe w/n,

      mu_k = sum over permutations of S_k of the product of
             lambda_(cycle length) over cycles,

  evaluated by summing over integer partitions of k into even parts
  (odd lengths contribute weight zero), and cross-checkable through the
  moment recurrence of the generating function exp(sum lambda_m z^m/m).
- The exact finite-n moment polynomials for k = 2 and 4, plus a full
  enumeration oracle over S_3, S_5, S_7.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence, Tuple

import numpy as np

from .graphs import DirectedGraph
from .permutation import writhe_rows

__all__ = [
    "BruteForceLimitError",
    "BRUTE_FORCE_MAX_VERTICES",
    "bernoulli",
    "euler_zigzag",
    "eulerian",
    "average_sign",
    "average_sign_closed",
    "cycle_breaking_sum",
    "cycle_breaking_sum_by_enumeration",
    "permutation_breaking_sum",
    "permutation_breaking_sum_by_enumeration",
    "cycle_weight",
    "limit_moment",
    "limit_moment_by_recurrence",
    "writhe_moment_poly",
    "writhe_moment_exact",
    "writhe_moment_by_enumeration",
    "plus_runs",
    "parity_tuple_count",
    "parity_tuple_count_by_enumeration",
    "cycles_of",
]

BRUTE_FORCE_MAX_VERTICES = 10
_ENUMERATION_MAX_HALF = 3  # full S_{2n+1} scans stop at 7! = 5040


class BruteForceLimitError(ValueError):
    """Requested brute-force enumeration is beyond the guarded size."""


# -- classical number sequences -----------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> Tuple[Fraction, ...]:
    # binomial recurrence sum_{j<=k} C(k+1,j) B_j = 0, with B_1 = -1/2
    vals = [Fraction(1)]
    for k in range(1, m + 1):
        acc = sum(comb(k + 1, j) * vals[j] for j in range(k))
        vals.append(Fraction(-acc, k + 1))
    return tuple(vals)


def bernoulli(m: int) -> Fraction:
    """The m-th Bernoulli number, exact.

    Only even indices (and m = 1) are meaningful here; odd m >= 3 is
    rejected rather than silently returning zero.
    """
    if m < 0:
        raise ValueError("index must be nonnegative")
    if m >= 3 and m % 2 == 1:
        raise ValueError(f"odd Bernoulli index {m} rejected (value would be zero)")
    return _bernoulli_upto(m)[m]


@lru_cache(maxsize=None)
def euler_zigzag(m: int) -> int:
    """Number of alternating permutations of S_m (up-down, zigzag).

    These are the coefficients m! * [x^m] of sec x (even m) and tan x
    (odd m): 1, 1, 1, 2, 5, 16, 61, 272, ...
    """
    if m < 0:
        raise ValueError("index must be nonnegative")
    # boustrophedon transform
    row = [1]
    for k in range(1, m + 1):
        prev = row
        row = [0]
        for j in range(1, k + 1):
            row.append(row[j - 1] + prev[k - j])
    return row[-1]


@lru_cache(maxsize=None)
def _eulerian_row(m: int) -> Tuple[int, ...]:
    row = (1,)
    for k in range(2, m + 1):
        prev = row + (0,)
        row = tuple(
            (d + 1) * prev[d] + (k - d) * (prev[d - 1] if d > 0 else 0)
            for d in range(k)
        )
    return row


def eulerian(m: int, d: int) -> int:
    """Number of permutations of S_m with exactly d descents."""
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= d <= m - 1:
        raise ValueError(f"descent count must satisfy 0 <= d <= {m - 1}, got {d}")
    return _eulerian_row(m)[d]


# -- average sign of a directed graph ------------------------------------

def _permutation_blocks(v: int, block: int = 200_000) -> Iterable[np.ndarray]:
    it = itertools.permutations(range(v))
    while True:
        chunk = list(itertools.islice(it, block))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.int8)


@lru_cache(maxsize=4096)
def _average_sign_cached(v: int, edges: Tuple[Tuple[int, int], ...]) -> Fraction:
    total = 0
    e = np.asarray(edges, dtype=np.int64) - 1
    for block in _permutation_blocks(v):
        prod = np.ones(block.shape[0], dtype=np.int8)
        for u, w in e:
            np.multiply(prod, np.sign(block[:, w] - block[:, u]), out=prod)
        total += int(prod.sum(dtype=np.int64))
    return Fraction(total, factorial(v))


def average_sign(graph: DirectedGraph) -> Fraction:
    """Average over uniform orderings of the product of edge comparisons.

    A(G) = (1/v!) sum_{s in S_v} prod_{(i,j) in E} sign(s(j) - s(i)),
    by explicit enumeration.  Guarded at 10 vertices (factorial cost);
    results are cached on the raw sorted edge list.
    """
    v = graph.num_vertices
    if v > BRUTE_FORCE_MAX_VERTICES:
        raise BruteForceLimitError(
            f"average_sign enumerates all v! orderings; v={v} exceeds the "
            f"guard of {BRUTE_FORCE_MAX_VERTICES}"
        )
    if not graph.edges:
        return Fraction(1)
    return _average_sign_cached(v, tuple(sorted(graph.edges)))


def average_sign_closed(kind: str, num_edges: int) -> Fraction:
    """Closed-form average sign of an oriented path or cycle.

    A path with an even number q of edges has average sign
    (-1)^(q/2) * zigzag(q+1) / (q+1)!, an oriented cycle is the negated
    path with two fewer edges; odd edge counts give zero.
    """
    if kind == "path":
        if num_edges < 0:
            raise ValueError("edge count must be nonnegative")
        if num_edges % 2 == 1:
            return Fraction(0)
        q = num_edges
        return Fraction((-1) ** (q // 2) * euler_zigzag(q + 1), factorial(q + 1))
    if kind == "cycle":
        if num_edges < 2:
            raise ValueError("a cycle needs at least 2 edges")
        if num_edges % 2 == 1:
            return Fraction(0)
        return -average_sign_closed("path", num_edges - 2)
    raise ValueError(f"kind must be 'path' or 'cycle', got {kind!r}")


# -- breaking sums -------------------------------------------------------

def cycle_breaking_sum(m: int) -> Fraction:
    """Breaking sum of the oriented m-cycle: -2^m B_m / m!, m even.

    Odd m is rejected; the paper-level analysis never breaks odd
    cycles (their weight in the moment formula vanishes).
    """
    if m < 2 or m % 2 == 1:
        raise ValueError(f"cycle breaking sum requires even m >= 2, got {m}")
    return Fraction(-(2**m) * bernoulli(m), factorial(m))


def _path_graph_with_directions(directions: Sequence[int]) -> DirectedGraph:
    q = len(directions)
    edges = tuple(
        (i, i + 1) if d > 0 else (i + 1, i) for i, d in enumerate(directions, start=1)
    )
    return DirectedGraph(q + 1, edges)


def _cycle_graph_with_directions(directions: Sequence[int]) -> DirectedGraph:
    t = len(directions)
    edges = tuple(
        (i + 1, (i + 1) % t + 1) if d > 0 else ((i + 1) % t + 1, i + 1)
        for i, d in enumerate(directions)
    )
    return DirectedGraph(t, edges)


def _chain_breaking_sum(directions: Sequence[int]) -> Fraction:
    """Definitional breaking sum of one cyclic chain of directed edges.

    ``directions[i]`` orients the edge between cyclic positions i and
    i+1.  Every subset of the t vertices is broken in turn; breaking r
    vertices splits the chain into r directed arcs, and the broken
    graph contributes (-1)^(t+r) times the product of the arcs' average
    signs (components are disjoint, so their average signs multiply).
    """
    t = len(directions)
    total = Fraction(0)
    for broken in itertools.chain.from_iterable(
        itertools.combinations(range(t), r) for r in range(t + 1)
    ):
        r = len(broken)
        if r == 0:
            total += (-1) ** t * average_sign(_cycle_graph_with_directions(directions))
            continue
        term = Fraction((-1) ** (t + r))
        # arc starting at each broken vertex, running to the next one
        for a, start in enumerate(broken):
            stop = broken[(a + 1) % r]
            length = (stop - start) % t or t
            arc = [directions[(start + j) % t] for j in range(length)]
            term *= average_sign(_path_graph_with_directions(arc))
        total += term
    return total


def cycle_breaking_sum_by_enumeration(m: int) -> Fraction:
    """Breaking sum of the oriented m-cycle by explicit enumeration.

    Independent oracle for :func:`cycle_breaking_sum`; cost grows like
    2^m times a brute-force average sign, so keep m small (<= 6).
    """
    if m < 2:
        raise ValueError("need at least 2 edges")
    if m > 6:
        raise BruteForceLimitError("enumeration oracle guarded at m <= 6")
    return _chain_breaking_sum((1,) * m)


def cycles_of(mapping: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Cycle decomposition of a permutation given on {1..k} (1-based).

    ``mapping[i-1]`` is the image of i.  Cycles are rotated to start at
    their smallest element and sorted by it.
    """
    k = len(mapping)
    if sorted(mapping) != list(range(1, k + 1)):
        raise ValueError("mapping is not a permutation of {1..k}")
    seen = [False] * (k + 1)
    cycles = []
    for start in range(1, k + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = mapping[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = mapping[nxt - 1]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def _deficiencies(cycle: Sequence[int]) -> int:
    t = len(cycle)
    return sum(1 for i in range(t) if cycle[i] > cycle[(i + 1) % t])


def permutation_breaking_sum(cycles: Sequence[Sequence[int]]) -> Fraction:
    """Breaking sum of the 2-regular graph of a permutation's cycles.

    Each cycle contributes (-1)^(deficiencies) times the oriented-cycle
    breaking sum of its length; any odd-length cycle (fixed points
    included) makes the whole product zero, mirroring the vanishing
    odd-length weights in the limiting moment formula.
    """
    elements = [x for cyc in cycles for x in cyc]
    k = len(elements)
    if k > 8:
        raise BruteForceLimitError("guarded at k <= 8")
    if sorted(elements) != list(range(1, k + 1)):
        raise ValueError("cycles must partition {1..k}")
    result = Fraction(1)
    for cyc in cycles:
        if len(cyc) % 2 == 1:
            return Fraction(0)
        result *= (-1) ** _deficiencies(cyc) * cycle_breaking_sum(len(cyc))
    return result


def permutation_breaking_sum_by_enumeration(cycles: Sequence[Sequence[int]]) -> Fraction:
    """Enumeration oracle for :func:`permutation_breaking_sum`.

    Builds each cycle's chain with edges directed from the smaller to
    the larger element and enumerates all breakings.  Only cycles of
    length >= 2 can be constructed (a fixed point would be a loop).
    """
    if sum(len(c) for c in cycles) > 6:
        raise BruteForceLimitError("enumeration oracle guarded at k <= 6")
    result = Fraction(1)
    for cyc in cycles:
        t = len(cyc)
        if t < 2:
            raise ValueError("fixed points have no loop-free graph; length >= 2 only")
        directions = tuple(
            1 if cyc[i] < cyc[(i + 1) % t] else -1 for i in range(t)
        )
        result *= _chain_breaking_sum(directions)
    return result


# -- limiting moments ----------------------------------------------------

@lru_cache(maxsize=None)
def cycle_weight(m: int) -> Fraction:
    """Weight of a length-m cycle in the limiting moment formula.

    8^m (2^m - 1) B_m^2 / (2 m!^2) for even m, zero for odd m.
    """
    if m < 1:
        raise ValueError("cycle length must be positive")
    if m % 2 == 1:
        return Fraction(0)
    b = bernoulli(m)
    return Fraction(8**m * (2**m - 1)) * b * b / (2 * factorial(m) ** 2)


def _even_partitions(k: int, largest: int | None = None):
    if k == 0:
        yield ()
        return
    if largest is None:
        largest = k
    for part in range(min(k, largest), 1, -1):
        if part % 2:
            continue
        for rest in _even_partitions(k - part, part):
            yield (part,) + rest


@lru_cache(maxsize=None)
def limit_moment(k: int) -> Fraction:
    """Limit of E[(w/n)^k] as the permutation size grows.

    Summed over integer partitions of k into even parts: a partition
    with a_m parts of size m corresponds to k! / prod(m^a_m * a_m!)
    permutations of S_k, each weighted by prod cycle_weight(m)^a_m.
    Odd k returns zero by contract.
    """
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2 == 1:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    for partition in _even_partitions(k):
        denom = 1
        weight = Fraction(1)
        for part, mult in zip(*np.unique(partition, return_counts=True)):
            part, mult = int(part), int(mult)
            denom *= part**mult * factorial(mult)
            weight *= cycle_weight(part) ** mult
        total += Fraction(factorial(k), denom) * weight
    return total


@lru_cache(maxsize=None)
def limit_moment_by_recurrence(k: int) -> Fraction:
    """Limiting moments via the log-derivative recurrence of the MGF.

    With M(z) = exp(sum_m cycle_weight(m) z^m / m),

        mu_k = sum_{even m <= k} (k-1)!/(k-m)! * cycle_weight(m) * mu_{k-m}.

    Must agree exactly with :func:`limit_moment` for all even k.
    """
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2 == 1:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    for m in range(2, k + 1, 2):
        total += (
            Fraction(factorial(k - 1), factorial(k - m))
            * cycle_weight(m)
            * limit_moment_by_recurrence(k - m)
        )
    return total


# -- exact finite-n moments ----------------------------------------------

_MOMENT_POLYS = {
    # E[w^2] = (2n^2 + n)/3
    2: (Fraction(0), Fraction(1, 3), Fraction(2, 3)),
    # E[w^4] = (76n^4 + 44n^3 - 49n^2 - 26n)/45
    4: (
        Fraction(0),
        Fraction(-26, 45),
        Fraction(-49, 45),
        Fraction(44, 45),
        Fraction(76, 45),
    ),
}


def writhe_moment_poly(k: int) -> Tuple[Fraction, ...]:
    """Coefficients (lowest degree first) of E[w^k] as a polynomial in n.

    Closed forms are available for k = 2 and k = 4 only; the leading
    coefficient equals the corresponding limiting moment.
    """
    try:
        return _MOMENT_POLYS[k]
    except KeyError:
        raise ValueError(f"closed-form moment polynomial exists for k in (2, 4), not {k}")


def writhe_moment_exact(n: int, k: int) -> Fraction:
    """E[w^k] over uniform S_{2n+1}, from the closed-form polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = writhe_moment_poly(k)
    return sum((c * n**j for j, c in enumerate(coeffs)), Fraction(0))


def writhe_moment_by_enumeration(n: int, k: int) -> Fraction:
    """E[w^k] by enumerating all of S_{2n+1} with the quadratic writhe.

    Exact independent oracle; guarded at n <= 3 (|S_7| = 5040).
    """
    if not 1 <= n <= _ENUMERATION_MAX_HALF:
        raise BruteForceLimitError(f"full enumeration guarded at n <= {_ENUMERATION_MAX_HALF}")
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    size = 2 * n + 1
    perms = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(size))),
        dtype=np.int64,
    ).reshape(-1, size)
    writhes = writhe_rows(perms)
    values, counts = np.unique(writhes, return_counts=True)
    total = sum(int(c) * int(v) ** k for v, c in zip(values, counts))
    return Fraction(total, factorial(size))


# -- parity runs ----------------------------------------------------------

def plus_runs(entries: Sequence[int]) -> int:
    """Number of maximal runs of +1 in a vector of +-1 entries."""
    entries = list(entries)
    if not entries:
        raise ValueError("empty parity vector")
    if any(e not in (1, -1) for e in entries):
        raise ValueError("entries must be +1 or -1")
    runs = 0
    prev = -1
    for e in entries:
        if e == 1 and prev == -1:
            runs += 1
        prev = e
    return runs


def parity_tuple_count(n: int, signs: Sequence[int]) -> int:
    """Count of index tuples 0 <= t_1 < ... < t_v <= 2n with given parities.

    ``signs[i] = +1`` demands t_i even, ``-1`` odd.  The count is the
    binomial C(n + plus_runs(signs), v).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = len(list(signs))
    return comb(n + plus_runs(signs), v)


def parity_tuple_count_by_enumeration(n: int, signs: Sequence[int]) -> int:
    """Lattice-enumeration oracle for :func:`parity_tuple_count`."""
    signs = list(signs)
    v = len(signs)
    if v > 6 or n > 8:
        raise BruteForceLimitError("enumeration oracle guarded at v <= 6, n <= 8")
    want_even = [s == 1 for s in signs]
    count = 0
    for combo in itertools.combinations(range(2 * n + 1), v):
        if all((t % 2 == 0) == w for t, w in zip(combo, want_even)):
            count += 1
    return count
