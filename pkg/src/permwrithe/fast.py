"""Divide-and-conquer evaluation of the writhe in O(N log N).

The quadratic writhe of an odd-size permutation is converted, in linear
time, into the bialternating inversion number of an even-size
permutation (compose with the inverse doubling map, rotate, drop the
top value; see :mod:`permwrithe.permutation`).  The bialternating
statistic then splits: writing sigma of size 2(l+r) as induced
permutations sigma_L, sigma_R on the first 2l and last 2r positions,

    bialt(sigma) = bialt(sigma_L) + bialt(sigma_R) + 2 * link(sigma, l)

where the linking term is the signed cross-pair sum

    link = (1/2) * sum_{y in L} sum_{x in R} (-1)^(x+y) sign(sigma x - sigma y).

The linking term collapses to a single prefix-sum pass over values in
increasing order: a left position updates a running alternating weight,
a right position adds its own weight times the running total.  Rank
compression of the two halves is a counting pass over the inverse
permutation, never a comparison sort, so each level of the recursion is
linear and the whole computation is O(N log N).

All internal routines operate on (batch, size) integer arrays so that
many permutations of one size can be processed simultaneously; the
Monte Carlo engine relies on this.  Small subproblems are evaluated by
the vectorized quadratic formula below ``leaf_size``; setting
``leaf_size=2`` bottoms out at the two-element base cases
bialt(01) = -1 and bialt(10) = +1.

Set ``VERIFY_RECURSION = True`` to re-check the split identity against
the quadratic statistic at every internal node (for debugging; the cost
becomes quadratic).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .permutation import (
    Permutation,
    SizeParityError,
    inversion_rows,
    writhe_rows,
)

__all__ = [
    "SplitResult",
    "induced_split",
    "split_linking",
    "split_with_linking",
    "bialternating_fast",
    "writhe_fast",
    "writhe_fast_rows",
    "DEFAULT_LEAF_SIZE",
    "VERIFY_RECURSION",
]

DEFAULT_LEAF_SIZE = 64

# when True, every internal node re-derives its linking term from the
# definitional double sum and checks the recursion identity (O(N^2)).
VERIFY_RECURSION = False


@dataclass(frozen=True)
class SplitResult:
    """One division step: compressed halves plus their linking term."""

    left: Permutation
    right: Permutation
    link: int


def _require_even(n: int) -> int:
    if n % 2 != 0 or n < 2:
        raise SizeParityError(f"need even size >= 2, got {n}")
    return n // 2


def _as_rows(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.int64)
    return mat[None, :] if mat.ndim == 1 else mat


def _inverse_rows(mat: np.ndarray) -> np.ndarray:
    b, n = mat.shape
    inv = np.empty_like(mat)
    inv[np.arange(b)[:, None], mat] = np.arange(n)[None, :]
    return inv


def _node(mat: np.ndarray, l2: int):
    """Split each row at position l2: compressed halves and linking terms.

    ``inv`` indexed by value gives the position holding that value, so a
    single sweep in value order yields both the counting-sort rank
    compression and the alternating prefix sums of the linking term.
    """
    b, n = mat.shape
    r2 = n - l2
    inv = _inverse_rows(mat)
    in_left = inv < l2

    # linking term: values at left positions update the running weight,
    # values at right positions collect it.
    e_val = 1 - 2 * (inv & 1)
    w_left = np.where(in_left, e_val, 0)
    y_excl = np.cumsum(w_left, axis=1) - w_left
    link = np.sum(np.where(in_left, 0, e_val * y_excl), axis=1)

    # rank compression: boolean masking walks values in increasing order
    # within each row, and every row holds exactly l2 left values, so the
    # ranks per row are simply 0,1,...  No comparison sort anywhere.
    pos_l = inv[in_left]
    left = np.empty((b, l2), dtype=mat.dtype)
    left[np.repeat(np.arange(b), l2), pos_l] = np.tile(np.arange(l2), b)

    pos_r = inv[~in_left] - l2
    right = np.empty((b, r2), dtype=mat.dtype)
    right[np.repeat(np.arange(b), r2), pos_r] = np.tile(np.arange(r2), b)

    return left, right, link


def _linking_definitional(mat: np.ndarray, l2: int) -> np.ndarray:
    """Quadratic oracle: half the signed double sum over cross pairs."""
    b, n = mat.shape
    sgn = np.sign(mat[:, None, l2:] - mat[:, :l2, None])  # [b, y, x-l2]
    par = 1 - 2 * (np.arange(n) & 1)
    weight = np.outer(par[:l2], par[l2:])
    doubled = np.einsum("byx,yx->b", sgn, weight, dtype=np.int64)
    assert np.all(doubled % 2 == 0)
    return doubled // 2


_LEAF_WEIGHTS: dict[int, np.ndarray] = {}


def _leaf_weight(n: int) -> np.ndarray:
    w = _LEAF_WEIGHTS.get(n)
    if w is None:
        par = 1 - 2 * (np.arange(n) & 1)
        w = np.triu(np.outer(par, par), k=1)
        _LEAF_WEIGHTS[n] = w
    return w


def _bialt_quadratic(mat: np.ndarray) -> np.ndarray:
    b, n = mat.shape
    if n == 2:
        return -np.sign(mat[:, 1] - mat[:, 0])
    sgn = np.sign(mat[:, None, :] - mat[:, :, None])
    return np.einsum("byx,yx->b", sgn, _leaf_weight(n), dtype=np.int64)


def _auto_leaf(batch: int) -> int:
    # large batches amortize the per-node call overhead, so a smaller
    # leaf (less quadratic work) wins; single permutations prefer fewer,
    # fatter nodes.
    return min(DEFAULT_LEAF_SIZE, max(16, 32768 // batch))


def _bialt_rows(mat: np.ndarray, leaf_size: int | None, parallel_threshold=None) -> np.ndarray:
    b, n = mat.shape
    if leaf_size is None:
        leaf_size = _auto_leaf(b)
    if n <= max(leaf_size, 2):
        return _bialt_quadratic(mat)
    half = n // 2
    l2 = 2 * ((half + 1) // 2)  # ceil(half/2) pairs on the left
    left, right, link = _node(mat, l2)
    if VERIFY_RECURSION:
        assert np.array_equal(link, _linking_definitional(mat, l2))
        assert np.array_equal(
            inversion_rows(mat, "bialternating"),
            inversion_rows(left, "bialternating")
            + inversion_rows(right, "bialternating")
            + 2 * link,
        )
    if parallel_threshold is not None and n >= parallel_threshold:
        with ThreadPoolExecutor(max_workers=2) as pool:
            fut_l = pool.submit(_bialt_rows, left, leaf_size, parallel_threshold)
            fut_r = pool.submit(_bialt_rows, right, leaf_size, parallel_threshold)
            return fut_l.result() + fut_r.result() + 2 * link
    return (
        _bialt_rows(left, leaf_size, parallel_threshold)
        + _bialt_rows(right, leaf_size, parallel_threshold)
        + 2 * link
    )


# -- public operations ---------------------------------------------------

def induced_split(p: Permutation, l: int) -> tuple[Permutation, Permutation]:
    """Rank-compressed restrictions to the first 2l and last 2r positions.

    Both parts keep the relative order of their values and are
    re-indexed from 0; computed in time linear in the size.
    """
    half = _require_even(p.size)
    if not (1 <= l <= half - 1):
        raise ValueError(f"l must leave both parts nonempty: 1 <= {l} <= {half - 1}")
    left, right, _ = _node(_as_rows(p.map), 2 * l)
    return Permutation(left[0]), Permutation(right[0])


def split_linking(p: Permutation, l: int) -> int:
    """Signed cross-pair linking term between the two halves.

    Equals half of sum_{y<2l<=x} (-1)^(x+y) sign(p(x)-p(y)), an integer
    on every even-size permutation; evaluated by one linear pass.
    """
    half = _require_even(p.size)
    if not (1 <= l <= half - 1):
        raise ValueError(f"l must leave both parts nonempty: 1 <= {l} <= {half - 1}")
    _, _, link = _node(_as_rows(p.map), 2 * l)
    return int(link[0])


def split_with_linking(p: Permutation, l: int) -> SplitResult:
    """Both halves and the linking term in one pass."""
    half = _require_even(p.size)
    if not (1 <= l <= half - 1):
        raise ValueError(f"l must leave both parts nonempty: 1 <= {l} <= {half - 1}")
    left, right, link = _node(_as_rows(p.map), 2 * l)
    return SplitResult(Permutation(left[0]), Permutation(right[0]), int(link[0]))


def bialternating_fast(p: Permutation, leaf_size: int | None = None) -> int:
    """Bialternating inversion number in O(N log N); N must be even.

    Agrees with ``inversion_stat(p, "bialternating")`` on every input.
    """
    _require_even(p.size)
    return int(_bialt_rows(_as_rows(p.map), leaf_size)[0])


def _writhe_preprocess_rows(mat: np.ndarray) -> np.ndarray:
    """Odd-size rows -> even-size rows with equal bialternating value.

    Right-composes with the inverse doubling map (multiplication by
    (N+1)/2 mod N on positions), rotates the top value to the last
    position, and deletes it.  Linear time per row.
    """
    b, n = mat.shape
    gather = (((n + 1) // 2) * np.arange(n)) % n
    sig = mat[:, gather]
    pos = np.argmax(sig == n - 1, axis=1)
    idx = (np.arange(n)[None, :] + ((pos + 1) % n)[:, None]) % n
    rot = np.take_along_axis(sig, idx, axis=1)
    assert np.all(rot[:, -1] == n - 1)
    return rot[:, :-1]


def writhe_fast_rows(
    mat: np.ndarray,
    leaf_size: int | None = None,
    parallel_threshold: int | None = None,
) -> np.ndarray:
    """Writhe of each row of a (B, N) array of permutations, N odd."""
    mat = _as_rows(mat)
    n = mat.shape[1]
    if n % 2 == 0:
        raise SizeParityError(f"writhe requires odd size, got {n}")
    if n == 1:
        return np.zeros(mat.shape[0], dtype=np.int64)
    reduced = _writhe_preprocess_rows(mat)
    return _bialt_rows(reduced, leaf_size, parallel_threshold)


def writhe_fast(
    p: Permutation,
    leaf_size: int | None = None,
    parallel_threshold: int | None = None,
) -> int:
    """Writhe in O(N log N); equals :func:`writhe_naive` on every input.

    The two recursive subproblems are independent; passing
    ``parallel_threshold`` evaluates them on separate threads for
    subproblems at least that large (sequential by default).
    """
    return int(writhe_fast_rows(p.map, leaf_size, parallel_threshold)[0])
