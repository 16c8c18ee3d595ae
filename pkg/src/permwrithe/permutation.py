"""Permutations on {0, ..., N-1} and their circular inversion statistics.

The central statistic is the *writhe* of a permutation of odd size
N = 2n+1: place the points of Z_N clockwise on a circle, connect every
pair through the shorter arc, and count clockwise increases minus
decreases,

    w(p) = sum_{i in Z_N} sum_{j=1..n} sign(p(i+j) - p(i)),

with index arithmetic mod N.  The writhe is invariant under rotating
positions or values, changes sign under reflection, and is bounded by
n^2 in absolute value.

Alongside the writhe live three linear inversion-type statistics of a
permutation of any size,

    plain          sum_{y<x} sign(p(x) - p(y))
    alternating    sum_{y<x} (-1)^y       sign(p(x) - p(y))
    bialternating  sum_{y<x} (-1)^(x+y)   sign(p(x) - p(y))

The bialternating statistic is distributed like the writhe: composing
with the doubling map x -> 2x mod N turns one into the other, and an
odd permutation of size 2n+1 can be reduced to one of size 2n without
changing the statistic.  Those two conversions are the preprocessing
steps of the O(N log N) algorithm in :mod:`permwrithe.fast`.

Everything here is a pure function of immutable values; all operations
return new :class:`Permutation` objects and are safe to call from any
number of threads.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InvalidPermutationError",
    "SizeParityError",
    "Permutation",
    "identity",
    "compose",
    "writhe_naive",
    "writhe_rows",
    "inversion_stat",
    "inversion_rows",
    "classical_inversions",
    "doubling_map",
    "reduce_odd_to_even",
    "rotate",
    "reflect",
    "adjacent_circular_transpose",
    "extremal_permutation",
]


class InvalidPermutationError(ValueError):
    """The given values are not a bijection of {0, ..., N-1}."""


class SizeParityError(ValueError):
    """An operation that requires odd (or even) size got the other parity."""


class Permutation:
    """Immutable bijection of {0, ..., N-1}, stored in one-line notation.

    ``map[x]`` is the image of position ``x``.  The backing array is
    read-only; all operations return new instances.
    """

    __slots__ = ("_map",)

    def __init__(self, values: Iterable[int] | np.ndarray):
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidPermutationError(
                "a permutation needs a nonempty one-dimensional image list"
            )
        n = arr.size
        if arr.min() < 0 or arr.max() >= n:
            raise InvalidPermutationError(
                f"values must lie in 0..{n - 1}, got range "
                f"[{arr.min()}, {arr.max()}]"
            )
        if np.bincount(arr, minlength=n).max() > 1:
            raise InvalidPermutationError("values repeat: not a bijection")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "_map", arr)

    # -- basic protocol ------------------------------------------------

    @property
    def size(self) -> int:
        return int(self._map.size)

    @property
    def map(self) -> np.ndarray:
        """Read-only image array, ``map[x] = p(x)``."""
        return self._map

    def __len__(self) -> int:
        return self.size

    def __call__(self, x: int) -> int:
        return int(self._map[x % self.size])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.size == other.size and bool(np.all(self._map == other._map))

    def __hash__(self) -> int:
        return hash(self._map.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self._map.tolist()})"

    # -- conversions ---------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        """Parse the one-line image-list format, e.g. ``"0 4 1 3 2 6 5"``.

        Values may be separated by whitespace and/or commas.  Anything
        that is not a bijection of {0, ..., N-1} is rejected with a
        descriptive :class:`InvalidPermutationError`.
        """
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise InvalidPermutationError("empty permutation text")
        try:
            values = [int(t) for t in tokens]
        except ValueError as exc:
            raise InvalidPermutationError(f"non-integer token in {text!r}") from exc
        return cls(values)

    def to_text(self) -> str:
        return " ".join(str(v) for v in self._map.tolist())

    def inverse(self) -> "Permutation":
        inv = np.empty(self.size, dtype=np.int64)
        inv[self._map] = np.arange(self.size)
        return Permutation(inv)


def identity(n: int) -> Permutation:
    """The identity of S_n."""
    if n < 1:
        raise ValueError("size must be positive")
    return Permutation(np.arange(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition ``p o q``, i.e. x -> p(q(x))."""
    if p.size != q.size:
        raise ValueError(f"size mismatch: {p.size} vs {q.size}")
    return Permutation(p.map[q.map])


# -- writhe ------------------------------------------------------------

def _require_odd(n: int, what: str) -> int:
    if n % 2 == 0:
        raise SizeParityError(f"{what} requires odd size, got {n}")
    return (n - 1) // 2


def writhe_rows(mat: np.ndarray) -> np.ndarray:
    """Writhe of each row of a (B, N) array of permutations, N odd.

    Quadratic-time evaluation of the defining double sum.  Each row is
    assumed to be a valid permutation; no validation is performed.
    """
    mat = np.asarray(mat)
    if mat.ndim == 1:
        mat = mat[None, :]
    b, n = mat.shape
    half = _require_odd(n, "writhe")
    if half == 0:
        return np.zeros(b, dtype=np.int64)
    # doubled[i, j:j+N] is the row shifted by j; comparisons have no ties.
    doubled = np.concatenate([mat, mat], axis=1)
    total = np.zeros(b, dtype=np.int64)
    for j in range(1, half + 1):
        gt = doubled[:, j : j + n] > mat
        total += 2 * np.count_nonzero(gt, axis=1) - n
    return total


def writhe_naive(p: Permutation) -> int:
    """Writhe by the defining double sum, in O(N^2).

    Requires odd size; raises :class:`SizeParityError` otherwise.  The
    result has absolute value at most n^2 and the same parity as n^2,
    where N = 2n+1.
    """
    return int(writhe_rows(p.map)[0])


# -- inversion statistics ----------------------------------------------

_VARIANTS = ("plain", "alternating", "bialternating")


def inversion_rows(mat: np.ndarray, variant: str = "bialternating") -> np.ndarray:
    """Inversion-type statistic of each row of a (B, N) array.

    Quadratic evaluation of sum_{y<x} weight(y, x) * sign(row[x] - row[y])
    where the weight is 1, (-1)^y, or (-1)^(x+y) according to ``variant``.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    mat = np.asarray(mat)
    if mat.ndim == 1:
        mat = mat[None, :]
    n = mat.shape[1]
    sgn = np.sign(mat[:, None, :] - mat[:, :, None])  # [b, y, x]
    par = 1 - 2 * (np.arange(n) & 1)
    if variant == "plain":
        weight = np.ones((n, n), dtype=np.int64)
    elif variant == "alternating":
        weight = np.broadcast_to(par[:, None], (n, n)).copy()
    else:
        weight = np.outer(par, par)
    weight = np.triu(weight, k=1)
    return np.einsum("byx,yx->b", sgn, weight, dtype=np.int64)


def inversion_stat(p: Permutation, variant: str = "bialternating") -> int:
    """One of the three signed inversion statistics (see module docstring).

    ``plain`` satisfies plain(p) = 2*inv(p) - C(N,2) with inv the
    classical inversion count.
    """
    return int(inversion_rows(p.map, variant)[0])


def classical_inversions(p: Permutation) -> int:
    """Number of pairs y < x with p(y) > p(x)."""
    m = p.map
    return int(np.count_nonzero(np.triu(m[:, None] > m[None, :], k=1)))


# -- conversions between writhe and the bialternating statistic ---------

def doubling_map(n: int) -> Permutation:
    """The permutation x -> 2x mod N for odd N.

    Composing on the right with this map converts the bialternating
    inversion number into the writhe: writhe(p o d) equals the
    bialternating statistic of p, for every p of odd size.
    """
    _require_odd(n, "doubling_map")
    return Permutation((2 * np.arange(n)) % n)


def reduce_odd_to_even(p: Permutation) -> Permutation:
    """Shrink an odd-size permutation by one, preserving bialternating.

    Rotates positions (right-composition with the cyclic shift) until
    the largest value N-1 sits at the last position, then deletes that
    position and value.  The bialternating inversion number of the
    result equals that of the input.
    """
    n = p.size
    _require_odd(n, "reduce_odd_to_even")
    if n < 3:
        raise ValueError("size-1 permutation cannot be reduced")
    pos = int(np.nonzero(p.map == n - 1)[0][0])
    shifted = np.roll(p.map, -((pos + 1) % n))
    assert shifted[-1] == n - 1
    return Permutation(shifted[:-1])


# -- symmetries ---------------------------------------------------------

def rotate(p: Permutation, k: int, side: str = "right") -> Permutation:
    """Compose with the cyclic shift rho(x) = x+1 mod N, k times.

    ``side="left"`` gives rho^k o p (values shifted), ``side="right"``
    gives p o rho^k (positions shifted).  For odd sizes the writhe is
    invariant under both.
    """
    n = p.size
    if side == "left":
        return Permutation((p.map + k) % n)
    if side == "right":
        return Permutation(np.roll(p.map, -(k % n)))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def reflect(p: Permutation) -> Permutation:
    """Value reflection x -> (N-1) - p(x); negates the writhe."""
    return Permutation(p.size - 1 - p.map)


def adjacent_circular_transpose(p: Permutation, x: int) -> Permutation:
    """Right-compose with the circular adjacent swap of positions (x, x+1).

    Position N-1 wraps around to pair with position 0.  For odd sizes
    the writhe moves by exactly +-2 under this operation.
    """
    n = p.size
    x = x % n
    out = p.map.copy()
    out[x], out[(x + 1) % n] = out[(x + 1) % n], out[x]
    return Permutation(out)


def extremal_permutation(n: int, sign: int) -> Permutation:
    """The permutation of S_{2n+1} with writhe +n^2 (sign=+1) or -n^2.

    These are x -> x and x -> 2n-x; no other permutation attains the
    bound, up to rotation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if sign == 1:
        return identity(2 * n + 1)
    if sign == -1:
        return Permutation(2 * n - np.arange(2 * n + 1))
    raise ValueError(f"sign must be +1 or -1, got {sign}")
