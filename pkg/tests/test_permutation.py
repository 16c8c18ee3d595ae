import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permwrithe.permutation import (
    InvalidPermutationError,
    Permutation,
    SizeParityError,
    adjacent_circular_transpose,
    classical_inversions,
    compose,
    doubling_map,
    extremal_permutation,
    identity,
    inversion_rows,
    inversion_stat,
    reduce_odd_to_even,
    reflect,
    rotate,
    writhe_naive,
    writhe_rows,
)


def perm_strategy(sizes):
    return st.sampled_from(sizes).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation)
    )


# -- construction and text format -----------------------------------------

def test_from_text_roundtrip():
    p = Permutation.from_text("0 4 1 3 2 6 5")
    assert p.map.tolist() == [0, 4, 1, 3, 2, 6, 5]
    assert Permutation.from_text(p.to_text()) == p
    assert Permutation.from_text("0,4,1, 3 2,6 5") == p


@pytest.mark.parametrize(
    "bad",
    ["", "0 1 1", "0 2", "1 2 3", "0 -1", "a b c", "0.5 1"],
)
def test_parser_rejects_non_bijections(bad):
    with pytest.raises(InvalidPermutationError):
        Permutation.from_text(bad)


def test_map_is_read_only():
    p = identity(5)
    with pytest.raises(ValueError):
        p.map[0] = 3


@given(perm_strategy([1, 2, 3, 5, 8, 13]))
def test_inverse_involution(p):
    assert p.inverse().inverse() == p
    assert compose(p, p.inverse()) == identity(p.size)


# -- writhe ------------------------------------------------------------------

def test_writhe_examples():
    assert writhe_naive(identity(5)) == 4
    assert writhe_naive(Permutation([4, 3, 2, 1, 0])) == -4
    assert writhe_naive(Permutation.from_text("0 4 1 3 2 6 5")) == -1
    assert writhe_naive(identity(1)) == 0


def test_writhe_rejects_even_size():
    with pytest.raises(SizeParityError):
        writhe_naive(Permutation([1, 0]))


def test_writhe_bound_and_parity_exhaustive_s5(all_perms):
    w = writhe_rows(all_perms(5))
    assert np.all(np.abs(w) <= 4)
    assert np.all(w % 2 == 0)  # n^2 = 4 is even
    extremes = all_perms(5)[np.abs(w) == 4]
    # only the identity and the reversal attain the bound, up to rotation
    assert len(extremes) == 10
    expected = set()
    for k in range(5):
        expected.add(tuple(rotate(identity(5), k, "left").map.tolist()))
        expected.add(tuple(rotate(Permutation([4, 3, 2, 1, 0]), k, "left").map.tolist()))
    assert {tuple(r.tolist()) for r in extremes} == expected


@given(perm_strategy([3, 5, 7]), st.integers(0, 6))
@settings(max_examples=60)
def test_writhe_rotation_invariance(p, k):
    w = writhe_naive(p)
    assert writhe_naive(rotate(p, k, "left")) == w
    assert writhe_naive(rotate(p, k, "right")) == w


@given(perm_strategy([3, 5, 7, 9]))
@settings(max_examples=60)
def test_writhe_reflection_antisymmetry(p):
    assert writhe_naive(reflect(p)) == -writhe_naive(p)


# -- inversion statistics ----------------------------------------------------

def test_bialternating_examples():
    assert inversion_stat(Permutation.from_text("0 2 4 6 1 5 3")) == -1
    assert inversion_stat(Permutation([0, 1])) == -1
    assert inversion_stat(Permutation([1, 0])) == 1


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_plain_inversion_identity_permutation(n):
    assert inversion_stat(identity(n), "plain") == -math.comb(n, 2)


@given(perm_strategy([2, 3, 5, 8]))
@settings(max_examples=60)
def test_plain_matches_classical_inversion_count(p):
    assert inversion_stat(p, "plain") == 2 * classical_inversions(p) - math.comb(p.size, 2)


def test_inversion_stat_unknown_variant():
    with pytest.raises(ValueError):
        inversion_stat(identity(3), "weird")


def test_mahonian_distribution_exhaustive(all_perms):
    # inversion counts over S_N are distributed like U_1 + ... + U_N with
    # U_i uniform on {0..i-1}: compare against the generating function
    # prod_i (1 + q + ... + q^(i-1)).
    for n in range(2, 7):
        counts = np.zeros(math.comb(n, 2) + 1, dtype=np.int64)
        for row in all_perms(n):
            counts[classical_inversions(Permutation(row))] += 1
        poly = np.array([1], dtype=np.int64)
        for i in range(1, n + 1):
            poly = np.convolve(poly, np.ones(i, dtype=np.int64))
        assert counts.tolist() == poly.tolist()


# -- doubling map and reduction ----------------------------------------------

def test_doubling_map_values():
    assert doubling_map(7).map.tolist() == [0, 2, 4, 6, 1, 3, 5]
    assert doubling_map(1) == identity(1)
    with pytest.raises(SizeParityError):
        doubling_map(4)


def test_doubling_map_converts_bialternating_to_writhe(all_perms):
    tau = doubling_map(5)
    for row in all_perms(5):
        p = Permutation(row)
        assert writhe_naive(compose(p, tau)) == inversion_stat(p)


def test_doubling_map_paper_size_example():
    sigma = Permutation.from_text("0 2 4 6 1 5 3")
    assert compose(sigma, doubling_map(7)) == Permutation.from_text("0 4 1 3 2 6 5")


def test_reduce_odd_to_even_examples():
    assert reduce_odd_to_even(Permutation([0, 1, 2])) == Permutation([0, 1])
    assert inversion_stat(Permutation([0, 1])) == inversion_stat(Permutation([0, 1, 2]))
    # top value already last: plain truncation
    p = Permutation([2, 0, 1, 3, 4])
    assert reduce_odd_to_even(p) == Permutation([2, 0, 1, 3])
    with pytest.raises(ValueError):
        reduce_odd_to_even(identity(1))
    with pytest.raises(SizeParityError):
        reduce_odd_to_even(identity(4))


def test_reduce_preserves_bialternating_exhaustive(all_perms):
    for row in all_perms(5):
        p = Permutation(row)
        assert inversion_stat(reduce_odd_to_even(p)) == inversion_stat(p)


def test_lemma_style_distribution_equality(all_perms):
    # writhe over S_5, bialternating over S_5, and bialternating over S_4
    # follow one distribution (the S_4 counts scale by |S_5|/|S_4| = 5)
    w5 = np.sort(writhe_rows(all_perms(5)))
    b5 = np.sort(inversion_rows(all_perms(5), "bialternating"))
    b4 = np.sort(inversion_rows(all_perms(4), "bialternating"))
    assert np.array_equal(w5, b5)
    assert np.array_equal(b5, np.sort(np.repeat(b4, 5)))


# -- rotations, transpositions, extremals -------------------------------------

def test_rotate_basics():
    p = identity(5)
    assert rotate(p, 2, "left").map.tolist() == [2, 3, 4, 0, 1]
    assert rotate(p, 2, "right").map.tolist() == [2, 3, 4, 0, 1]
    q = Permutation([3, 1, 4, 0, 2])
    assert rotate(q, 5, "left") == q
    assert rotate(q, 5, "right") == q
    with pytest.raises(ValueError):
        rotate(q, 1, "up")


def test_adjacent_transpose_examples():
    p = adjacent_circular_transpose(identity(3), 0)
    assert p.map.tolist() == [1, 0, 2]
    q = Permutation([3, 1, 4, 0, 2])
    for x in range(5):
        assert adjacent_circular_transpose(adjacent_circular_transpose(q, x), x) == q
    # wrap-around swap pairs the last position with the first
    r = adjacent_circular_transpose(identity(5), 4)
    assert r.map.tolist() == [4, 1, 2, 3, 0]


def test_adjacent_transpose_writhe_step_exhaustive_s5(all_perms):
    for row in all_perms(5):
        p = Permutation(row)
        w = writhe_naive(p)
        for x in range(5):
            assert abs(writhe_naive(adjacent_circular_transpose(p, x)) - w) == 2


def test_extremal_permutations():
    assert writhe_naive(extremal_permutation(3, 1)) == 9
    assert writhe_naive(extremal_permutation(3, -1)) == -9
    assert extremal_permutation(2, -1).map.tolist() == [4, 3, 2, 1, 0]
    with pytest.raises(ValueError):
        extremal_permutation(2, 0)
