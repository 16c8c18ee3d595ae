import numpy as np
import pytest

import permwrithe.fast as fast
from permwrithe.fast import (
    bialternating_fast,
    induced_split,
    split_linking,
    split_with_linking,
    writhe_fast,
    writhe_fast_rows,
)
from permwrithe.permutation import (
    Permutation,
    SizeParityError,
    extremal_permutation,
    identity,
    inversion_rows,
    inversion_stat,
    writhe_naive,
    writhe_rows,
)


def test_induced_split_examples():
    left, right = induced_split(Permutation([2, 0, 3, 1]), 1)
    assert left == Permutation([1, 0])
    assert right == Permutation([1, 0])
    l2, r2 = induced_split(identity(8), 2)
    assert l2 == identity(4) and r2 == identity(4)


def test_induced_split_validation():
    with pytest.raises(SizeParityError):
        induced_split(identity(5), 1)
    with pytest.raises(ValueError):
        induced_split(identity(4), 2)  # right part would be empty
    with pytest.raises(ValueError):
        induced_split(identity(4), 0)


def test_split_linking_examples():
    assert split_linking(identity(4), 1) == 0
    assert split_linking(Permutation([2, 0, 3, 1]), 1) == 1
    res = split_with_linking(Permutation([2, 0, 3, 1]), 1)
    assert (res.left, res.right, res.link) == (Permutation([1, 0]), Permutation([1, 0]), 1)


def test_split_linking_matches_definitional_double_sum():
    rng = np.random.default_rng(2)
    for _ in range(300):
        half = int(rng.integers(2, 17))
        sizes_l = int(rng.integers(1, half))
        mat = rng.permutation(2 * half)[None, :]
        link = fast._node(mat, 2 * sizes_l)[2][0]
        assert link == fast._linking_definitional(mat, 2 * sizes_l)[0]


def test_recursion_identity_example():
    p = Permutation([0, 1, 2, 3])
    assert inversion_stat(p) == -2
    assert inversion_stat(p) == (
        inversion_stat(Permutation([0, 1]))
        + inversion_stat(Permutation([0, 1]))
        + 2 * split_linking(p, 1)
    )


def test_bialternating_fast_base_cases():
    assert bialternating_fast(Permutation([0, 1])) == -1
    assert bialternating_fast(Permutation([1, 0])) == 1
    with pytest.raises(SizeParityError):
        bialternating_fast(identity(5))


def test_bialternating_fast_exhaustive_s6(all_perms):
    quadratic = inversion_rows(all_perms(6), "bialternating")
    assert np.array_equal(quadratic, fast._bialt_rows(all_perms(6), 2))
    assert np.array_equal(quadratic, fast._bialt_rows(all_perms(6), 64))


@pytest.mark.parametrize("size", [100, 256, 1024, 10000])
def test_bialternating_fast_random_vs_quadratic(size):
    rng = np.random.default_rng(size)
    p = Permutation(rng.permutation(size))
    assert bialternating_fast(p) == inversion_stat(p, "bialternating")


def test_leaf_size_does_not_matter():
    rng = np.random.default_rng(5)
    for size in (6, 40, 666):
        p = Permutation(rng.permutation(size))
        values = {bialternating_fast(p, leaf_size=leaf) for leaf in (2, 4, 16, 64, None)}
        assert len(values) == 1


def test_verify_recursion_flag():
    rng = np.random.default_rng(11)
    mat = np.array([rng.permutation(48) for _ in range(4)])
    fast.VERIFY_RECURSION = True
    try:
        checked = fast._bialt_rows(mat, 2)
    finally:
        fast.VERIFY_RECURSION = False
    assert np.array_equal(checked, inversion_rows(mat, "bialternating"))


def test_writhe_fast_examples():
    assert writhe_fast(Permutation.from_text("0 4 1 3 2 6 5")) == -1
    assert writhe_fast(identity(1)) == 0
    assert writhe_fast(identity(3)) == 1
    with pytest.raises(SizeParityError):
        writhe_fast(Permutation([1, 0]))


def test_writhe_fast_exhaustive_s5(all_perms):
    assert np.array_equal(writhe_fast_rows(all_perms(5)), writhe_rows(all_perms(5)))


@pytest.mark.parametrize("size", [9, 101, 1001])
def test_writhe_fast_random_vs_naive(size):
    rng = np.random.default_rng(size)
    mat = np.array([rng.permutation(size) for _ in range(50)])
    assert np.array_equal(writhe_fast_rows(mat), writhe_rows(mat))


def test_writhe_fast_extremal_large():
    n = 1000
    assert writhe_fast(extremal_permutation(n, 1)) == n * n
    assert writhe_fast(extremal_permutation(n, -1)) == -n * n


def test_parallel_recursion_matches_sequential():
    rng = np.random.default_rng(3)
    p = Permutation(rng.permutation(20001))
    assert writhe_fast(p) == writhe_fast(p, parallel_threshold=4096)


def test_int32_rows_match_int64():
    rng = np.random.default_rng(9)
    mat = np.array([rng.permutation(501) for _ in range(8)])
    assert np.array_equal(
        writhe_fast_rows(mat.astype(np.int32)), writhe_fast_rows(mat)
    )
