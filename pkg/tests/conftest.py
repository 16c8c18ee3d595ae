import itertools

import numpy as np
import pytest


@pytest.fixture(scope="session")
def all_perms():
    """Cached arrays of every permutation of S_n, one row each."""
    cache: dict[int, np.ndarray] = {}

    def get(n: int) -> np.ndarray:
        if n not in cache:
            cache[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        return cache[n]

    return get
