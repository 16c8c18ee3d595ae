"""permwrithe: the writhe of permutations, exactly and at scale.

Subpackages by concern:

- :mod:`permwrithe.permutation` -- the Permutation value type, the
  quadratic reference writhe, and the inversion statistics family.
- :mod:`permwrithe.graphs` -- directed graphs and graphical inversion
  numbers (the clockwise tournament encodes the writhe linearly).
- :mod:`permwrithe.fast` -- the O(N log N) divide-and-conquer writhe.
- :mod:`permwrithe.moments` -- exact rational moment machinery:
  Bernoulli/Euler numbers, average signs, breaking sums, the limiting
  moments of w/n, and enumeration oracles.
- :mod:`permwrithe.limit` -- the limit distribution: samplers,
  characteristic function, numerical density/CDF/quantiles, tail rate.
- :mod:`permwrithe.montecarlo` -- batched simulation over uniform
  random permutations with reproducible streams.
- :mod:`permwrithe.circular` -- circular rank correlation statistics
  (the writhe, Fisher-Lee Delta, Mardia Pi) from one kernel family.
"""
from .permutation import (
    InvalidPermutationError,
    Permutation,
    SizeParityError,
    adjacent_circular_transpose,
    classical_inversions,
    compose,
    doubling_map,
    extremal_permutation,
    identity,
    inversion_stat,
    reduce_odd_to_even,
    reflect,
    rotate,
    writhe_naive,
)
from .graphs import (
    DirectedGraph,
    clockwise_tournament,
    graphical_inversions,
    standard_graphs,
)
from .fast import (
    SplitResult,
    bialternating_fast,
    induced_split,
    split_linking,
    split_with_linking,
    writhe_fast,
)
from .moments import (
    BruteForceLimitError,
    average_sign,
    average_sign_closed,
    bernoulli,
    cycle_breaking_sum,
    cycle_weight,
    euler_zigzag,
    eulerian,
    limit_moment,
    limit_moment_by_recurrence,
    parity_tuple_count,
    permutation_breaking_sum,
    plus_runs,
    writhe_moment_by_enumeration,
    writhe_moment_exact,
    writhe_moment_poly,
)
from .streams import SampleStream
from .limit import (
    TruncationPolicy,
    char_fn_moment,
    limit_cdf,
    limit_char_fn,
    limit_pdf,
    limit_quantile,
    sample_limit,
    sample_limit_laplace,
    sample_sech,
    tail_rate_estimate,
)
from .montecarlo import (
    Histogram,
    compare_to_limit,
    empirical_distribution,
    empirical_moments,
    random_permutation,
    simulate_writhe,
)
from .circular import (
    PeriodicKernel,
    RankPairs,
    fisher_lee_delta,
    kernel_alpha,
    kernel_beta,
    kernel_gamma,
    mardia_pi,
    rank_correlation,
    writhe_averaged_form,
)

__version__ = "0.1.0"
