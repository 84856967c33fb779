"""Property-based checks for the kernel and bucket arithmetic."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pottsdiff.decision import (
    choice_probabilities,
    three_options,
    zero_temperature_probabilities,
)
from pottsdiff.scenarios import HeterogeneityDistribution

fields = st.lists(
    st.floats(min_value=-5, max_value=5, allow_nan=False), min_size=3, max_size=3
)


@settings(max_examples=200)
@given(m=fields, temperature=st.floats(min_value=1e-3, max_value=10),
       current=st.integers(min_value=0, max_value=2))
def test_probabilities_are_a_distribution(m, temperature, current):
    p = choice_probabilities(np.array(m), temperature, current, three_options())
    assert abs(p.sum() - 1.0) < 1e-9
    assert (p >= 0).all()
    # No mass outside the allowed target set.
    assert (p[~three_options().allowed[current]] == 0).all()


@settings(max_examples=200)
@given(m=fields, current=st.integers(min_value=0, max_value=2))
def test_zero_temperature_picks_only_maximal_fields(m, current):
    opts = three_options()
    p = zero_temperature_probabilities(np.array(m), current, opts)
    allowed = np.flatnonzero(opts.allowed[current])
    best = max(np.array(m)[allowed])
    assert all((p[k] > 0) == (k in allowed and m[k] == best) for k in range(3))


@settings(max_examples=200)
@given(
    n=st.integers(min_value=1, max_value=10_000),
    weights=st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=5),
)
def test_bucket_counts_partition_the_population(n, weights):
    total = sum(weights)
    groups = tuple((w / total, 0.5) for w in weights)
    dist = HeterogeneityDistribution(groups)
    counts = dist.counts(n)
    assert sum(counts) == n
    assert all(c >= 0 for c in counts)
    # Each bucket is within one remainder of its exact share.
    for (f, _), c in zip(groups, counts):
        assert abs(c - f * n) < len(weights) + 1
