import numpy as np
import pytest

from cascadelab.seeding import (derive_seed, derive_seed_array,
                                derive_trial_seed, rng_from, splitmix64,
                                splitmix64_array)


def test_same_inputs_same_seed():
    a = derive_trial_seed(42, "fig1", "er", 10_000, 7)
    b = derive_trial_seed(42, "fig1", "er", 10_000, 7)
    assert a == b


def test_distinct_inputs_distinct_seeds():
    base = derive_trial_seed(42, "fig1", "er", 10_000, 0)
    assert derive_trial_seed(42, "fig1", "er", 10_000, 1) != base
    assert derive_trial_seed(42, "fig1", "pa", 10_000, 0) != base
    assert derive_trial_seed(42, "fig2", "er", 10_000, 0) != base
    assert derive_trial_seed(43, "fig1", "er", 10_000, 0) != base


def test_seed_is_64_bit():
    s = derive_seed(2**70 + 5, "x", 3)
    assert 0 <= s < 2**64


def test_rejects_bad_token_type():
    with pytest.raises(TypeError):
        derive_seed(0, 1.5)


def test_array_matches_scalar():
    idx = np.arange(1000, dtype=np.uint64)
    batch = derive_seed_array(9, "tag", "er", 50, indices=idx)
    scalar = [derive_seed(9, "tag", "er", 50, int(i)) for i in range(1000)]
    assert batch.tolist() == scalar


def test_splitmix_array_matches_scalar():
    xs = np.array([0, 1, 2**63, 2**64 - 1], dtype=np.uint64)
    assert splitmix64_array(xs).tolist() == [splitmix64(int(x)) for x in xs]


def test_no_collisions_in_a_million_trial_seeds():
    idx = np.arange(1_000_000, dtype=np.uint64)
    seeds = derive_seed_array(0, "fig1", "er", 10_000, indices=idx)
    assert np.unique(seeds).shape[0] == seeds.shape[0]


def test_rng_from_reproducible():
    a = rng_from(5, "stream").integers(0, 1 << 30, size=8)
    b = rng_from(5, "stream").integers(0, 1 << 30, size=8)
    c = rng_from(5, "other").integers(0, 1 << 30, size=8)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()
