"""Seeded stream derivation and Poisson coincidence sampling."""

from __future__ import annotations

import numpy as np
import pytest

from photonzne.processor import Basis, OutcomeProbs
from photonzne.sampling import CountRecord, sample_counts, seeded_rng


def test_seeded_rng_deterministic():
    a = seeded_rng(7, 1, 2).uniform(size=5)
    b = seeded_rng(7, 1, 2).uniform(size=5)
    assert np.array_equal(a, b)


def test_seeded_rng_streams_independent():
    """Consuming one stream never shifts another."""
    before = seeded_rng(5, 0).uniform(size=8)
    other = seeded_rng(5, 1)
    other.uniform(size=1000)
    after = seeded_rng(5, 0).uniform(size=8)
    assert np.array_equal(before, after)
    assert not np.array_equal(before, seeded_rng(5, 1).uniform(size=8))


def test_seeded_rng_distinct_keys_differ():
    assert not np.array_equal(
        seeded_rng(0, 3).uniform(size=8), seeded_rng(0, 4).uniform(size=8)
    )
    assert not np.array_equal(
        seeded_rng(1).uniform(size=8), seeded_rng(1, 1).uniform(size=8)
    )
    assert not np.array_equal(
        seeded_rng(2).uniform(size=8), seeded_rng(3).uniform(size=8)
    )


def test_seeded_rng_rejects_negative_components():
    with pytest.raises(ValueError):
        seeded_rng(-1)
    with pytest.raises(ValueError):
        seeded_rng(0, 2, -3)


PROBS = OutcomeProbs(Basis.Z, 0.5, 0.3, 0.15, 0.05)


def test_sample_counts_poisson_moments():
    """Mean and variance of each count match S * success * p within 2-3%."""
    scale, success = 800.0, 1.0 / 9.0
    rng = seeded_rng(42, 0)
    draws = np.array(
        [sample_counts(PROBS, success, scale, rng).counts for _ in range(30000)],
        dtype=np.float64,
    )
    means = scale * success * PROBS.as_array()
    assert np.max(np.abs(draws.mean(axis=0) / means - 1.0)) < 0.02
    assert np.max(np.abs(draws.var(axis=0) / means - 1.0)) < 0.03


def test_sample_counts_deterministic_given_stream():
    a = sample_counts(PROBS, 0.5, 100.0, seeded_rng(3, 1))
    b = sample_counts(PROBS, 0.5, 100.0, seeded_rng(3, 1))
    assert a == b
    assert isinstance(a, CountRecord)
    assert a.basis is Basis.Z
    assert a.total() == sum(a.counts)


def test_sample_counts_validation():
    rng = seeded_rng(0)
    with pytest.raises(ValueError):
        sample_counts(PROBS, 0.5, 0.0, rng)
    with pytest.raises(ValueError):
        sample_counts(PROBS, 1.5, 100.0, rng)
    with pytest.raises(ValueError):
        sample_counts(PROBS, -0.1, 100.0, rng)
