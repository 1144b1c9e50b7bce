"""Finite-statistics simulation: seeded RNG streams and Poisson coincidence
counts.

Each detected coincidence pattern accumulates counts as an independent
Poisson variable with mean ``scale * success_prob * p_pattern`` — the
standard model for a parametric pair source plus lossy post-selection,
where ``scale`` plays the role of the number of emitted pairs per basis
setting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .processor import Basis, OutcomeProbs


def seeded_rng(master_seed: int, *stream_ids: int) -> np.random.Generator:
    """Independent, reproducible generator for one logical stream.

    Seeding ``default_rng`` with the full key sequence (master seed plus
    stream coordinates) derives statistically independent streams: draws on
    stream (s, 0) do not change when stream (s, 1) is created or consumed.
    """
    if master_seed < 0 or any(i < 0 for i in stream_ids):
        raise ValueError("seed components must be non-negative")
    return np.random.default_rng([int(master_seed), *map(int, stream_ids)])


@dataclass(frozen=True)
class CountRecord:
    """Coincidence counts for the four logical outcomes in one basis."""

    basis: Basis
    counts: tuple[int, int, int, int]

    def total(self) -> int:
        return int(sum(self.counts))


def sample_counts(
    probs: OutcomeProbs,
    success_prob: float,
    scale: float,
    rng: np.random.Generator,
) -> CountRecord:
    """Draw Poisson counts for one basis setting.

    Parameters
    ----------
    probs : OutcomeProbs
        Normalized post-selected outcome probabilities.
    success_prob : float
        Post-selection success probability; the product
        ``success_prob * probs`` is the raw pattern probability per pair.
    scale : float
        Emitted pairs per basis setting (S > 0).
    rng : np.random.Generator
        Source of randomness, typically from :func:`seeded_rng`.
    """
    if scale <= 0:
        raise ValueError(f"shot scale must be positive, got {scale}")
    if not 0.0 <= success_prob <= 1.0:
        raise ValueError(f"success probability must lie in [0, 1], got {success_prob}")
    means = scale * success_prob * probs.as_array()
    draws = rng.poisson(means)
    return CountRecord(basis=probs.basis, counts=tuple(int(n) for n in draws))
