"""Simultaneous-perturbation stochastic approximation (SPSA).

Minimizes a noisy objective with exactly two evaluations per iteration:

``g_hat_i = (E(x + c_k d) - E(x - c_k d)) / (2 c_k d_i)``,  ``d_i in {-1, +1}``
``x_{k+1} = x_k - a_k g_hat``

with the standard decaying gains ``a_k = a / (k + 1 + A)^alpha`` and
``c_k = c / (k + 1)^gamma``.  Objectives may return a plain float or
anything with ``value``/``std`` attributes; non-finite values abort the run
and return the trace collected so far.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .schwinger import EnergyEstimate


@dataclass(frozen=True)
class SpsaConfig:
    """Gain schedule and iteration budget.

    ``stability`` is Spall's A offset; when None it defaults to
    ``0.1 * max_iterations``.  ``wrap_period`` folds iterates and probe
    points into [0, period) — phase-valued parameters use 2*pi.
    """

    a: float
    c: float = 0.1
    alpha: float = 0.602
    gamma: float = 0.101
    stability: float | None = None
    max_iterations: int = 200
    wrap_period: float | None = None

    def __post_init__(self) -> None:
        if self.a <= 0 or self.c <= 0:
            raise ValueError("gains a and c must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.stability is not None and self.stability < 0:
            raise ValueError("stability offset must be non-negative")

    @property
    def stability_offset(self) -> float:
        return 0.1 * self.max_iterations if self.stability is None else self.stability


@dataclass(frozen=True)
class IterationRecord:
    """One SPSA iteration: the iterate perturbed and both probe estimates."""

    k: int
    x: np.ndarray
    energy_plus: EnergyEstimate
    energy_minus: EnergyEstimate

    @property
    def estimate(self) -> float:
        """Symmetric estimate of the objective at the iterate."""
        return 0.5 * (self.energy_plus.value + self.energy_minus.value)


@dataclass
class OptimTrace:
    """Iteration records plus the final iterate; 2 evaluations per record."""

    iterations: list[IterationRecord] = field(default_factory=list)
    final_x: np.ndarray | None = None
    aborted: bool = False

    @property
    def evaluations(self) -> int:
        return 2 * len(self.iterations)

    def estimates(self) -> np.ndarray:
        return np.array([rec.estimate for rec in self.iterations])


def _as_estimate(value) -> EnergyEstimate:
    if hasattr(value, "value") and hasattr(value, "std"):
        return EnergyEstimate(value=float(value.value), std=float(value.std))
    return EnergyEstimate(value=float(value), std=0.0)


def _wrap(x: np.ndarray, period: float | None) -> np.ndarray:
    return x if period is None else np.mod(x, period)


def minimize(objective, x0, config: SpsaConfig, rng: np.random.Generator) -> OptimTrace:
    """Run SPSA from ``x0``; returns the full trace (abort-safe)."""
    x = _wrap(np.array(x0, dtype=np.float64), config.wrap_period)
    if x.ndim != 1 or not np.all(np.isfinite(x)):
        raise ValueError("x0 must be a finite 1-d parameter vector")
    trace = OptimTrace()
    big_a = config.stability_offset
    for k in range(config.max_iterations):
        ak = config.a / (k + 1 + big_a) ** config.alpha
        ck = config.c / (k + 1) ** config.gamma
        delta = rng.integers(0, 2, size=x.size) * 2.0 - 1.0
        e_plus = _as_estimate(objective(_wrap(x + ck * delta, config.wrap_period)))
        e_minus = _as_estimate(objective(_wrap(x - ck * delta, config.wrap_period)))
        trace.iterations.append(IterationRecord(k=k, x=x.copy(), energy_plus=e_plus, energy_minus=e_minus))
        if not (math.isfinite(e_plus.value) and math.isfinite(e_minus.value)):
            trace.aborted = True
            break
        ghat = (e_plus.value - e_minus.value) / (2.0 * ck) * delta
        x = _wrap(x - ak * ghat, config.wrap_period)
    trace.final_x = x
    return trace


def restart(trace: OptimTrace, config: SpsaConfig) -> tuple[np.ndarray, SpsaConfig]:
    """Restart point after a completed stage: latest iterate as the new x0
    with the gain schedule reset to k = 0 (same gain constants)."""
    if trace.final_x is None:
        raise ValueError("cannot restart from an empty trace")
    return trace.final_x.copy(), replace(config)


def calibrate_step(
    objective,
    x0,
    config: SpsaConfig,
    rng: np.random.Generator,
    probes: int = 8,
    target_step: float = 0.35,
    noise_std: float = 0.0,
) -> float:
    """Choose the gain ``a`` so a typical first update moves each
    coordinate by roughly ``target_step``.

    Collects the SPSA gradient magnitude ``|E(x+c d) - E(x-c d)| / (2c)``
    at ``x0`` and at random phase points spread over the period, then
    solves ``a = target_step * (1 + A)^alpha / median_magnitude``.  The
    median over scattered points estimates the landscape-wide gradient
    scale; calibrating against ``x0`` alone is unsafe because a start on
    a plateau yields a near-zero magnitude and hence a runaway gain.

    ``noise_std`` is the anticipated standard deviation of one objective
    evaluation during the run proper.  It enters each probe magnitude in
    quadrature, so a noisy objective is calibrated against the step sizes
    its gradient estimates will actually produce, not against the clean
    landscape alone.
    """
    if probes < 1:
        raise ValueError("need at least one probe pair")
    if noise_std < 0:
        raise ValueError("noise_std must be non-negative")
    x = _wrap(np.array(x0, dtype=np.float64), config.wrap_period)
    period = config.wrap_period if config.wrap_period is not None else 2.0 * math.pi
    noise_var = noise_std**2 / (2.0 * config.c**2)
    mags = []
    for k in range(probes):
        point = x if k == 0 else rng.uniform(0.0, period, size=x.size)
        delta = rng.integers(0, 2, size=x.size) * 2.0 - 1.0
        e_plus = _as_estimate(objective(_wrap(point + config.c * delta, config.wrap_period)))
        e_minus = _as_estimate(objective(_wrap(point - config.c * delta, config.wrap_period)))
        diff = (e_plus.value - e_minus.value) / (2.0 * config.c)
        mags.append(math.sqrt(diff**2 + noise_var))
    median_mag = float(np.median(mags))
    # floor keeps a globally flat objective from producing a wild gain
    return target_step * (1.0 + config.stability_offset) ** config.alpha / max(median_mag, 0.1)
